#include "gatlab/error.hpp"

namespace gatlab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::IllFormedTelescope: return "IllFormedTelescope";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::EqualityUndecided: return "EqualityUndecided";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::RuleMismatch: return "RuleMismatch";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::MissingTableEntry: return "MissingTableEntry";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Usage: return "Usage";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& message, Verdict verdict)
    : std::runtime_error(message), kind_(kind), verdict_(verdict) {}

Error Error::within(std::string_view segment) const {
    Error copy = *this;
    if (copy.path_.empty())
        copy.path_ = std::string(segment);
    else
        copy.path_ = std::string(segment) + "/" + copy.path_;
    return copy;
}

std::string Error::describe() const {
    std::string out(to_string(kind_));
    if (!path_.empty()) out += " at " + path_;
    return out + ": " + what();
}

} // namespace gatlab
