#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gatlab {

enum class ErrorKind {
    UnknownSymbol,
    DuplicateSymbol,
    ArityMismatch,
    IllFormedTelescope,
    TypeMismatch,
    EqualityUndecided,
    OutOfRange,
    DomainMismatch,
    RangeError,
    RuleMismatch,
    ContextMismatch,
    MissingTableEntry,
    InvalidModel,
    PreconditionUnmet,
    Syntax,
    Io,
    Usage,
};

std::string_view to_string(ErrorKind kind);

/// Three-valued answer of the bounded equality decision procedure.
enum class Verdict { Yes, No, Unknown };

std::string_view to_string(Verdict v);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    Error(ErrorKind kind, const std::string& message, Verdict verdict);

    ErrorKind kind() const noexcept { return kind_; }
    const std::optional<Verdict>& verdict() const noexcept { return verdict_; }

    /// Location of the failure inside a larger structure (formula path,
    /// proof node path, declaration name). Outermost segment first.
    const std::string& path() const noexcept { return path_; }

    /// Returns a copy with `segment` prepended to the path.
    Error within(std::string_view segment) const;

    /// "Kind at path: message", the form used in diagnostics.
    std::string describe() const;

private:
    ErrorKind kind_;
    std::optional<Verdict> verdict_;
    std::string path_;
};

} // namespace gatlab
