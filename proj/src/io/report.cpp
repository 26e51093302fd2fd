#include "gatlab/io/report.hpp"

#include <sstream>

namespace gatlab::io {

void Report::add_inputs(const std::vector<InputRecord>& inputs) {
    for (const InputRecord& r : inputs) inputs_.push_back(Json{{"path", r.path}, {"fnv1a64", hex64(r.hash)}});
}

void Report::add_verdict(const std::string& name, bool pass, Json detail) {
    Json v{{"name", name}, {"pass", pass}};
    if (!detail.is_object() || !detail.empty()) v["detail"] = std::move(detail);
    verdicts_.push_back(std::move(v));
}

void Report::add_counter(const std::string& name, std::size_t checks, std::size_t passed) {
    counters_[name] = Json{{"checks", checks}, {"passed", passed}};
}

void Report::add_witness(const std::string& name, Json witness) { witnesses_[name] = std::move(witness); }

bool Report::ok() const {
    for (const Json& v : verdicts_)
        if (!v["pass"].get<bool>()) return false;
    return true;
}

Report::Json Report::to_json(bool with_wall_time) const {
    Json out{{"schema", 1},
             {"command", command_},
             {"inputs", inputs_},
             {"verdicts", verdicts_},
             {"counters", counters_},
             {"witnesses", witnesses_}};
    if (with_wall_time) out["wall_time_ms"] = wall_time_ms_;
    return out;
}

std::string Report::dump(bool with_wall_time) const { return to_json(with_wall_time).dump(2) + "\n"; }

std::string Report::summary() const {
    std::ostringstream os;
    for (const Json& v : verdicts_) {
        os << (v["pass"].get<bool>() ? "pass  " : "FAIL  ") << v["name"].get<std::string>();
        if (v.contains("detail")) {
            const Json& d = v["detail"];
            os << ": " << (d.is_string() ? d.get<std::string>() : d.dump());
        }
        os << "\n";
    }
    for (const auto& [name, c] : counters_.items())
        os << "      " << name << ": " << c["passed"].get<std::size_t>() << "/" << c["checks"].get<std::size_t>()
           << "\n";
    auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& [name, w] : witnesses_.items()) {
        if (!w.is_object()) {
            os << "      witness " << name << ": " << text(w) << "\n";
            continue;
        }
        for (const auto& [key, v] : w.items()) {
            const std::string t = text(v);
            os << "      witness " << name << "." << key << ":" << (t.find('\n') == std::string::npos ? " " : "\n")
               << t << (t.empty() || t.back() != '\n' ? "\n" : "");
        }
    }
    return os.str();
}

} // namespace gatlab::io
