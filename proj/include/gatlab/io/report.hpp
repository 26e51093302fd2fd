#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "gatlab/io/workspace.hpp"

namespace gatlab::io {

/// Machine-readable result of a command, schema version 1. Everything
/// except wall_time_ms is a function of the inputs and the seed.
class Report {
public:
    using Json = nlohmann::ordered_json;

    explicit Report(std::string command) : command_(std::move(command)) {}

    void add_inputs(const std::vector<InputRecord>& inputs);
    void add_verdict(const std::string& name, bool pass, Json detail = Json::object());
    void add_counter(const std::string& name, std::size_t checks, std::size_t passed);
    void add_witness(const std::string& name, Json witness);
    void set_wall_time_ms(std::int64_t ms) { wall_time_ms_ = ms; }

    bool ok() const;
    const Json& verdicts() const noexcept { return verdicts_; }
    Json to_json(bool with_wall_time = true) const;
    std::string dump(bool with_wall_time = true) const;
    /// One line per verdict and counter.
    std::string summary() const;

private:
    std::string command_;
    Json inputs_ = Json::array();
    Json verdicts_ = Json::array();
    Json counters_ = Json::object();
    Json witnesses_ = Json::object();
    std::int64_t wall_time_ms_ = 0;
};

} // namespace gatlab::io
