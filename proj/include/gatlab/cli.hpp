#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gatlab/io/report.hpp"
#include "gatlab/kernel.hpp"

namespace gatlab::cli {

/// Arguments of every command; each command reads the fields it needs.
struct Options {
    std::string command;
    std::vector<std::string> files; // check, prove
    std::string theory;
    std::string model;
    std::string formula;
    std::string name;               // eval: a single formula of the file
    std::optional<std::string> at;  // eval: comma-separated element names
    std::string lhs, rhs;           // countermodel
    std::string hom;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> bound;
    bool exhaustive = false;
    bool verify = false;            // corpus: compare instead of writing
    std::size_t fuel = kDefaultFuel;
};

/// Files produced by `corpus`, with paths relative to the corpus root.
struct GeneratedFile {
    std::string path;
    std::string text;
};

std::vector<GeneratedFile> generated_corpus();

/// Runs one command. Module errors propagate as gatlab::Error; usage
/// errors are reported with ErrorKind::Usage.
io::Report run(const Options& opt);

} // namespace gatlab::cli
