#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gatlab/io/parse.hpp"

namespace gatlab::io {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

std::string read_file(const std::string& path);

enum class FileKind { Theory, Formula, Model, Hom, Category, Functor, Proof, SuiteConfig };

std::string_view to_string(FileKind kind);
/// Kind from the file extension (.gat, .gfm, .gmod, .ghom, .gcat, .gfun, .gpf, .toml).
std::optional<FileKind> kind_of(const std::string& path);

struct InputRecord {
    std::string path;
    std::uint64_t hash = 0;
};

/// Loads and caches source files. References inside a file are resolved
/// relative to that file; "Cat" and "Cat_eq" name the builtin theories.
/// Every file read is recorded, in first-read order, for reports.
class Workspace {
public:
    explicit Workspace(std::size_t fuel = kDefaultFuel) : fuel_(fuel) {}

    std::shared_ptr<const Theory> theory(const std::string& ref);
    std::shared_ptr<const FormulaFile> formulas(const std::string& path,
                                                std::shared_ptr<const Theory> theory = nullptr);
    std::shared_ptr<const FiniteModel> model(const std::string& path);
    std::shared_ptr<const HomFile> hom(const std::string& path);
    CategoryPtr category(const std::string& path);
    std::shared_ptr<const FunctorFile> functor(const std::string& path);
    std::shared_ptr<const ProofFile> proof(const std::string& path);
    SuiteConfig config(const std::string& path);

    const std::vector<InputRecord>& inputs() const noexcept { return inputs_; }
    std::size_t fuel() const noexcept { return fuel_; }

private:
    std::string text(const std::string& path);
    Resolver resolver_for(const std::string& path);

    std::size_t fuel_;
    std::map<std::string, std::string> texts_;
    std::vector<InputRecord> inputs_;
    std::map<std::string, std::shared_ptr<const Theory>> theories_;
    std::map<std::string, std::shared_ptr<const FormulaFile>> formulas_;
    std::map<std::string, std::shared_ptr<const FiniteModel>> models_;
    std::map<std::string, std::shared_ptr<const HomFile>> homs_;
    std::map<std::string, CategoryPtr> categories_;
    std::map<std::string, std::shared_ptr<const FunctorFile>> functors_;
    std::map<std::string, std::shared_ptr<const ProofFile>> proofs_;
};

/// `ref` relative to the directory of `from`, lexically normalized.
std::string resolve_path(const std::string& from, const std::string& ref);

} // namespace gatlab::io
