#include "gatlab/io/workspace.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gatlab/builtin.hpp"

namespace gatlab::io {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string_view to_string(FileKind kind) {
    switch (kind) {
    case FileKind::Theory: return "theory";
    case FileKind::Formula: return "formula";
    case FileKind::Model: return "model";
    case FileKind::Hom: return "hom";
    case FileKind::Category: return "category";
    case FileKind::Functor: return "functor";
    case FileKind::Proof: return "proof";
    case FileKind::SuiteConfig: return "suite-config";
    }
    return "?";
}

std::optional<FileKind> kind_of(const std::string& path) {
    static const std::map<std::string, FileKind> kinds{
        {".gat", FileKind::Theory},   {".gfm", FileKind::Formula},  {".gmod", FileKind::Model},
        {".ghom", FileKind::Hom},     {".gcat", FileKind::Category}, {".gfun", FileKind::Functor},
        {".gpf", FileKind::Proof},    {".toml", FileKind::SuiteConfig}};
    auto it = kinds.find(fs::path(path).extension().string());
    if (it == kinds.end()) return std::nullopt;
    return it->second;
}

std::string resolve_path(const std::string& from, const std::string& ref) {
    const fs::path r(ref);
    if (r.is_absolute() || from.empty()) return r.lexically_normal().string();
    return (fs::path(from).parent_path() / r).lexically_normal().string();
}

std::string Workspace::text(const std::string& path) {
    auto it = texts_.find(path);
    if (it != texts_.end()) return it->second;
    std::string t = read_file(path);
    inputs_.push_back(InputRecord{path, fnv1a(t)});
    return texts_.emplace(path, std::move(t)).first->second;
}

Resolver Workspace::resolver_for(const std::string& path) {
    Resolver r;
    r.theory = [this, path](const std::string& ref) {
        if (ref == "Cat" || ref == "Cat_eq") return theory(ref);
        return theory(resolve_path(path, ref));
    };
    r.model = [this, path](const std::string& ref) { return model(resolve_path(path, ref)); };
    r.category = [this, path](const std::string& ref) { return category(resolve_path(path, ref)); };
    return r;
}

std::shared_ptr<const Theory> Workspace::theory(const std::string& ref) {
    if (ref == "Cat") return cat_theory();
    if (ref == "Cat_eq") return cat_eq_theory();
    auto it = theories_.find(ref);
    if (it != theories_.end()) return it->second;
    auto th = parse_theory(text(ref), ref, fuel_).theory;
    theories_.emplace(ref, th);
    return th;
}

std::shared_ptr<const FormulaFile> Workspace::formulas(const std::string& path, std::shared_ptr<const Theory> theory) {
    if (!theory) {
        auto it = formulas_.find(path);
        if (it != formulas_.end()) return it->second;
    }
    const bool cache = !theory;
    auto f = std::make_shared<const FormulaFile>(
        parse_formula_file(text(path), path, resolver_for(path), std::move(theory), fuel_));
    if (cache) formulas_.emplace(path, f);
    return f;
}

std::shared_ptr<const FiniteModel> Workspace::model(const std::string& path) {
    auto it = models_.find(path);
    if (it != models_.end()) return it->second;
    auto m = std::make_shared<const FiniteModel>(parse_model(text(path), path, resolver_for(path)));
    models_.emplace(path, m);
    return m;
}

std::shared_ptr<const HomFile> Workspace::hom(const std::string& path) {
    auto it = homs_.find(path);
    if (it != homs_.end()) return it->second;
    auto h = std::make_shared<const HomFile>(parse_hom(text(path), path, resolver_for(path)));
    homs_.emplace(path, h);
    return h;
}

CategoryPtr Workspace::category(const std::string& path) {
    auto it = categories_.find(path);
    if (it != categories_.end()) return it->second;
    auto c = std::make_shared<const FinCategory>(parse_category(text(path), path));
    categories_.emplace(path, c);
    return c;
}

std::shared_ptr<const FunctorFile> Workspace::functor(const std::string& path) {
    auto it = functors_.find(path);
    if (it != functors_.end()) return it->second;
    auto f = std::make_shared<const FunctorFile>(parse_functor(text(path), path, resolver_for(path)));
    functors_.emplace(path, f);
    return f;
}

std::shared_ptr<const ProofFile> Workspace::proof(const std::string& path) {
    auto it = proofs_.find(path);
    if (it != proofs_.end()) return it->second;
    auto p = std::make_shared<const ProofFile>(parse_proof(text(path), path, resolver_for(path), fuel_));
    proofs_.emplace(path, p);
    return p;
}

SuiteConfig Workspace::config(const std::string& path) { return parse_suite_config(text(path), path); }

} // namespace gatlab::io
