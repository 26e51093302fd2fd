#include <iostream>

#include "CLI11.hpp"

#include "gatlab/cli.hpp"

int main(int argc, char** argv) {
    using gatlab::cli::Options;
    Options opt;
    bool json = false;

    CLI::App app{"gatlab: generalized algebraic theories, finite models and homotopy-invariant formulas"};
    app.require_subcommand(1);
    app.add_flag("--json", json, "print the JSON report on stdout");
    app.add_option("--fuel", opt.fuel, "rewrite fuel per normalization")->capture_default_str();

    auto* check = app.add_subcommand("check", "parse and validate theory, formula, model, hom, category, functor, proof or suite files");
    check->add_option("files", opt.files, "files to check")->required();
    check->add_option("--theory", opt.theory, "theory for formula files without a header");

    auto* eval = app.add_subcommand("eval", "evaluate formulas in a finite model");
    eval->add_option("--theory", opt.theory, "theory file or builtin name");
    eval->add_option("--model", opt.model, "model file")->required();
    eval->add_option("--formula", opt.formula, "formula file")->required();
    eval->add_option("--name", opt.name, "evaluate only this formula");
    eval->add_option("--at", opt.at, "comma-separated element names; all points when omitted");

    auto* prove = app.add_subcommand("prove", "check entailment proofs");
    prove->add_option("files", opt.files, "proof files")->required();
    prove->add_option("--bound", opt.bound, "also search for countermodels up to this carrier size");

    auto* counter = app.add_subcommand("countermodel", "search finite models for a counterexample to lhs |- rhs");
    counter->add_option("--theory", opt.theory, "theory file or builtin name");
    counter->add_option("--formula", opt.formula, "formula file")->required();
    counter->add_option("--lhs", opt.lhs, "hypothesis formula name")->required();
    counter->add_option("--rhs", opt.rhs, "conclusion formula name")->required();
    counter->add_option("--bound", opt.bound, "largest carrier size (default 3)");

    auto* fib = app.add_subcommand("fib-check", "test a model homomorphism for the anodyne lifting property");
    fib->add_option("--hom", opt.hom, "hom file")->required();
    fib->add_option("--formula", opt.formula, "formula file to test for invariance");
    fib->add_option("--theory", opt.theory, "theory for a formula file without a header");

    auto* inv = app.add_subcommand("invariance", "run the invariance suites of a suite configuration");
    inv->add_option("--config", opt.config, "suite configuration")->required();
    inv->add_option("--seed", opt.seed, "sampling seed (default from the configuration, else 0)");
    inv->add_option("--samples", opt.samples, "random samples per sampled suite");
    inv->add_flag("--exhaustive", opt.exhaustive, "check every tuple instead of a capped prefix");

    auto* corpus = app.add_subcommand("corpus", "regenerate the builtin corpus files");
    corpus->add_option("--out", opt.out, "corpus root directory")->required();
    corpus->add_flag("--verify", opt.verify, "compare against the files on disk instead of writing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    opt.command = app.get_subcommands().front()->get_name();

    try {
        const gatlab::io::Report report = gatlab::cli::run(opt);
        if (json)
            std::cout << report.dump();
        else
            std::cout << report.summary();
        return report.ok() ? 0 : 1;
    } catch (const gatlab::Error& e) {
        std::cerr << "gatlab: " << e.describe() << "\n";
        return 2;
    }
}
