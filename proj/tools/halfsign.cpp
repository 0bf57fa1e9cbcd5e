#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "halfsign/acceptance.hpp"
#include "halfsign/experiments.hpp"
#include "halfsign/kernels.hpp"

namespace hs = halfsign;

namespace {

// Flags given on the command line, applied on top of the config file.
struct Overrides {
    std::map<std::string, std::string> values;

    void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sign changes of half-integral weight coefficients: experiments and acceptance suite"};
    app.require_subcommand(1);
    std::string config_path, out_dir;
    int threads = 0;
    hs::u64 seed = 0;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--out", out_dir, "output directory (HALFSIGN_OUT overrides)");
    app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
    app.add_option("--seed", seed, "seed for randomized checks");

    Overrides ov;
    auto form_flags = [&](CLI::App* sub) {
        ov.add(sub, "--form", "form", "delta | synthetic");
        ov.add(sub, "--synthetic-file", "synthetic_file", "table of c(n) for the synthetic lift");
        ov.add(sub, "--k", "k", "weight parameter k");
        ov.add(sub, "--level", "N", "level N (4 | N)");
        ov.add(sub, "--chi-disc", "chi_disc", "discriminant of the real character");
        ov.add(sub, "--t", "t", "square-free t");
        ov.add(sub, "--limit", "limit", "coefficient table limit X");
        ov.add(sub, "--C0", "C0", "constant C0");
    };
    auto output_flag = [&](CLI::App* sub, const std::string& flag) { ov.add(sub, flag, "output", "artifact file"); };

    auto* coeffs = app.add_subcommand("coeffs", "exact c(n), A(n), signs");
    form_flags(coeffs);
    output_flag(coeffs, "--csv");
    auto* signs = app.add_subcommand("signs", "sign statistics");
    form_flags(signs);
    ov.add(signs, "--x-grid", "x_grid", "grid of x values");
    ov.add(signs, "--report", "report", "balance | ht | density | rho");
    ov.add(signs, "--prime-bound", "prime_bound", "prime bound for rho");
    ov.add(signs, "--exponent-bound", "exponent_bound", "exponent bound for rho");
    output_flag(signs, "--csv");
    output_flag(signs, "--json");
    auto* nf = app.add_subcommand("nf", "first negative index and y_f");
    form_flags(nf);
    output_flag(nf, "--json");
    auto* gaps = app.add_subcommand("gaps", "longest runs of vanishing coefficients");
    form_flags(gaps);
    output_flag(gaps, "--json");
    auto* dick = app.add_subcommand("dickman", "Dickman function table");
    ov.add(dick, "--max-u", "max_u", "upper limit U");
    ov.add(dick, "--step", "step", "step h");
    output_flag(dick, "--csv");
    auto* fri = app.add_subcommand("friable", "square-free friable count");
    ov.add(fri, "--x", "x", "x");
    ov.add(fri, "--y", "y", "y");
    ov.add(fri, "--q-primes", "q_primes", "comma-separated primes of q");
    output_flag(fri, "--csv");
    auto* l42 = app.add_subcommand("lemma42", "h-weighted sums against the rho prediction");
    ov.add(l42, "--y", "y", "y");
    ov.add(l42, "--u-grid", "u_grid", "grid of u values");
    ov.add(l42, "--c", "c", "constant c");
    ov.add(l42, "--k", "k", "weight parameter k");
    ov.add(l42, "--level", "N", "level N");
    ov.add(l42, "--C0", "C0", "constant C0");
    output_flag(l42, "--csv");
    auto* sum = app.add_subcommand("summatory", "S(x) and the boundedness ratio");
    form_flags(sum);
    ov.add(sum, "--x", "x_grid", "grid of x values");
    ov.add(sum, "--c", "c", "constant c");
    ov.add(sum, "--u", "u", "exponent u for the chain check");
    ov.add(sum, "--eps", "eps", "epsilon of the ratio");
    output_flag(sum, "--csv");
    auto* bf = app.add_subcommand("bfree", "B-free counts in a window");
    form_flags(bf);
    ov.add(bf, "--set", "bset", "squares | form");
    ov.add(bf, "--x", "x", "window start x");
    ov.add(bf, "--y", "y", "window length y");
    ov.add(bf, "--mod", "mod", "modulus q");
    ov.add(bf, "--res", "res", "residue a");
    ov.add(bf, "--prime-bound", "prime_bound", "prime bound for the form set");
    output_flag(bf, "--json");
    auto* acc = app.add_subcommand("accept", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0) hs::kernels::set_thread_count(threads);
        if (acc->parsed()) {
            const auto summary = hs::accept::run_acceptance(std::cout, seed);
            return summary.hard_failures == 0 ? 0 : 1;
        }
        hs::cli::RunConfig cfg;
        if (!config_path.empty()) cfg = hs::cli::load_config(config_path);
        if (!out_dir.empty()) cfg.out = out_dir;
        if (const char* env = std::getenv("HALFSIGN_OUT"); env && *env) cfg.out = env;
        if (app.count("--threads")) cfg.threads = threads;
        if (app.count("--seed")) cfg.seed = seed;
        for (const auto& [key, value] : ov.values) cfg.set(key, value);
        const auto* sub = app.get_subcommands().front();
        const auto result = hs::cli::run_experiment(sub->get_name(), cfg, std::cout);
        for (const auto& f : result.files)
            std::cout << (std::filesystem::path(cfg.out) / f.path).string() << "  " << f.sha256 << "\n";
        return result.status;
    } catch (const hs::UsageError& e) {
        std::cerr << "usage error (" << e.field << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
