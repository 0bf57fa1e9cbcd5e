#include "halfsign/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "halfsign/bfree.hpp"
#include "halfsign/dickman.hpp"
#include "halfsign/friable.hpp"
#include "halfsign/hsummatory.hpp"
#include "halfsign/kernels.hpp"
#include "halfsign/modulus.hpp"

namespace halfsign::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

namespace {

struct Writer {
    const RunConfig& cfg;
    RunResult& result;

    void emit(const std::string& default_name, const std::string& content) {
        const std::string name = cfg.output.empty() ? default_name : cfg.output;
        const fs::path path = fs::path(cfg.out) / name;
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        f << content;
        result.files.push_back({name, sha256_hex(content), content.size()});
    }
};

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::string csv_list(const std::vector<u64>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + std::to_string(v[i]);
    return out;
}

u64 grid_limit(const RunConfig& cfg, const std::vector<double>& grid, const char* field) {
    u64 need = cfg.limit;
    for (double x : grid) {
        if (!(x >= 0) || x > static_cast<double>(eigen::kMaxDeltaLimit))
            throw UsageError(std::string(field) + ": grid values must lie in [0, 1e6]", field);
        need = std::max<u64>(need, static_cast<u64>(std::floor(x)));
    }
    return need;
}

shimura::HalfIntegralTable table_for(const RunConfig& cfg, u64 limit) {
    return shimura::halfintegral_coefficients(cfg.instance(), limit);
}

void run_coeffs(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const auto table = table_for(cfg, cfg.limit);
    std::string s = "n,c,A,sign\n";
    for (u64 n = 1; n <= table.limit(); ++n)
        s += std::to_string(n) + "," + table.c()[n].get_str() + "," + table[n].get_str() + "," +
             std::to_string(table.sign(n)) + "\n";
    w.emit("coeffs.csv", s);
    log << "coeffs: " << table.limit() << " rows\n";
}

void run_signs(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const u64 limit = grid_limit(cfg, cfg.x_grid, "x_grid");
    const auto table = table_for(cfg, limit);
    std::vector<u64> grid;
    for (double x : cfg.x_grid) grid.push_back(static_cast<u64>(std::floor(x)));
    if (cfg.report == "balance") {
        std::string s = "x,nplus,nminus,nzero,nstar,balance,envelope\n";
        for (const auto& r : shimura::sign_balance_report(table, grid))
            s += std::to_string(r.x) + "," + std::to_string(r.nplus) + "," + std::to_string(r.nminus) + "," +
                 std::to_string(r.nzero) + "," + std::to_string(r.nstar) + "," + opt(r.balance) + "," +
                 opt(r.envelope) + "\n";
        w.emit("signs.csv", s);
    } else if (cfg.report == "ht") {
        std::string s = "x,left,negative_prime_sum,right,ratio\n";
        for (const auto& r : shimura::hall_tenenbaum_report(table, grid))
            s += std::to_string(r.x) + "," + format_double(r.left) + "," + format_double(r.negative_prime_sum) +
                 "," + format_double(r.right) + "," + format_double(r.ratio) + "\n";
        w.emit("signs_ht.csv", s);
    } else if (cfg.report == "density") {
        const auto d = shimura::negative_prime_density(table, table.limit());
        const auto serre = shimura::serre_exceptional_count(table, table.limit());
        json j = {{"x", d.x},
                  {"primes", d.primes},
                  {"negative", d.negative},
                  {"fraction", d.fraction},
                  {"density", d.density},
                  {"serre_count", serre.count},
                  {"serre_primes", serre.primes},
                  {"serre_envelope", serre.envelope}};
        w.emit("signs_density.json", j.dump(2) + "\n");
    } else {
        const auto r = shimura::density_rho_f(table, std::min(cfg.prime_bound, table.limit()), cfg.exponent_bound);
        json j = {{"prime_bound", r.prime_bound}, {"exponent_bound", r.exponent_bound},
                  {"value", r.value},             {"lower", r.lower},
                  {"upper", r.upper}};
        w.emit("signs_rho.json", j.dump(2) + "\n");
    }
    log << "signs (" << cfg.report << "): table limit " << table.limit() << "\n";
}

void run_nf(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const auto table = table_for(cfg, cfg.limit);
    const auto nf = shimura::first_negative_index(table);
    const auto yf = hsum::compute_y_f(table);
    json j = {{"n_f", nf.n_f ? json(*nf.n_f) : json(nullptr)},
              {"search_bound", nf.search_bound},
              {"benchmark", nf.benchmark},
              {"y_f", yf.y_f},
              {"witness", yf.witness ? json(*yf.witness) : json(nullptr)}};
    w.emit("nf.json", j.dump(2) + "\n");
    log << "n_f = " << (nf.n_f ? std::to_string(*nf.n_f) : "none") << ", y_f = " << yf.y_f << "\n";
}

void run_gaps(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const auto table = table_for(cfg, cfg.limit);
    const auto g = shimura::vanishing_gaps(table);
    json j = {{"limit", table.limit()},
              {"max_gap", g.max_gap},
              {"argmax", g.argmax},
              {"truncated", g.truncated},
              {"benchmark", g.benchmark}};
    w.emit("gaps.json", j.dump(2) + "\n");
    log << "max gap " << g.max_gap << " at n = " << g.argmax << "\n";
}

void run_dickman(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const auto tab = dickman::solve_dickman(cfg.max_u, cfg.step);
    std::string s = "u,rho\n";
    for (std::size_t i = 0; i < tab.knots().size(); ++i)
        s += format_double(tab.knot_u(i)) + "," + format_double(tab.knots()[i]) + "\n";
    w.emit("dickman.csv", s);
    log << "dickman: " << tab.knots().size() << " knots, max residual " << format_double(tab.max_residual());
    if (cfg.max_u >= 3.0) log << ", kappa = " << format_double(dickman::solve_kappa(tab).kappa);
    log << "\n";
}

void run_friable(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const auto rho = dickman::solve_dickman(dickman::kMaxU, cfg.step);
    const auto count = friable::xi_count(cfg.x, cfg.y, cfg.q_primes, &rho);
    const double pi = friable::pi_q(count.q_primes).value;
    const double u = cfg.x < 2 ? 0.0 : std::log(static_cast<double>(cfg.x)) / std::log(static_cast<double>(cfg.y));
    std::string s = "x,y,q_primes,count,pi_q,u,predicted,ratio\n";
    s += std::to_string(count.x) + "," + std::to_string(count.y) + "," + csv_list(count.q_primes) + "," +
         std::to_string(count.count) + "," + format_double(pi) + "," + format_double(u) + "," +
         format_double(count.predicted) + "," +
         (count.predicted > 0 ? format_double(static_cast<double>(count.count) / count.predicted) : "") + "\n";
    w.emit("friable.csv", s);
    log << "Xi(" << count.x << ", " << count.y << ") = " << count.count << "\n";
}

void run_lemma42(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const auto ctx = make_modulus_context(cfg.k, cfg.N, cfg.C0);
    const hsum::HFunction h(ctx, static_cast<double>(cfg.y), cfg.c);
    const auto rho = dickman::solve_dickman(3.0, cfg.step);
    std::string s = "u,x,h_sum,predicted,ratio\n";
    for (const auto& r : hsum::lemma42_report(h, rho, cfg.u_grid))
        s += format_double(r.u) + "," + format_double(r.x) + "," + format_double(r.sum) + "," +
             format_double(r.predicted) + "," + format_double(r.ratio) + "\n";
    w.emit("lemma42.csv", s);
    log << "lemma42: " << cfg.u_grid.size() << " rows at y = " << cfg.y << "\n";
}

void run_summatory(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const u64 limit = grid_limit(cfg, cfg.x_grid, "x_grid");
    const auto table = table_for(cfg, limit);
    const auto ctx = make_modulus_context(cfg.k, cfg.N, cfg.C0);
    const auto report = hsum::prop1_ratio_report(table, ctx, cfg.x_grid, cfg.eps);
    std::string s = "x,S,S_reversed,prop1_ratio\n";
    for (const auto& r : report.rows)
        s += format_double(r.x) + "," + format_double(r.S) + "," +
             format_double(hsum::summatory_S_reversed(table, ctx, r.x)) + "," + format_double(r.ratio) + "\n";
    w.emit("summatory.csv", s);
    const auto chain = hsum::prop2_chain_check(table, ctx, cfg.c, cfg.u);
    log << "summatory: " << report.rows.size() << " rows" << (report.exploding ? " (ratios exploding)" : "")
        << "; chain check " << hsum::to_string(chain.status) << " at y = " << chain.y << "\n";
}

void run_bfree(const RunConfig& cfg, Writer& w, std::ostream& log) {
    const u64 end = cfg.x + cfg.y;
    bfree::BFreeSet set;
    json extra = json::object();
    if (cfg.bset == "squares") {
        set = bfree::BFreeSet::squares_of_primes(end);
    } else {
        const u64 P = std::max(end, cfg.prime_bound);
        if (P > eigen::kMaxDeltaLimit) throw UsageError("bset=form needs x + y <= 1e6", "x");
        const auto table = table_for(cfg, P);
        const auto form = bfree::build_form_bset(table, P);
        const auto recip = bfree::vanishing_prime_reciprocal_sum(form);
        set = form.set;
        extra = {{"vanishing_primes", form.vanishing_primes},
                 {"guarantee_checked", form.guarantee_checked},
                 {"guarantee_violation", form.guarantee_violation ? json(*form.guarantee_violation) : json(nullptr)},
                 {"vanishing_reciprocal_sum", recip.sum},
                 {"serre_envelope", recip.envelope}};
    }
    const auto cert = bfree::validate_bset(set);
    const auto count = cfg.mod == 1 ? bfree::sieve_interval(set, cfg.x, cfg.y)
                                    : bfree::sieve_progression(set, cfg.x, cfg.y, cfg.res, cfg.mod);
    json j = {{"set", cfg.bset},
              {"horizon", set.horizon},
              {"elements", cert.size},
              {"reciprocal_sum", cert.reciprocal_sum},
              {"tail_bound", cert.tail_bound ? json(*cert.tail_bound) : json(nullptr)},
              {"x", count.x},
              {"y", count.y},
              {"mod", count.q},
              {"res", cfg.mod == 1 ? 0 : count.a},
              {"count", count.count},
              {"density", count.density},
              {"benchmark", count.benchmark}};
    j.update(extra);
    w.emit("bfree.json", j.dump(2) + "\n");
    log << "B-free count in (" << cfg.x << ", " << end << "]: " << count.count << "\n";
}

const std::map<std::string, std::function<void(const RunConfig&, Writer&, std::ostream&)>>& registry() {
    static const std::map<std::string, std::function<void(const RunConfig&, Writer&, std::ostream&)>> r = {
        {"coeffs", run_coeffs},   {"signs", run_signs},     {"nf", run_nf},
        {"gaps", run_gaps},       {"dickman", run_dickman}, {"friable", run_friable},
        {"lemma42", run_lemma42}, {"summatory", run_summatory}, {"bfree", run_bfree}};
    return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : registry()) v.push_back(k);
        return v;
    }();
    return names;
}

RunResult run_experiment(const std::string& name, const RunConfig& config, std::ostream& log) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw UsageError("unknown experiment '" + name + "'", "experiment");
    config.validate();
    if (config.threads > 0) kernels::set_thread_count(config.threads);
    fs::create_directories(config.out);
    RunResult result;
    Writer w{config, result};
    it->second(config, w, log);

    json files = json::array();
    for (const auto& a : result.files) files.push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    json manifest = {{"experiment", name}, {"config", serialize(config)}, {"files", files}};
    std::ofstream m(fs::path(config.out) / ("manifest_" + name + ".json"), std::ios::binary);
    if (!m) throw Error("cannot write manifest in " + config.out);
    m << manifest.dump(2) << "\n";
    return result;
}

}  // namespace halfsign::cli
