#include "halfsign/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "halfsign/dickman.hpp"
#include "halfsign/friable.hpp"
#include "halfsign/hsummatory.hpp"
#include "halfsign/table_io.hpp"

namespace halfsign::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
    T v{};
    const std::string s = trim(text);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size()) return v;
    // Accept exact scientific forms such as 1e5 for unsigned fields.
    if constexpr (std::is_unsigned_v<T>) {
        try {
            std::size_t used = 0;
            const double d = std::stod(s, &used);
            if (used == s.size() && d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<T>(d);
        } catch (const std::exception&) {
        }
    }
    throw UsageError("invalid integer '" + text + "' for " + key, key);
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used == s.size() && std::isfinite(d)) return d;
    } catch (const std::exception&) {
    }
    throw UsageError("invalid number '" + text + "' for " + key, key);
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
}

std::string join(const std::vector<u64>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    const std::string s = trim(text);
    std::vector<double> out;
    if (s.empty()) return out;
    if (s.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(parse_real("grid", item));
        if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
            throw UsageError("grid range must be a:b:step with a <= b and step > 0", "grid");
        const double count = std::floor((parts[1] - parts[0]) / parts[2] + 1e-9);
        if (count > 1e6) throw UsageError("grid has too many points", "grid");
        for (u64 i = 0; i <= static_cast<u64>(count); ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real("grid", item));
    return out;
}

std::vector<u64> parse_u64_list(const std::string& text) {
    std::vector<u64> out;
    const std::string s = trim(text);
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_integer<u64>("list", item));
    return out;
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "form") form = value;
    else if (key == "synthetic_file") synthetic_file = value;
    else if (key == "lift_level") lift_level = parse_integer<u64>(key, value);
    else if (key == "k") k = parse_integer<unsigned>(key, value);
    else if (key == "N") N = parse_integer<u64>(key, value);
    else if (key == "chi_disc") chi_disc = parse_integer<i64>(key, value);
    else if (key == "t") t = parse_integer<u64>(key, value);
    else if (key == "limit") limit = parse_integer<u64>(key, value);
    else if (key == "C0") C0 = parse_integer<u64>(key, value);
    else if (key == "c") c = parse_real(key, value);
    else if (key == "eps") eps = parse_real(key, value);
    else if (key == "x_grid") x_grid = parse_grid(value);
    else if (key == "u_grid") u_grid = parse_grid(value);
    else if (key == "report") report = value;
    else if (key == "x") x = parse_integer<u64>(key, value);
    else if (key == "y") y = parse_integer<u64>(key, value);
    else if (key == "q_primes") q_primes = parse_u64_list(value);
    else if (key == "u") u = parse_real(key, value);
    else if (key == "max_u") max_u = parse_real(key, value);
    else if (key == "step") step = parse_real(key, value);
    else if (key == "bset") bset = value;
    else if (key == "mod") mod = parse_integer<u64>(key, value);
    else if (key == "res") res = parse_integer<u64>(key, value);
    else if (key == "prime_bound") prime_bound = parse_integer<u64>(key, value);
    else if (key == "exponent_bound") exponent_bound = parse_integer<unsigned>(key, value);
    else if (key == "out") out = value;
    else if (key == "output") output = value;
    else if (key == "seed") seed = parse_integer<u64>(key, value);
    else if (key == "threads") threads = parse_integer<int>(key, value);
    else throw UsageError("unknown config key '" + key + "'", key);
}

void RunConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) { throw UsageError(field + ": " + why, field); };
    if (form != "delta" && form != "synthetic") fail("form", "must be delta or synthetic");
    if (form == "synthetic" && synthetic_file.empty()) fail("synthetic_file", "required for form=synthetic");
    if (k < 1) fail("k", "must be >= 1");
    if (N < 4 || N % 4) fail("N", "must be a positive multiple of 4");
    if (t < 1) fail("t", "must be >= 1");
    if (limit < 1 || limit > eigen::kMaxDeltaLimit) fail("limit", "must lie in [1, 1e6]");
    if (C0 < 1) fail("C0", "must be positive");
    if (!(c > 0)) fail("c", "must be positive");
    if (!(eps > 0)) fail("eps", "must be positive");
    if (report != "balance" && report != "ht" && report != "density" && report != "rho")
        fail("report", "must be balance, ht, density or rho");
    if (x > friable::kMaxCount) fail("x", "must be <= 1e8");
    if (y < 2) fail("y", "must be >= 2");
    if (!(max_u > 1.0) || max_u > dickman::kMaxU) fail("max_u", "must lie in (1, 10]");
    if (!(step > 0.0) || step > dickman::kMaxStep) fail("step", "must lie in (0, 0.01]");
    if (bset != "squares" && bset != "form") fail("bset", "must be squares or form");
    if (mod < 1) fail("mod", "must be >= 1");
    if (res < 1 || res > mod) fail("res", "must satisfy 1 <= res <= mod");
    if (prime_bound < 2) fail("prime_bound", "must be >= 2");
    if (exponent_bound < 1 || exponent_bound > 64) fail("exponent_bound", "must lie in [1, 64]");
    if (threads < 0) fail("threads", "must be >= 0");
    if (out.empty()) fail("out", "must not be empty");
}

shimura::FormInstance RunConfig::instance() const {
    shimura::FormInstance inst;
    inst.k = k;
    inst.N = N;
    inst.chi = {N, chi_disc};
    inst.t = t;
    if (form == "synthetic") {
        const auto table = arith::load_table(synthetic_file);
        auto values = std::make_shared<arith::CoefficientTable>(table);
        inst.backend = eigen::LiftBackend::synthetic(
            2 * k, lift_level,
            [values](u64 p) -> arith::Integer {
                if (p > values->limit())
                    throw ShapeError("synthetic file has no value at p = " + std::to_string(p));
                return (*values)[p];
            },
            "file:" + synthetic_file);
    }
    inst.validate();
    return inst;
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + trim(line), trim(line));
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path, "config");
    return parse_config(in);
}

std::string serialize(const RunConfig& c) {
    std::ostringstream o;
    o << "form=" << c.form << "\n"
      << "synthetic_file=" << c.synthetic_file << "\n"
      << "lift_level=" << c.lift_level << "\n"
      << "k=" << c.k << "\n"
      << "N=" << c.N << "\n"
      << "chi_disc=" << c.chi_disc << "\n"
      << "t=" << c.t << "\n"
      << "limit=" << c.limit << "\n"
      << "C0=" << c.C0 << "\n"
      << "c=" << format_double(c.c) << "\n"
      << "eps=" << format_double(c.eps) << "\n"
      << "x_grid=" << join(c.x_grid) << "\n"
      << "u_grid=" << join(c.u_grid) << "\n"
      << "report=" << c.report << "\n"
      << "x=" << c.x << "\n"
      << "y=" << c.y << "\n"
      << "q_primes=" << join(c.q_primes) << "\n"
      << "u=" << format_double(c.u) << "\n"
      << "max_u=" << format_double(c.max_u) << "\n"
      << "step=" << format_double(c.step) << "\n"
      << "bset=" << c.bset << "\n"
      << "mod=" << c.mod << "\n"
      << "res=" << c.res << "\n"
      << "prime_bound=" << c.prime_bound << "\n"
      << "exponent_bound=" << c.exponent_bound << "\n"
      << "out=" << c.out << "\n"
      << "output=" << c.output << "\n"
      << "seed=" << c.seed << "\n"
      << "threads=" << c.threads << "\n";
    return o.str();
}

}  // namespace halfsign::cli
