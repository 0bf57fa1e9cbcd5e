#ifndef HALFSIGN_RUN_CONFIG_HPP
#define HALFSIGN_RUN_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "halfsign/shimura.hpp"

namespace halfsign::cli {

/// Every knob of an experiment run. Serialized as a plain-text key=value file
/// (one pair per line, '#' starts a comment).
struct RunConfig {
    // form
    std::string form = "delta";  // delta | synthetic
    std::string synthetic_file;  // table of c(n); only prime entries are read
    u64 lift_level = 1;
    unsigned k = 6;
    u64 N = 4;
    i64 chi_disc = 1;
    u64 t = 1;
    // limits and constants
    u64 limit = 10'000;
    u64 C0 = 100;
    double c = 1.0;
    double eps = 0.05;
    // grids
    std::vector<double> x_grid;
    std::vector<double> u_grid;
    // experiment parameters
    std::string report = "balance";  // signs: balance | ht | density | rho
    u64 x = 31'623;
    u64 y = 1'000;
    std::vector<u64> q_primes;
    double u = 1.05;
    double max_u = 3.0;
    double step = 0.005;
    std::string bset = "squares";  // squares | form
    u64 mod = 1;
    u64 res = 1;
    u64 prime_bound = 1'000;
    unsigned exponent_bound = 8;
    // run control
    std::string out = ".";
    std::string output;  // artifact file name, default per experiment
    u64 seed = 0;
    int threads = 0;

    bool operator==(const RunConfig&) const = default;

    void set(const std::string& key, const std::string& value);
    /// Checks ranges; throws UsageError naming the offending field.
    void validate() const;
    shimura::FormInstance instance() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
/// Every key, in a fixed order, so parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& config);

/// "a:b:step" (inclusive, step > 0) or a comma-separated list; "" is empty.
std::vector<double> parse_grid(const std::string& text);
std::vector<u64> parse_u64_list(const std::string& text);
/// %.17g, so doubles survive a text round trip.
std::string format_double(double v);

}  // namespace halfsign::cli

#endif
