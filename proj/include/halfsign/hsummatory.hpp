#ifndef HALFSIGN_HSUMMATORY_HPP
#define HALFSIGN_HSUMMATORY_HPP

#include <optional>
#include <string>
#include <vector>

#include "halfsign/dickman.hpp"
#include "halfsign/modulus.hpp"
#include "halfsign/shimura.hpp"

namespace halfsign::hsum {

inline constexpr double kDefaultC = 1.0;
inline constexpr u64 kMaxWeightedSum = 10'000'000;

/// Multiplicative h = h_{N_k, y}, supported on square-free n coprime to N_k.
class HFunction {
public:
    HFunction(ModulusContext ctx, double y, double c = kDefaultC);

    const ModulusContext& ctx() const { return ctx_; }
    double y() const { return y_; }
    double c() const { return c_; }
    double at_prime(u64 p) const;
    /// h(p^nu): h(p) for nu = 1, 0 for nu >= 2, 1 for nu = 0.
    double at_prime_power(u64 p, unsigned nu) const;
    double value(const arith::FactorSieve& sieve, u64 n) const;

private:
    ModulusContext ctx_;
    double y_;
    double c_;
};

/// Coefficient n contributes when it is square-free and coprime to N_k.
bool in_flat_support(const ModulusContext& ctx, const arith::FactorSieve& sieve, u64 n);

/// S(x) = sum of A*(n) log(x/n) over square-free n <= x coprime to N_k.
double summatory_S(const shimura::HalfIntegralTable& table, const ModulusContext& ctx, double x);
/// Same sum accumulated from n = floor(x) down to 1.
double summatory_S_reversed(const shimura::HalfIntegralTable& table, const ModulusContext& ctx,
                            double x);

struct PositivityThreshold {
    u64 y_f = 0;
    std::optional<u64> witness;  // least n > y_f, gcd(n, N/2) = 1, with A(n) < 0
};

PositivityThreshold compute_y_f(const shimura::HalfIntegralTable& table);

/// sum_{n <= y^u} h(n) log(y^u / n), with y = h.y().
double h_weighted_sum(const HFunction& h, double u);

/// g with A* mu^2 = g * h: g(p) = A*(p) - h(p), g(p^nu) = -g(p^{nu-1}) h(p).
struct GFunction {
    std::vector<double> values;  // g(n), n = 0..limit, values[0] unused
    double min_prime_value = 0.0;  // min of g(p) over primes p not dividing N_k
    u64 argmin = 0;
    u64 limit() const { return values.empty() ? 0 : values.size() - 1; }
};

GFunction deconvolve_g(const shimura::HalfIntegralTable& table, const HFunction& h, u64 limit);

struct Prop1Row {
    double x = 0.0;
    double S = 0.0;
    double ratio = 0.0;  // |S| / ((k^2 N)^(1/4 + eps) x^(1/2))
};

struct Prop1Report {
    double eps = 0.05;
    std::vector<Prop1Row> rows;
    bool exploding = false;  // last ratio > 10 * first ratio
};

Prop1Report prop1_ratio_report(const shimura::HalfIntegralTable& table, const ModulusContext& ctx,
                               const std::vector<double>& grid, double eps = 0.05);

struct WeightedSumRow {
    double u = 0.0;
    double x = 0.0;  // y^u
    double sum = 0.0;
    double predicted = 0.0;  // Pi_{N_k} y^u (rho(2u) - 2 log u)
    double ratio = 0.0;
};

std::vector<WeightedSumRow> lemma42_report(const HFunction& h, const dickman::DickmanTable& rho,
                                       const std::vector<double>& u_grid);

enum class ChainStatus { Applicable, Inapplicable, Vacuous };
std::string to_string(ChainStatus status);

struct Prop2Report {
    ChainStatus status = ChainStatus::Vacuous;
    u64 y_f = 0;
    u64 y = 0;  // threshold used: min(y_f, floor(X^(1/u)))
    double u = 0.0;
    double S = 0.0;
    double h_sum = 0.0;
    double min_g = 0.0;
    bool holds = false;  // S >= h_sum, meaningful when applicable
};

Prop2Report prop2_chain_check(const shimura::HalfIntegralTable& table, const ModulusContext& ctx,
                              double c, double u);

}  // namespace halfsign::hsum

#endif
