#include "halfsign/hsummatory.hpp"

#include <algorithm>
#include <cmath>

#include "halfsign/friable.hpp"
#include "halfsign/kernels.hpp"

namespace halfsign::hsum {

HFunction::HFunction(ModulusContext ctx, double y, double c) : ctx_(std::move(ctx)), y_(y), c_(c) {
    if (!(c > 0.0)) throw DomainError("h needs c > 0");
    if (!(y >= 1.0)) throw DomainError("h needs y >= 1");
}

double HFunction::at_prime(u64 p) const {
    if (ctx_.divides_Nk(p) || (ctx_.N / 2) % p == 0) return 0.0;
    const double pd = static_cast<double>(p);
    const double shift = c_ / ctx_.L;
    if (pd > y_) return -2.0 - shift;
    if (pd * pd > y_) return -shift;
    return 1.0 - shift;
}

double HFunction::at_prime_power(u64 p, unsigned nu) const {
    if (nu == 0) return 1.0;
    return nu == 1 ? at_prime(p) : 0.0;
}

double HFunction::value(const arith::FactorSieve& sieve, u64 n) const {
    double v = 1.0;
    for (const auto& [p, e] : sieve.factorize(n)) {
        if (e > 1) return 0.0;
        v *= at_prime(p);
    }
    return v;
}

bool in_flat_support(const ModulusContext& ctx, const arith::FactorSieve& sieve, u64 n) {
    for (const auto& [p, e] : sieve.factorize(n))
        if (e > 1 || ctx.divides_Nk(p)) return false;
    return true;
}

namespace {

u64 checked_floor(const shimura::HalfIntegralTable& table, double x) {
    if (x < 1.0) return 0;
    const u64 m = static_cast<u64>(std::floor(x));
    if (m > table.limit())
        throw ShapeError("S(x) needs x <= " + std::to_string(table.limit()) + ", got " + std::to_string(x));
    return m;
}

}  // namespace

double summatory_S(const shimura::HalfIntegralTable& table, const ModulusContext& ctx, double x) {
    const u64 m = checked_floor(table, x);
    if (m == 0) return 0.0;
    const auto& sieve = table.sieve();
    const double logx = std::log(x);
    return kernels::parallel::block_sum(1, m, [&](u64 n) {
        if (!in_flat_support(ctx, sieve, n)) return 0.0;
        return table.normalized(n) * (logx - std::log(static_cast<double>(n)));
    });
}

double summatory_S_reversed(const shimura::HalfIntegralTable& table, const ModulusContext& ctx,
                            double x) {
    const u64 m = checked_floor(table, x);
    const auto& sieve = table.sieve();
    const double logx = std::log(x);
    double sum = 0.0, comp = 0.0;
    for (u64 n = m; n >= 1; --n) {
        if (!in_flat_support(ctx, sieve, n)) continue;
        const double term = table.normalized(n) * (logx - std::log(static_cast<double>(n)));
        const double t = sum + term;
        comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

PositivityThreshold compute_y_f(const shimura::HalfIntegralTable& table) {
    const u64 half = table.instance().N / 2;
    PositivityThreshold r;
    for (u64 n = 1; n <= table.limit(); ++n) {
        if (arith::gcd(n, half) != 1) continue;
        if (table.sign(n) < 0) {
            r.y_f = n - 1;
            r.witness = n;
            return r;
        }
    }
    r.y_f = table.limit();
    return r;
}

double h_weighted_sum(const HFunction& h, double u) {
    if (u < 0.0) throw DomainError("h_weighted_sum needs u >= 0");
    const double X = std::pow(h.y(), u);
    if (X > static_cast<double>(kMaxWeightedSum))
        throw CapacityError("h_weighted_sum needs y^u <= 1e7");
    if (X < 1.0) return 0.0;
    const u64 m = static_cast<u64>(std::floor(X));
    std::vector<double> hv(m + 1, 1.0);
    if (m >= 2) {
        arith::FactorSieve sieve(std::max<u64>(m, 2));
        for (u64 p : sieve.primes()) {
            const double hp = h.at_prime(p);
            for (u64 n = p; n <= m; n += p) hv[n] *= hp;
            if (p <= m / p)
                for (u64 n = p * p; n <= m; n += p * p) hv[n] = 0.0;
        }
    }
    const double logX = std::log(X);
    return kernels::parallel::block_sum(1, m, [&](u64 n) {
        return hv[n] == 0.0 ? 0.0 : hv[n] * (logX - std::log(static_cast<double>(n)));
    });
}

GFunction deconvolve_g(const shimura::HalfIntegralTable& table, const HFunction& h, u64 limit) {
    if (limit > table.limit()) throw ShapeError("deconvolve_g limit exceeds the table");
    const auto& sieve = table.sieve();
    GFunction g;
    g.values.assign(limit + 1, 0.0);
    if (limit >= 1) g.values[1] = 1.0;
    g.min_prime_value = 0.0;
    bool first = true;
    for (u64 n = 2; n <= limit; ++n) {
        double v = 1.0;
        for (const auto& [p, e] : sieve.factorize(n)) {
            const double gp = table.normalized(p) - h.at_prime(p);
            v *= gp * std::pow(-h.at_prime(p), static_cast<double>(e - 1));
        }
        g.values[n] = v;
        if (sieve.is_prime(n) && !h.ctx().divides_Nk(n) && (first || v < g.min_prime_value)) {
            g.min_prime_value = v;
            g.argmin = n;
            first = false;
        }
    }
    return g;
}

Prop1Report prop1_ratio_report(const shimura::HalfIntegralTable& table, const ModulusContext& ctx,
                               const std::vector<double>& grid, double eps) {
    Prop1Report r;
    r.eps = eps;
    const auto& inst = table.instance();
    const double scale = std::pow(static_cast<double>(inst.k) * inst.k * static_cast<double>(inst.N), 0.25 + eps);
    r.rows.resize(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double S = summatory_S(table, ctx, x);
        r.rows[i] = {x, S, std::fabs(S) / (scale * std::sqrt(x))};
    }
    if (r.rows.size() >= 2) r.exploding = r.rows.back().ratio > 10.0 * r.rows.front().ratio;
    return r;
}

std::vector<WeightedSumRow> lemma42_report(const HFunction& h, const dickman::DickmanTable& rho,
                                       const std::vector<double>& u_grid) {
    const double Pi = friable::pi_q(h.ctx().Nk_primes).value;
    std::vector<WeightedSumRow> rows;
    for (double u : u_grid) {
        WeightedSumRow row;
        row.u = u;
        row.x = std::pow(h.y(), u);
        row.sum = h_weighted_sum(h, u);
        row.predicted = dickman::lemma42_rhs(rho, u, h.y(), Pi);
        row.ratio = row.sum / row.predicted;
        rows.push_back(row);
    }
    return rows;
}

std::string to_string(ChainStatus status) {
    switch (status) {
        case ChainStatus::Applicable: return "applicable";
        case ChainStatus::Inapplicable: return "inapplicable";
        case ChainStatus::Vacuous: return "vacuous";
    }
    return "unknown";
}

Prop2Report prop2_chain_check(const shimura::HalfIntegralTable& table, const ModulusContext& ctx,
                              double c, double u) {
    if (!(u > 0.0)) throw DomainError("prop2_chain_check needs u > 0");
    Prop2Report r;
    r.u = u;
    r.y_f = compute_y_f(table).y_f;
    const double cap = std::min<double>(static_cast<double>(table.limit()), static_cast<double>(kMaxWeightedSum));
    u64 y = static_cast<u64>(std::floor(std::pow(cap, 1.0 / u) * (1 + 1e-12)));
    while (y > 1 && std::pow(static_cast<double>(y), u) > cap) --y;
    r.y = std::min(r.y_f, y);
    if (static_cast<double>(r.y) < ctx.L * ctx.L) {
        r.status = ChainStatus::Vacuous;
        return r;
    }
    const HFunction h(ctx, static_cast<double>(r.y), c);
    const double X = std::pow(static_cast<double>(r.y), u);
    const u64 m = static_cast<u64>(std::floor(X));
    const auto g = deconvolve_g(table, h, m);
    r.min_g = g.min_prime_value;
    r.S = summatory_S(table, ctx, X);
    r.h_sum = h_weighted_sum(h, u);
    r.status = r.min_g >= 0.0 ? ChainStatus::Applicable : ChainStatus::Inapplicable;
    r.holds = r.S >= r.h_sum;
    return r;
}

}  // namespace halfsign::hsum
