#include "halfsign/friable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "halfsign/kernels.hpp"

namespace halfsign::friable {

namespace {

std::vector<u64> normalized_primes(const std::vector<u64>& q_primes) {
    std::vector<u64> out = q_primes;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (u64 p : out)
        if (p < 2) throw DomainError("q_primes must hold primes, got " + std::to_string(p));
    return out;
}

u64 floor_power(double y, double u) {
    const double v = std::pow(y, u);
    u64 x = static_cast<u64>(std::floor(v));
    // Correct floating error at exact powers.
    if (static_cast<double>(x + 1) <= v * (1 + 1e-15)) ++x;
    return x;
}

}  // namespace

FriableCount xi_count(u64 x, u64 y, const std::vector<u64>& q_primes,
                      const dickman::DickmanTable* rho) {
    if (x > kMaxCount) throw CapacityError("xi_count supports x <= 1e8, got " + std::to_string(x));
    if (y < 2) throw DomainError("xi_count needs y >= 2");
    FriableCount r;
    r.x = x;
    r.y = y;
    r.q_primes = normalized_primes(q_primes);
    r.count = x == 0 ? 0 : kernels::parallel::squarefree_smooth_count(x, y, r.q_primes);
    if (rho != nullptr && x >= 1) {
        const double u = x < 2 ? 0.0 : std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
        if (u <= rho->upper()) r.predicted = pi_q(r.q_primes).value * static_cast<double>(x) * (*rho)(u);
    }
    return r;
}

PiQ pi_q(const std::vector<u64>& q_primes) {
    const auto primes = normalized_primes(q_primes);
    double local = 1.0;
    for (u64 p : primes) {
        const double pd = static_cast<double>(p);
        local *= (1.0 - 1.0 / pd) / (1.0 - 1.0 / (pd * pd));
    }
    PiQ r;
    r.value = local * 6.0 / (std::numbers::pi * std::numbers::pi);

    arith::FactorSieve sieve(kEulerProductBound);
    double product = 1.0;
    for (u64 p : sieve.primes()) {
        const double pd = static_cast<double>(p);
        if (std::binary_search(primes.begin(), primes.end(), p))
            product *= 1.0 - 1.0 / pd;
        else
            product *= 1.0 - 1.0 / (pd * pd);
    }
    for (u64 p : primes)
        if (p > kEulerProductBound) product *= 1.0 - 1.0 / static_cast<double>(p);
    r.truncated = product;
    return r;
}

double log_omega(std::size_t omega) { return std::log(static_cast<double>(omega) + 3.0); }

FriableRatio lemma41_ratio(u64 y, double u, const std::vector<u64>& q_primes,
                         const dickman::DickmanTable& rho) {
    if (u < 1.0 / 3.0 || u > 3.0) throw DomainError("lemma41_ratio needs 1/3 <= u <= 3");
    FriableRatio r;
    r.y = static_cast<double>(y);
    r.u = u;
    r.x = floor_power(r.y, u);
    if (r.x > kMaxCount) throw CapacityError("lemma41_ratio needs y^u <= 1e8");
    const auto primes = normalized_primes(q_primes);
    r.count = xi_count(r.x, y, primes).count;
    r.predicted = pi_q(primes).value * std::pow(r.y, u) * rho(u);
    r.ratio = static_cast<double>(r.count) / r.predicted;
    r.envelope = std::pow(log_omega(primes.size()), std::numbers::e + 2.0) / std::sqrt(std::log(r.y));
    r.in_band = r.ratio >= 0.8 && r.ratio <= 1.2;
    return r;
}

FriableRatio lemma41_ratio(u64 y, double u, const ModulusContext& ctx,
                         const dickman::DickmanTable& rho) {
    return lemma41_ratio(y, u, ctx.Nk_primes, rho);
}

}  // namespace halfsign::friable
