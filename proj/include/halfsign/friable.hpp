#ifndef HALFSIGN_FRIABLE_HPP
#define HALFSIGN_FRIABLE_HPP

#include <vector>

#include "halfsign/dickman.hpp"
#include "halfsign/modulus.hpp"

namespace halfsign::friable {

inline constexpr u64 kMaxCount = 100'000'000;
inline constexpr u64 kEulerProductBound = 1'000'000;

struct FriableCount {
    u64 x = 0;
    u64 y = 0;
    std::vector<u64> q_primes;
    u64 count = 0;
    double predicted = 0.0;  // Pi_q x rho(log x / log y); 0 without a rho table
};

/// Xi_q(x, y): square-free n <= x with P(n) <= y and no prime of q dividing n.
FriableCount xi_count(u64 x, u64 y, const std::vector<u64>& q_primes,
                      const dickman::DickmanTable* rho = nullptr);

struct PiQ {
    double value = 0.0;      // phi(q)/q prod_{p not | q} (1 - 1/p^2), closed form
    double truncated = 0.0;  // same with the product cut at p <= kEulerProductBound
};

PiQ pi_q(const std::vector<u64>& q_primes);

/// L_q = log(omega(q) + 3).
double log_omega(std::size_t omega);

struct FriableRatio {
    double y = 0.0;
    double u = 0.0;
    u64 x = 0;  // floor(y^u)
    u64 count = 0;
    double predicted = 0.0;  // Pi_q y^u rho(u)
    double ratio = 0.0;
    double envelope = 0.0;  // L_q^(e+2) / sqrt(log y)
    bool in_band = false;   // ratio in [0.8, 1.2]
};

FriableRatio lemma41_ratio(u64 y, double u, const std::vector<u64>& q_primes,
                         const dickman::DickmanTable& rho);
FriableRatio lemma41_ratio(u64 y, double u, const ModulusContext& ctx,
                         const dickman::DickmanTable& rho);

}  // namespace halfsign::friable

#endif
