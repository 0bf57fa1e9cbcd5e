#ifndef HALFSIGN_KERNELS_HPP
#define HALFSIGN_KERNELS_HPP

// Data-parallel inner loops. Every kernel has a serial reference twin in
// `serial::` that the tests compare against; the `parallel::` versions are
// what the modules call. Results are bit-identical between the two: integer
// kernels are exact, and floating reductions are summed in fixed block order.

#include <functional>
#include <span>
#include <vector>

#include "halfsign/arithfn.hpp"

namespace halfsign::kernels {

using i128 = __int128;

/// Coefficients 0..terms-1 of prod_{n>=1} (1 - q^n)^exponent, expanded by
/// `exponent` sparse passes of the pentagonal-number series. Throws
/// CapacityError if a coefficient leaves the signed 128-bit range.
namespace serial {
std::vector<i128> eta_power_series(u64 terms, unsigned exponent);
arith::CoefficientTable dirichlet_convolve(const arith::CoefficientTable& a,
                                           const arith::CoefficientTable& b);
/// #{n <= x squarefree : P(n) <= y, no prime of `excluded` divides n}, by
/// factoring each n with the sieve (sieve.limit() >= x).
u64 squarefree_smooth_count(const arith::FactorSieve& sieve, u64 x, u64 y,
                            std::span<const u64> excluded);
/// #{lo < n <= hi : n = a mod q, no element of `elements` divides n}.
u64 bfree_count(std::span<const u64> elements, u64 lo, u64 hi, u64 q, u64 a,
                std::vector<u64>* members = nullptr);
double block_sum(u64 first, u64 last, const std::function<double(u64)>& term);
}  // namespace serial

namespace parallel {
std::vector<i128> eta_power_series(u64 terms, unsigned exponent);
arith::CoefficientTable dirichlet_convolve(const arith::CoefficientTable& a,
                                           const arith::CoefficientTable& b);
/// Segmented version; needs no sieve beyond sqrt(x).
u64 squarefree_smooth_count(u64 x, u64 y, std::span<const u64> excluded);
u64 bfree_count(std::span<const u64> elements, u64 lo, u64 hi, u64 q, u64 a,
                std::vector<u64>* members = nullptr);
/// Sum of term(n) for n in [first, last]; blocks of fixed size are summed
/// independently and then combined in block order.
double block_sum(u64 first, u64 last, const std::function<double(u64)>& term);
}  // namespace parallel

/// Pentagonal exponents k(3k-1)/2 (k = 0, ±1, ±2, ...) below `terms`, with signs.
std::vector<std::pair<u64, int>> pentagonal_terms(u64 terms);

void set_thread_count(int threads);
int thread_count();

}  // namespace halfsign::kernels

#endif
