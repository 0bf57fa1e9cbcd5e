#include "halfsign/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>

namespace halfsign::kernels {

namespace {

constexpr u64 kSieveBlock = 1u << 16;
constexpr u64 kSumBlock = 4096;

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// One sparse pass: out[n] = sum_j sign_j * in[n - e_j]. Returns false on overflow.
bool pentagonal_pass_at(const std::vector<i128>& in, u64 n,
                        const std::vector<std::pair<u64, int>>& pent, i128& out) {
    i128 s = 0;
    for (const auto& [e, sign] : pent) {
        if (e > n) break;
        const i128 v = in[n - e];
        const bool bad = sign > 0 ? __builtin_add_overflow(s, v, &s) : __builtin_sub_overflow(s, v, &s);
        if (bad) return false;
    }
    out = s;
    return true;
}

void check_shapes(const arith::CoefficientTable& a, const arith::CoefficientTable& b) {
    if (a.limit() != b.limit())
        throw ShapeError("Dirichlet convolution of tables with limits " + std::to_string(a.limit()) +
                         " and " + std::to_string(b.limit()));
}

void convolve_block(const arith::CoefficientTable& a, const arith::CoefficientTable& b,
                    arith::CoefficientTable& out, u64 lo, u64 hi) {
    for (u64 d = 1; d <= hi; ++d) {
        if (a[d] == 0) continue;
        const u64 first = ((lo + d - 1) / d) * d;
        for (u64 m = first; m <= hi; m += d)
            mpz_addmul(out[m].get_mpz_t(), a[d].get_mpz_t(), b[m / d].get_mpz_t());
    }
}

double neumaier(u64 first, u64 last, const std::function<double(u64)>& term) {
    double sum = 0.0, comp = 0.0;
    for (u64 n = first; n <= last; ++n) {
        const double v = term(n);
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

void mark_window(std::span<const u64> elements, u64 lo, u64 hi, std::vector<unsigned char>& dead) {
    // dead[i] refers to n = lo + 1 + i
    for (u64 b : elements) {
        if (b > hi) break;
        u64 m = ((lo / b) + 1) * b;
        for (; m <= hi; m += b) dead[m - lo - 1] = 1;
    }
}

u64 count_window(std::span<const u64> elements, u64 lo, u64 hi, u64 q, u64 a,
                 std::vector<u64>* members) {
    if (hi <= lo) return 0;
    std::vector<unsigned char> dead(hi - lo, 0);
    mark_window(elements, lo, hi, dead);
    const u64 r = a % q;
    u64 count = 0;
    u64 n = lo + 1;
    const u64 shift = (r + q - n % q) % q;
    for (n += shift; n <= hi; n += q) {
        if (dead[n - lo - 1]) continue;
        ++count;
        if (members) members->push_back(n);
    }
    return count;
}

std::vector<u64> sorted_unique(std::span<const u64> v) {
    std::vector<u64> out(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<std::pair<u64, int>> pentagonal_terms(u64 terms) {
    std::vector<std::pair<u64, int>> out;
    out.emplace_back(0, 1);
    for (i64 k = 1;; ++k) {
        const u64 e1 = static_cast<u64>(k * (3 * k - 1) / 2);
        const u64 e2 = static_cast<u64>(k * (3 * k + 1) / 2);
        if (e1 >= terms) break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        out.emplace_back(e1, sign);
        if (e2 < terms) out.emplace_back(e2, sign);
    }
    return out;
}

void set_thread_count(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace serial {

std::vector<i128> eta_power_series(u64 terms, unsigned exponent) {
    const auto pent = pentagonal_terms(terms);
    std::vector<i128> cur(terms, 0), next(terms, 0);
    if (terms == 0) return cur;
    cur[0] = 1;
    for (unsigned pass = 0; pass < exponent; ++pass) {
        for (u64 n = 0; n < terms; ++n)
            if (!pentagonal_pass_at(cur, n, pent, next[n]))
                throw CapacityError("eta power series coefficient " + std::to_string(n) +
                                    " exceeds 128-bit range");
        cur.swap(next);
    }
    return cur;
}

arith::CoefficientTable dirichlet_convolve(const arith::CoefficientTable& a,
                                           const arith::CoefficientTable& b) {
    check_shapes(a, b);
    arith::CoefficientTable out(a.label() + "*" + b.label(), a.limit());
    convolve_block(a, b, out, 1, a.limit());
    out.set_multiplicative(a.multiplicative() && b.multiplicative());
    return out;
}

u64 squarefree_smooth_count(const arith::FactorSieve& sieve, u64 x, u64 y,
                            std::span<const u64> excluded) {
    if (x == 0) return 0;
    if (x > sieve.limit() && x > 1) throw ShapeError("sieve shorter than count range");
    const auto ex = sorted_unique(excluded);
    u64 count = 1;  // n = 1
    for (u64 n = 2; n <= x; ++n) {
        bool ok = true;
        for (const auto& [p, e] : sieve.factorize(n)) {
            if (e > 1 || p > y || std::binary_search(ex.begin(), ex.end(), p)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

u64 bfree_count(std::span<const u64> elements, u64 lo, u64 hi, u64 q, u64 a,
                std::vector<u64>* members) {
    const auto el = sorted_unique(elements);
    return count_window(el, lo, hi, q, a, members);
}

double block_sum(u64 first, u64 last, const std::function<double(u64)>& term) {
    if (last < first) return 0.0;
    const u64 blocks = (last - first) / kSumBlock + 1;
    double total = 0.0;
    for (u64 i = 0; i < blocks; ++i) {
        const u64 lo = first + i * kSumBlock;
        const u64 hi = std::min(last, lo + kSumBlock - 1);
        total += neumaier(lo, hi, term);
    }
    return total;
}

}  // namespace serial

namespace parallel {

std::vector<i128> eta_power_series(u64 terms, unsigned exponent) {
    const auto pent = pentagonal_terms(terms);
    std::vector<i128> cur(terms, 0), next(terms, 0);
    if (terms == 0) return cur;
    cur[0] = 1;
    const i64 nterms = static_cast<i64>(terms);
    for (unsigned pass = 0; pass < exponent; ++pass) {
        std::atomic<i64> overflow_at{-1};
#pragma omp parallel for schedule(static)
        for (i64 n = 0; n < nterms; ++n) {
            if (!pentagonal_pass_at(cur, static_cast<u64>(n), pent, next[n])) overflow_at = n;
        }
        if (overflow_at >= 0)
            throw CapacityError("eta power series coefficient " + std::to_string(overflow_at.load()) +
                                " exceeds 128-bit range");
        cur.swap(next);
    }
    return cur;
}

arith::CoefficientTable dirichlet_convolve(const arith::CoefficientTable& a,
                                           const arith::CoefficientTable& b) {
    check_shapes(a, b);
    const u64 limit = a.limit();
    arith::CoefficientTable out(a.label() + "*" + b.label(), limit);
    const i64 blocks = std::max<i64>(1, std::min<i64>(4 * omp_get_max_threads(),
                                                      static_cast<i64>(limit / 4096) + 1));
    const u64 width = (limit + blocks - 1) / blocks;
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 i = 0; i < blocks; ++i) {
        const u64 lo = 1 + static_cast<u64>(i) * width;
        const u64 hi = std::min(limit, lo + width - 1);
        if (lo <= hi) convolve_block(a, b, out, lo, hi);
    }
    out.set_multiplicative(a.multiplicative() && b.multiplicative());
    return out;
}

u64 squarefree_smooth_count(u64 x, u64 y, std::span<const u64> excluded) {
    if (x == 0) return 0;
    const auto ex = sorted_unique(excluded);
    const u64 root = isqrt(x);
    std::vector<u64> small;
    if (root >= 2) {
        arith::FactorSieve sieve(root);
        small.assign(sieve.primes().begin(), sieve.primes().end());
    }
    const i64 blocks = static_cast<i64>((x + kSieveBlock - 1) / kSieveBlock);
    u64 total = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (i64 bi = 0; bi < blocks; ++bi) {
        const u64 lo = 1 + static_cast<u64>(bi) * kSieveBlock;
        const u64 hi = std::min(x, lo + kSieveBlock - 1);
        const u64 len = hi - lo + 1;
        std::vector<u64> rem(len);
        std::vector<unsigned char> good(len, 1);
        for (u64 i = 0; i < len; ++i) rem[i] = lo + i;
        for (u64 p : small) {
            const bool banned = p > y || std::binary_search(ex.begin(), ex.end(), p);
            const u64 p2 = p * p;
            for (u64 m = ((lo + p - 1) / p) * p; m <= hi; m += p) {
                const u64 i = m - lo;
                if (!good[i]) continue;
                if (banned || m % p2 == 0) {
                    good[i] = 0;
                    continue;
                }
                rem[i] /= p;
            }
        }
        u64 count = 0;
        for (u64 i = 0; i < len; ++i) {
            if (!good[i]) continue;
            const u64 r = rem[i];
            if (r > 1 && (r > y || std::binary_search(ex.begin(), ex.end(), r))) continue;
            ++count;
        }
        total += count;
    }
    return total;
}

u64 bfree_count(std::span<const u64> elements, u64 lo, u64 hi, u64 q, u64 a,
                std::vector<u64>* members) {
    if (hi <= lo) return 0;
    const auto el = sorted_unique(elements);
    const i64 blocks = static_cast<i64>((hi - lo + kSieveBlock - 1) / kSieveBlock);
    std::vector<u64> counts(blocks, 0);
    std::vector<std::vector<u64>> lists(members ? blocks : 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 bi = 0; bi < blocks; ++bi) {
        const u64 blo = lo + static_cast<u64>(bi) * kSieveBlock;
        const u64 bhi = std::min(hi, blo + kSieveBlock);
        counts[bi] = count_window(el, blo, bhi, q, a, members ? &lists[bi] : nullptr);
    }
    u64 total = 0;
    for (i64 bi = 0; bi < blocks; ++bi) {
        total += counts[bi];
        if (members) members->insert(members->end(), lists[bi].begin(), lists[bi].end());
    }
    return total;
}

double block_sum(u64 first, u64 last, const std::function<double(u64)>& term) {
    if (last < first) return 0.0;
    const i64 blocks = static_cast<i64>((last - first) / kSumBlock + 1);
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
    for (i64 i = 0; i < blocks; ++i) {
        const u64 lo = first + static_cast<u64>(i) * kSumBlock;
        const u64 hi = std::min(last, lo + kSumBlock - 1);
        partial[i] = neumaier(lo, hi, term);
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace parallel

}  // namespace halfsign::kernels
