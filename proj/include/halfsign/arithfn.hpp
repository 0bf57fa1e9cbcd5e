#ifndef HALFSIGN_ARITHFN_HPP
#define HALFSIGN_ARITHFN_HPP

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halfsign/errors.hpp"

namespace halfsign::arith {

using Integer = mpz_class;

inline constexpr u64 kMaxSieveLimit = 100'000'000;

struct PrimePower {
    u64 p;
    unsigned e;
};

/// Smallest-prime-factor table on [2, limit], built by a linear sieve.
class FactorSieve {
public:
    explicit FactorSieve(u64 limit);

    u64 limit() const { return limit_; }
    u32 spf(u64 n) const;
    bool is_prime(u64 n) const;
    std::vector<PrimePower> factorize(u64 n) const;
    /// Largest prime factor P(n), with P(1) = 1.
    u64 largest_prime_factor(u64 n) const;
    int mobius(u64 n) const;
    bool squarefree(u64 n) const { return mobius(n) != 0; }
    std::vector<u64> divisors(u64 n) const;
    const std::vector<u32>& primes() const { return primes_; }
    std::size_t prime_count(u64 x) const;

private:
    void check(u64 n) const;

    u64 limit_;
    std::vector<u32> spf_;
    std::vector<u32> primes_;
};

FactorSieve build_factor_sieve(u64 limit);

/// Exact integer values f(1..limit) of an arithmetic function.
class CoefficientTable {
public:
    CoefficientTable(std::string label, u64 limit);

    u64 limit() const { return limit_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }
    bool multiplicative() const { return multiplicative_; }
    void set_multiplicative(bool flag) { multiplicative_ = flag; }

    Integer& operator[](u64 n) { return values_[n]; }
    const Integer& operator[](u64 n) const { return values_[n]; }
    const Integer& at(u64 n) const;
    Integer& at(u64 n);

    /// Values for n = 1..limit.
    std::span<const Integer> values() const { return {values_.data() + 1, limit_}; }

    bool operator==(const CoefficientTable& other) const;

private:
    std::string label_;
    u64 limit_;
    bool multiplicative_ = false;
    std::vector<Integer> values_;  // index 0 unused
};

CoefficientTable make_table(std::string label, u64 limit, const std::function<Integer(u64)>& f);
CoefficientTable ones_table(u64 limit);
/// Identity of Dirichlet convolution: 1 at n = 1, 0 elsewhere.
CoefficientTable unit_table(u64 limit);
CoefficientTable mobius_table(const FactorSieve& sieve, u64 limit);
CoefficientTable power_table(u64 limit, unsigned exponent);

CoefficientTable dirichlet_convolve(const CoefficientTable& a, const CoefficientTable& b);
/// Returns a with c = a * 1.
CoefficientTable moebius_invert(const CoefficientTable& c);

int kronecker_symbol(i64 m, u64 d);

using PrimePowerValues = std::map<std::pair<u64, unsigned>, Integer>;
using PrimePowerFunction = std::function<std::optional<Integer>(u64 p, unsigned e)>;

CoefficientTable extend_multiplicative(const PrimePowerValues& values, u64 limit,
                                       std::string label = "multiplicative");
CoefficientTable extend_multiplicative(const PrimePowerFunction& values, u64 limit,
                                       std::string label = "multiplicative");

/// Checks f(mn) = f(m) f(n) for every coprime pair with mn <= limit.
/// Returns the number of pairs checked; throws IntegrityError at the first failure.
u64 verify_multiplicative(const CoefficientTable& table);

u64 gcd(u64 a, u64 b);
Integer ipow(u64 base, unsigned exponent);

/// v / exp(log_divisor) as a double, without overflowing on huge |v|.
/// The sign always matches the sign of v (zero only for v = 0).
double scaled_to_double(const Integer& v, double log_divisor);

}  // namespace halfsign::arith

#endif
