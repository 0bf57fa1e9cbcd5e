#include "halfsign/arithfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "halfsign/kernels.hpp"

namespace halfsign::arith {

FactorSieve::FactorSieve(u64 limit) : limit_(limit) {
    if (limit < 2 || limit > kMaxSieveLimit)
        throw CapacityError("factor sieve limit " + std::to_string(limit) +
                            " outside [2, " + std::to_string(kMaxSieveLimit) + "]");
    spf_.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<u32>(i);
            primes_.push_back(static_cast<u32>(i));
        }
        const u32 si = spf_[i];
        for (u32 p : primes_) {
            if (p > si || static_cast<u64>(p) * i > limit) break;
            spf_[static_cast<u64>(p) * i] = p;
        }
    }
}

void FactorSieve::check(u64 n) const {
    if (n < 1 || n > limit_)
        throw ShapeError("index " + std::to_string(n) + " outside factor sieve range [1, " +
                         std::to_string(limit_) + "]");
}

u32 FactorSieve::spf(u64 n) const {
    check(n);
    return spf_[n];
}

bool FactorSieve::is_prime(u64 n) const {
    if (n < 2) return false;
    check(n);
    return spf_[n] == n;
}

std::vector<PrimePower> FactorSieve::factorize(u64 n) const {
    check(n);
    std::vector<PrimePower> out;
    while (n > 1) {
        const u64 p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

u64 FactorSieve::largest_prime_factor(u64 n) const {
    check(n);
    u64 largest = 1;
    while (n > 1) {
        largest = spf_[n];
        n /= largest;
    }
    return largest;
}

int FactorSieve::mobius(u64 n) const {
    check(n);
    int mu = 1;
    while (n > 1) {
        const u64 p = spf_[n];
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return mu;
}

std::vector<u64> FactorSieve::divisors(u64 n) const {
    std::vector<u64> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = divs.size();
        u64 pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::size_t FactorSieve::prime_count(u64 x) const {
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

FactorSieve build_factor_sieve(u64 limit) { return FactorSieve(limit); }

CoefficientTable::CoefficientTable(std::string label, u64 limit)
    : label_(std::move(label)), limit_(limit) {
    if (limit < 1) throw ShapeError("coefficient table needs limit >= 1");
    values_.assign(limit + 1, Integer(0));
}

const Integer& CoefficientTable::at(u64 n) const {
    if (n < 1 || n > limit_)
        throw ShapeError("index " + std::to_string(n) + " outside table '" + label_ + "' [1, " +
                         std::to_string(limit_) + "]");
    return values_[n];
}

Integer& CoefficientTable::at(u64 n) {
    return const_cast<Integer&>(static_cast<const CoefficientTable&>(*this).at(n));
}

bool CoefficientTable::operator==(const CoefficientTable& other) const {
    return limit_ == other.limit_ && values_ == other.values_;
}

CoefficientTable make_table(std::string label, u64 limit, const std::function<Integer(u64)>& f) {
    CoefficientTable t(std::move(label), limit);
    for (u64 n = 1; n <= limit; ++n) t[n] = f(n);
    return t;
}

CoefficientTable ones_table(u64 limit) {
    auto t = make_table("one", limit, [](u64) { return Integer(1); });
    t.set_multiplicative(true);
    return t;
}

CoefficientTable unit_table(u64 limit) {
    auto t = make_table("unit", limit, [](u64 n) { return Integer(n == 1 ? 1 : 0); });
    t.set_multiplicative(true);
    return t;
}

CoefficientTable mobius_table(const FactorSieve& sieve, u64 limit) {
    if (limit > sieve.limit() && limit > 1) throw ShapeError("sieve shorter than mobius table");
    auto t = make_table("mobius", limit,
                        [&](u64 n) { return Integer(n == 1 ? 1 : sieve.mobius(n)); });
    t.set_multiplicative(true);
    return t;
}

CoefficientTable power_table(u64 limit, unsigned exponent) {
    auto t = make_table("power" + std::to_string(exponent), limit,
                        [&](u64 n) { return ipow(n, exponent); });
    t.set_multiplicative(true);
    return t;
}

CoefficientTable dirichlet_convolve(const CoefficientTable& a, const CoefficientTable& b) {
    return kernels::parallel::dirichlet_convolve(a, b);
}

CoefficientTable moebius_invert(const CoefficientTable& c) {
    const u64 limit = c.limit();
    CoefficientTable mu("mobius", limit);
    if (limit >= 2) {
        mu = mobius_table(FactorSieve(limit), limit);
    } else {
        mu[1] = 1;
    }
    auto out = dirichlet_convolve(mu, c);
    out.set_label(c.label() + "_inv");
    out.set_multiplicative(c.multiplicative());
    return out;
}

int kronecker_symbol(i64 m, u64 d) {
    if (d == 0) throw DomainError("Kronecker symbol needs d >= 1");
    int result = 1;
    if (d % 2 == 0) {
        if (m % 2 == 0) return 0;
        unsigned v = 0;
        while (d % 2 == 0) {
            d /= 2;
            ++v;
        }
        const i64 r = ((m % 8) + 8) % 8;
        if ((v % 2 == 1) && (r == 3 || r == 5)) result = -result;
    }
    // Jacobi symbol (m / d) for odd d.
    __int128 signed_d = static_cast<__int128>(d);
    u64 a = static_cast<u64>(((static_cast<__int128>(m) % signed_d) + signed_d) % signed_d);
    u64 n = d;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const u64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

CoefficientTable extend_impl(const std::function<const Integer&(u64, unsigned)>& value, u64 limit,
                             std::string label) {
    CoefficientTable t(std::move(label), limit);
    t[1] = 1;
    t.set_multiplicative(true);
    if (limit < 2) return t;
    FactorSieve sieve(limit);
    for (u64 n = 2; n <= limit; ++n) {
        const u64 p = sieve.spf(n);
        u64 m = n;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (m == 1)
            t[n] = value(p, e);
        else
            t[n] = t[n / m] * t[m];
    }
    return t;
}

}  // namespace

CoefficientTable extend_multiplicative(const PrimePowerValues& values, u64 limit,
                                       std::string label) {
    return extend_impl(
        [&](u64 p, unsigned e) -> const Integer& {
            auto it = values.find({p, e});
            if (it == values.end())
                throw DomainError("missing prime-power value at (p, nu) = (" + std::to_string(p) +
                                  ", " + std::to_string(e) + ")");
            return it->second;
        },
        limit, std::move(label));
}

CoefficientTable extend_multiplicative(const PrimePowerFunction& values, u64 limit,
                                       std::string label) {
    Integer scratch;
    return extend_impl(
        [&](u64 p, unsigned e) -> const Integer& {
            auto v = values(p, e);
            if (!v)
                throw DomainError("missing prime-power value at (p, nu) = (" + std::to_string(p) +
                                  ", " + std::to_string(e) + ")");
            scratch = *v;
            return scratch;
        },
        limit, std::move(label));
}

u64 verify_multiplicative(const CoefficientTable& table) {
    const u64 limit = table.limit();
    if (table[1] != 1) throw IntegrityError("table '" + table.label() + "' has f(1) != 1", 1);
    u64 checked = 0;
    u64 bad_m = 0, bad_n = 0;
    Integer prod;
    for (u64 m = 2; m * (m + 1) <= limit; ++m) {
        for (u64 n = m + 1; m * n <= limit; ++n) {
            if (gcd(m, n) != 1) continue;
            prod = table[m] * table[n];
            if (prod != table[m * n] && (bad_m == 0 || m * n < bad_m * bad_n)) {
                bad_m = m;
                bad_n = n;
            }
            ++checked;
        }
    }
    if (bad_m != 0)
        throw IntegrityError("multiplicativity fails for '" + table.label() + "' at " + std::to_string(bad_m) +
                                 " * " + std::to_string(bad_n),
                             bad_m * bad_n);
    return checked;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

Integer ipow(u64 base, unsigned exponent) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
    return out;
}

}  // namespace halfsign::arith

namespace halfsign::arith {

double scaled_to_double(const Integer& v, double log_divisor) {
    const int sign = sgn(v);
    if (sign == 0) return 0.0;
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    const double magnitude =
        std::exp(std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0) - log_divisor);
    if (magnitude == 0.0 || !std::isfinite(magnitude))
        throw NumericalError("scaled value out of double range");
    return sign > 0 ? magnitude : -magnitude;
}

}  // namespace halfsign::arith
