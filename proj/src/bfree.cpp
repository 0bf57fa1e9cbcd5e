#include "halfsign/bfree.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "halfsign/kernels.hpp"

namespace halfsign::bfree {

std::string to_string(Rule rule) {
    switch (rule) {
        case Rule::Explicit: return "explicit";
        case Rule::SquaresOfPrimes: return "squares";
        case Rule::FromForm: return "form";
    }
    return "unknown";
}

BFreeSet BFreeSet::explicit_set(std::vector<u64> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return {std::move(elements), Rule::Explicit, kUnbounded};
}

BFreeSet BFreeSet::squares_of_primes(u64 horizon) {
    BFreeSet s;
    s.rule = Rule::SquaresOfPrimes;
    s.horizon = horizon;
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(horizon))) + 1;
    arith::FactorSieve sieve(std::max<u64>(root, 2));
    for (u64 p : sieve.primes())
        if (p * p <= horizon) s.elements.push_back(p * p);
    return s;
}

bool BFreeSet::is_free(u64 n) const {
    if (n > horizon) throw CoverageError("membership query beyond the set horizon " + std::to_string(horizon));
    for (u64 b : elements) {
        if (b > n) break;
        if (n % b == 0) return false;
    }
    return true;
}

Certificate validate_bset(const BFreeSet& set) {
    Certificate cert;
    cert.size = set.elements.size();
    if (set.elements.empty()) return cert;
    if (!std::is_sorted(set.elements.begin(), set.elements.end()))
        throw InvalidSetError("B elements must be sorted", set.elements.front(), set.elements.front());
    const u64 first = set.elements.front();
    if (first <= 1) throw InvalidSetError("B elements must exceed 1", first, first);
    for (std::size_t i = 1; i < set.elements.size(); ++i)
        if (set.elements[i] == set.elements[i - 1])
            throw InvalidSetError("B elements must be distinct", set.elements[i], set.elements[i]);

    const u64 largest = set.elements.back();
    if (largest > 1'000'000'000'000ULL) throw CapacityError("validate_bset supports elements <= 1e12");
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(largest))) + 1;
    arith::FactorSieve sieve(std::max<u64>(root, 2));
    std::map<u64, u64> owner;  // prime -> element holding it
    for (u64 b : set.elements) {
        u64 m = b;
        auto claim = [&](u64 p) {
            auto [it, fresh] = owner.emplace(p, b);
            if (!fresh) throw InvalidSetError("B elements are not pairwise coprime", it->second, b);
        };
        for (u64 p : sieve.primes()) {
            if (p * p > m) break;
            if (m % p) continue;
            while (m % p == 0) m /= p;
            claim(p);
        }
        if (m > 1) claim(m);
        cert.reciprocal_sum += 1.0 / static_cast<double>(b);
    }
    cert.pairs = cert.size * (cert.size - 1) / 2;
    if (set.rule == Rule::SquaresOfPrimes || set.rule == Rule::Explicit) {
        if (set.horizon == kUnbounded)
            cert.tail_bound = 0.0;
        else {
            // sum_{p > r} 1/p^2 < sum_{n > r} 1/n^2 < 1/r, r = floor(sqrt(horizon))
            const double r = std::floor(std::sqrt(static_cast<double>(set.horizon)));
            cert.tail_bound = 1.0 / std::max(r, 1.0);
        }
    }
    return cert;
}

namespace {

void check_window(const BFreeSet& set, u64 x, u64 y) {
    if (y == 0) throw DomainError("window length must be positive");
    if (x > kMaxWindowEnd || y > kMaxWindowEnd - x)
        throw CapacityError("window end x + y exceeds 1e9");
    if (x + y > set.horizon)
        throw CoverageError("window (" + std::to_string(x) + ", " + std::to_string(x + y) +
                            "] extends past the B truncation horizon " + std::to_string(set.horizon));
}

std::vector<u64> relevant(const BFreeSet& set, u64 end) {
    std::vector<u64> out;
    for (u64 b : set.elements) {
        if (b > end) break;
        out.push_back(b);
    }
    return out;
}

}  // namespace

WindowCount sieve_interval(const BFreeSet& set, u64 x, u64 y, bool keep_members) {
    check_window(set, x, y);
    WindowCount r;
    r.x = x;
    r.y = y;
    const auto el = relevant(set, x + y);
    r.count = kernels::parallel::bfree_count(el, x, x + y, 1, 0, keep_members ? &r.members : nullptr);
    r.density = static_cast<double>(r.count) / static_cast<double>(y);
    r.benchmark = std::pow(static_cast<double>(x), 7.0 / 17.0);
    return r;
}

WindowCount sieve_progression(const BFreeSet& set, u64 x, u64 y, u64 a, u64 q, bool keep_members) {
    if (q < 1 || a < 1 || a > q)
        throw PreconditionError("progression needs 1 <= a <= q, got a = " + std::to_string(a) +
                                ", q = " + std::to_string(q));
    const u64 d = arith::gcd(a, q);
    for (u64 b : set.elements)
        if (arith::gcd(d, b) != 1)
            throw PreconditionError("gcd((a, q), b) = " + std::to_string(arith::gcd(d, b)) + " for b = " +
                                    std::to_string(b) + "; the progression condition fails");
    check_window(set, x, y);
    WindowCount r;
    r.x = x;
    r.y = y;
    r.q = q;
    r.a = a;
    const auto el = relevant(set, x + y);
    r.count = kernels::parallel::bfree_count(el, x, x + y, q, a, keep_members ? &r.members : nullptr);
    r.density = static_cast<double>(r.count) * static_cast<double>(q) / static_cast<double>(y);
    r.benchmark = std::pow(static_cast<double>(x), 17.0 / 38.0);
    return r;
}

FormBSet build_form_bset(const shimura::HalfIntegralTable& table, u64 prime_bound) {
    if (prime_bound > table.limit())
        throw ShapeError("build_form_bset needs A up to " + std::to_string(prime_bound) + ", table has " +
                         std::to_string(table.limit()));
    FormBSet f;
    f.prime_bound = prime_bound;
    f.set.rule = Rule::FromForm;
    f.set.horizon = prime_bound;
    const auto& sieve = table.sieve();
    for (u64 p : sieve.primes()) {
        if (p > prime_bound) break;
        if (table.sign(p) == 0) {
            f.vanishing_primes.push_back(p);
            f.set.elements.push_back(p);
        } else {
            f.set.elements.push_back(p * p);
        }
    }
    std::sort(f.set.elements.begin(), f.set.elements.end());
    std::vector<u64> members;
    kernels::parallel::bfree_count(relevant(f.set, prime_bound), 0, prime_bound, 1, 0, &members);
    f.guarantee_checked = members.size();
    for (u64 n : members)
        if (table.sign(n) == 0) {
            f.guarantee_violation = n;
            break;
        }
    return f;
}

ReciprocalSum vanishing_prime_reciprocal_sum(const FormBSet& set) {
    ReciprocalSum r;
    r.prime_bound = set.prime_bound;
    r.count = set.vanishing_primes.size();
    for (u64 p : set.vanishing_primes) r.sum += 1.0 / static_cast<double>(p);
    if (set.prime_bound >= 2) {
        const double P = static_cast<double>(set.prime_bound);
        r.envelope = P / std::pow(std::log(P), 1.25);
    }
    return r;
}

}  // namespace halfsign::bfree
