#ifndef HALFSIGN_BFREE_HPP
#define HALFSIGN_BFREE_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "halfsign/shimura.hpp"

namespace halfsign::bfree {

inline constexpr u64 kMaxWindowEnd = 1'000'000'000;
inline constexpr u64 kUnbounded = std::numeric_limits<u64>::max();

enum class Rule { Explicit, SquaresOfPrimes, FromForm };
std::string to_string(Rule rule);

/// Finite truncation of an Erdos set. `horizon` is the largest n for which
/// the truncation holds every element <= n, so windows ending at or below it
/// are sieved exactly.
struct BFreeSet {
    std::vector<u64> elements;  // ascending
    Rule rule = Rule::Explicit;
    u64 horizon = kUnbounded;

    static BFreeSet explicit_set(std::vector<u64> elements);
    /// {p^2 : p prime, p^2 <= horizon}.
    static BFreeSet squares_of_primes(u64 horizon);
    bool is_free(u64 n) const;
};

struct Certificate {
    u64 size = 0;
    u64 pairs = 0;  // coprime pairs implied by the factor check
    double reciprocal_sum = 0.0;
    std::optional<double> tail_bound;  // bound on the reciprocals beyond the horizon
};

/// Throws InvalidSetError naming (b_i, b_j) on a shared factor, or (b_1, b_1)
/// when b_1 <= 1.
Certificate validate_bset(const BFreeSet& set);

struct WindowCount {
    u64 x = 0;
    u64 y = 0;
    u64 q = 1;
    u64 a = 0;
    u64 count = 0;
    double density = 0.0;    // count / y, or count q / y for progressions
    double benchmark = 0.0;  // x^(7/17) for intervals, x^(17/38) for progressions
    std::vector<u64> members;
};

/// B-free n in (x, x + y].
WindowCount sieve_interval(const BFreeSet& set, u64 x, u64 y, bool keep_members = false);
/// B-free n = a mod q in (x, x + y]; needs 1 <= a <= q and ((a, q), b) = 1 for all b.
WindowCount sieve_progression(const BFreeSet& set, u64 x, u64 y, u64 a, u64 q,
                              bool keep_members = false);

struct FormBSet {
    BFreeSet set;
    u64 prime_bound = 0;
    std::vector<u64> vanishing_primes;  // p <= prime_bound with A(p) = 0
    u64 guarantee_checked = 0;          // B-free n <= prime_bound examined
    std::optional<u64> guarantee_violation;  // first B-free n with A(n) = 0
};

/// P_f = {p <= P : A(p) = 0}, elements P_f and p^2 for the other primes p <= P;
/// the horizon is P.
FormBSet build_form_bset(const shimura::HalfIntegralTable& table, u64 prime_bound);

struct ReciprocalSum {
    u64 prime_bound = 0;
    u64 count = 0;
    double sum = 0.0;
    double envelope = 0.0;  // P / (log P)^(5/4)
};

ReciprocalSum vanishing_prime_reciprocal_sum(const FormBSet& set);

}  // namespace halfsign::bfree

#endif
