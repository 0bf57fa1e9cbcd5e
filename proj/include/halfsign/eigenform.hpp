#ifndef HALFSIGN_EIGENFORM_HPP
#define HALFSIGN_EIGENFORM_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "halfsign/arithfn.hpp"

namespace halfsign::eigen {

using arith::Integer;

inline constexpr u64 kMaxDeltaLimit = 1'000'000;

enum class BackendKind { BuiltinDelta, Synthetic };

/// Integer coefficient c(p) of the integral-weight form at a prime p.
using PrimeCoefficientRule = std::function<Integer(u64 p)>;

/// Source of the integral-weight eigenvalues c(n): the built-in discriminant
/// form (Ramanujan tau, weight 12, level 1) or a synthetic sequence defined by
/// its values at primes and extended by the Hecke recurrence.
class LiftBackend {
public:
    static LiftBackend builtin_delta();
    /// `admissible` asks table construction to enforce c(p)^2 <= 4 p^(weight-1).
    static LiftBackend synthetic(unsigned weight, u64 level, PrimeCoefficientRule rule,
                                 std::string description = "synthetic", bool admissible = true);

    BackendKind kind() const { return kind_; }
    unsigned weight() const { return weight_; }
    u64 level() const { return level_; }
    bool admissible() const { return admissible_; }
    const std::string& description() const { return description_; }
    bool divides_level(u64 p) const { return level_ % p == 0; }
    Integer prime_coefficient(u64 p) const;

private:
    LiftBackend() = default;

    BackendKind kind_ = BackendKind::BuiltinDelta;
    unsigned weight_ = 12;
    u64 level_ = 1;
    bool admissible_ = true;
    std::string description_ = "delta";
    PrimeCoefficientRule rule_;
};

/// Synthetic backend from real eigenvalues lambda(p). Only lambda(p) = 0 gives an
/// integer c(p) (the weight is even, so p^((2k-1)/2) is irrational); any other
/// value raises DomainError when the table is built.
LiftBackend synthetic_from_lambda(unsigned weight, u64 level, std::function<double(u64)> lambda);

/// c(p) = floor(2 p^((weight-1)/2)): eigenvalues just under the Deligne bound,
/// so every c(p^nu) and every half-integral coefficient stays positive.
LiftBackend synthetic_near_bound(unsigned weight, u64 level = 1);

struct EigenvalueTable {
    LiftBackend backend;
    arith::CoefficientTable c;
    std::shared_ptr<const arith::FactorSieve> sieve;

    u64 limit() const { return c.limit(); }
    unsigned weight() const { return backend.weight(); }
    /// lambda(n) = c(n) n^{-(weight-1)/2}.
    double normalized(u64 n) const;
};

std::shared_ptr<const arith::FactorSieve> shared_sieve(u64 limit);

/// tau(n), n <= limit, from q prod (1 - q^n)^24.
EigenvalueTable delta_coefficients(u64 limit);
EigenvalueTable synthetic_coefficients(const LiftBackend& backend, u64 limit);
EigenvalueTable build_eigenvalues(const LiftBackend& backend, u64 limit);

/// c(p^nu) from c(p) by c(p^{j+1}) = c(p) c(p^j) - p^{w-1} c(p^{j-1}),
/// or c(p)^nu when p divides the level.
Integer prime_power_coefficient(const Integer& cp, u64 p, unsigned nu, unsigned weight,
                                bool divides_level);

/// Checks the three-term recurrence at every prime power <= limit (p not
/// dividing the level). Returns the number of identities checked; throws
/// IntegrityError naming (p, nu) on the first violation.
u64 verify_hecke_recurrence(const EigenvalueTable& table);

struct SatoTateAngle {
    u64 p;
    double theta;
};

std::vector<SatoTateAngle> sato_tate_angles(const EigenvalueTable& table, u64 prime_bound);

/// True iff c(p)^2 <= 4 p^(weight-1) for every prime p <= prime_bound.
bool deligne_check(const EigenvalueTable& table, u64 prime_bound);

}  // namespace halfsign::eigen

#endif
