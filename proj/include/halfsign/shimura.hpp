#ifndef HALFSIGN_SHIMURA_HPP
#define HALFSIGN_SHIMURA_HPP

#include <optional>
#include <vector>

#include "halfsign/eigenform.hpp"

namespace halfsign {
struct ModulusContext;
}

namespace halfsign::shimura {

using arith::Integer;

/// Real character mod N: d -> [gcd(d, N) = 1] * (D / d). D = 1 is the
/// principal character.
struct RealCharacter {
    u64 modulus = 4;
    i64 discriminant = 1;

    static RealCharacter principal(u64 modulus) { return {modulus, 1}; }
    int operator()(u64 d) const;
    bool is_principal() const { return discriminant == 1; }
};

/// One half-integral-weight scenario: weight k + 1/2, level N (4 | N), real
/// character chi mod N, square-free t, and the integral-weight lift.
struct FormInstance {
    unsigned k = 6;
    u64 N = 4;
    RealCharacter chi = RealCharacter::principal(4);
    u64 t = 1;
    eigen::LiftBackend backend = eigen::LiftBackend::builtin_delta();

    /// (k, N, chi, t) = (6, 4, principal, 1) lifted to the discriminant form.
    static FormInstance default_delta() { return {}; }
    void validate() const;
};

/// chi(d) * ((-1)^k t / d), with the Kronecker extension at every d.
int twist_character(const FormInstance& instance, u64 d);

/// A(n) = a(t n^2) / a(t), exact integers for n <= limit, together with the
/// integral-weight table c(n) it was derived from.
class HalfIntegralTable {
public:
    HalfIntegralTable(FormInstance instance, eigen::EigenvalueTable lift, arith::CoefficientTable A);

    const FormInstance& instance() const { return instance_; }
    const eigen::EigenvalueTable& lift() const { return lift_; }
    const arith::CoefficientTable& A() const { return A_; }
    const arith::CoefficientTable& c() const { return lift_.c; }
    const arith::FactorSieve& sieve() const { return *lift_.sieve; }
    u64 limit() const { return A_.limit(); }

    const Integer& operator[](u64 n) const { return A_.at(n); }
    int sign(u64 n) const { return sgn(A_.at(n)); }
    /// A*(n) = A(n) / n^(k - 1/2) as a double; the sign is exact.
    double normalized(u64 n) const;
    /// A(p^nu) for any nu, for primes p <= limit, from c(p) and the Hecke recurrence.
    Integer prime_power_value(u64 p, unsigned nu) const;

private:
    FormInstance instance_;
    eigen::EigenvalueTable lift_;
    arith::CoefficientTable A_;
};

/// A(n) = sum_{d | n} mu(d) chi_{t,N}(d) d^(k-1) c(n/d).
HalfIntegralTable halfintegral_coefficients(const FormInstance& instance,
                                            const eigen::EigenvalueTable& lift, u64 limit);
HalfIntegralTable halfintegral_coefficients(const FormInstance& instance, u64 limit);

/// Checks c(n) = sum_{d | n} chi_{t,N}(d) d^(k-1) A(n/d) for all n <= limit.
u64 verify_shimura_forward(const HalfIntegralTable& table);

struct SignSummary {
    u64 x = 0;
    u64 nstar = 0;
    u64 nplus = 0;
    u64 nminus = 0;
    u64 nzero = 0;
    std::vector<signed char> eps;  // eps[n] for n = 1..x, eps[0] unused
};

SignSummary sign_sequence(const HalfIntegralTable& table);
/// Counts only, for n <= x.
SignSummary sign_counts(const HalfIntegralTable& table, u64 x);

struct FirstNegative {
    std::optional<u64> n_f;  // empty: not found up to search_bound
    u64 search_bound = 0;
    double benchmark = 0.0;  // (k^2 N)^(9/20)
};

/// Least n <= limit with A(n) < 0 and gcd(n, N/2) = 1.
FirstNegative first_negative_index(const HalfIntegralTable& table);

struct GapReport {
    u64 max_gap = 0;
    u64 argmax = 0;         // n achieving the maximum i_f(n); 0 when max_gap = 0
    bool truncated = false; // the maximal run reaches the end of the table
    double benchmark = 0.0; // argmax^(7/17)
};

/// i_f(n) = max{j >= 1 : A(n + i) = 0 for 0 < i <= j} (0 if A(n + 1) != 0).
u64 gap_at(const HalfIntegralTable& table, u64 n);
GapReport vanishing_gaps(const HalfIntegralTable& table);

struct RhoInterval {
    double value = 0.0;  // truncated product
    double lower = 0.0;
    double upper = 0.0;
    u64 prime_bound = 0;
    unsigned exponent_bound = 0;
};

RhoInterval density_rho_f(const HalfIntegralTable& table, u64 prime_bound, unsigned exponent_bound);

struct BalanceRow {
    u64 x = 0;
    u64 nplus = 0;
    u64 nminus = 0;
    u64 nstar = 0;
    u64 nzero = 0;
    std::optional<double> balance;   // |N+ - N-| / N*, undefined when N* = 0
    std::optional<double> envelope;  // (log x)^(-1/4), undefined for x < 2
};

std::vector<BalanceRow> sign_balance_report(const HalfIntegralTable& table, const std::vector<u64>& grid);

struct HallTenenbaumConstant {
    double phi0;
    double K;
};

/// phi0 in (0, pi) with sin(phi) - phi cos(phi) = pi/2, and K = -cos(phi0).
HallTenenbaumConstant hall_tenenbaum_constant();

struct HallTenenbaumRow {
    u64 x = 0;
    double left = 0.0;  // |sum_{n<=x} eps(n)|
    double negative_prime_sum = 0.0;  // sum_{p<=x, eps(p)=-1} 2/p
    double right = 0.0;  // x exp(-K * negative_prime_sum)
    double ratio = 0.0;
};

std::vector<HallTenenbaumRow> hall_tenenbaum_report(const HalfIntegralTable& table,
                                                    const std::vector<u64>& grid);

struct NegativePrimeDensity {
    u64 x = 0;
    u64 primes = 0;
    u64 negative = 0;
    double fraction = 0.0;  // negative / primes
    double density = 0.0;   // negative * log(x) / x
};

NegativePrimeDensity negative_prime_density(const HalfIntegralTable& table, u64 x);

struct SerreCount {
    u64 x = 0;
    u64 count = 0;
    std::vector<u64> primes;  // p <= x with A(p) = 0
    double envelope = 0.0;    // x / (log x)^(5/4)
};

SerreCount serre_exceptional_count(const HalfIntegralTable& table, u64 x);

/// Local factors l(p^nu), nu = 0..V, in cleared form: L_nu = l(p^nu) D^nu with
/// D = p^((2k-1)/2). Then g(p) D = chi(p) p^(k-1), h(p) D = A(p), and
/// L_nu = -(L_{nu-1} (chi(p) p^(k-1) + A(p)) + L_{nu-2} chi(p) A(p) p^(k-1)).
struct EllFactors {
    u64 p = 0;
    unsigned max_nu = 0;
    std::vector<Integer> cleared;            // L_0..L_V
    std::vector<Integer> convolution;        // (g*h*l)(p^nu) D^nu, nu = 0..V
    std::vector<Integer> target;             // lambda(p^nu) mu(p^nu)^2 D^nu
    double local_constant = 0.0;             // |g(p)| + |h(p)| + |g(p) h(p)|
    std::vector<double> magnitude;           // |l(p^nu)|
    bool identity_holds = false;
    bool bound_holds = false;
};

/// Algebraic core; valid at every prime p <= limit.
EllFactors ell_prime_power_factors(const HalfIntegralTable& table, u64 p, unsigned max_nu);
/// Same, restricted to p not dividing N_k (DomainError otherwise).
EllFactors ell_local_factors(const ModulusContext& ctx, const HalfIntegralTable& table, u64 p,
                             unsigned max_nu);

}  // namespace halfsign::shimura

#endif
