#include "halfsign/shimura.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "halfsign/modulus.hpp"

namespace halfsign::shimura {

int RealCharacter::operator()(u64 d) const {
    if (arith::gcd(d, modulus) != 1) return 0;
    return arith::kronecker_symbol(discriminant, d);
}

void FormInstance::validate() const {
    if (k < 1) throw DomainError("k must be >= 1");
    if (N < 4 || N % 4 != 0) throw DomainError("N must be a positive multiple of 4, got " + std::to_string(N));
    if (chi.modulus != N) throw DomainError("character modulus differs from N");
    if (chi.discriminant == 0) throw DomainError("character discriminant must be nonzero");
    for (u64 d = 1; d <= N; ++d)
        if (chi(d) != chi(d + N))
            throw DomainError("character (" + std::to_string(chi.discriminant) + "/.) is not periodic mod " +
                              std::to_string(N));
    if (t < 1) throw DomainError("t must be >= 1");
    for (u64 p = 2; p * p <= t; ++p)
        if (t % (p * p) == 0) throw DomainError("t = " + std::to_string(t) + " is not square-free");
    if (backend.weight() != 2 * k)
        throw DomainError("lift weight " + std::to_string(backend.weight()) + " differs from 2k = " +
                          std::to_string(2 * k));
}

int twist_character(const FormInstance& instance, u64 d) {
    const int chi = instance.chi(d);
    if (chi == 0) return 0;
    const i64 m = (instance.k % 2 == 0 ? 1 : -1) * static_cast<i64>(instance.t);
    return chi * arith::kronecker_symbol(m, d);
}

HalfIntegralTable::HalfIntegralTable(FormInstance instance, eigen::EigenvalueTable lift,
                                     arith::CoefficientTable A)
    : instance_(std::move(instance)), lift_(std::move(lift)), A_(std::move(A)) {}

double HalfIntegralTable::normalized(u64 n) const {
    return arith::scaled_to_double(A_.at(n), (instance_.k - 0.5) * std::log(static_cast<double>(n)));
}

Integer HalfIntegralTable::prime_power_value(u64 p, unsigned nu) const {
    if (nu == 0) return 1;
    if (!sieve().is_prime(p) || p > lift_.limit())
        throw DomainError(std::to_string(p) + " is not a prime within the table");
    const auto& backend = lift_.backend;
    const Integer& cp = lift_.c[p];
    const bool at_level = backend.divides_level(p);
    const Integer top = eigen::prime_power_coefficient(cp, p, nu, backend.weight(), at_level);
    const Integer below = eigen::prime_power_coefficient(cp, p, nu - 1, backend.weight(), at_level);
    return top - twist_character(instance_, p) * arith::ipow(p, instance_.k - 1) * below;
}

namespace {

arith::CoefficientTable truncate(const arith::CoefficientTable& t, u64 limit) {
    arith::CoefficientTable out(t.label(), limit);
    for (u64 n = 1; n <= limit; ++n) out[n] = t[n];
    out.set_multiplicative(t.multiplicative());
    return out;
}

// d -> sign * chi_{t,N}(d) d^(k-1), with sign = mu(d) when `moebius`.
arith::CoefficientTable twisted_powers(const FormInstance& instance, const arith::FactorSieve& sieve,
                                       u64 limit, bool moebius) {
    return arith::make_table(moebius ? "mu_chi_pow" : "chi_pow", limit, [&](u64 d) -> Integer {
        const int mu = (!moebius || d == 1) ? 1 : sieve.mobius(d);
        const int chi = twist_character(instance, d);
        if (mu == 0 || chi == 0) return Integer(0);
        return Integer(mu * chi) * arith::ipow(d, instance.k - 1);
    });
}

void require_x(const HalfIntegralTable& table, u64 x) {
    if (x > table.limit())
        throw ShapeError("x = " + std::to_string(x) + " exceeds table limit " + std::to_string(table.limit()));
}

}  // namespace

HalfIntegralTable halfintegral_coefficients(const FormInstance& instance, const eigen::EigenvalueTable& lift,
                                            u64 limit) {
    instance.validate();
    if (lift.limit() < limit)
        throw ShapeError("lift table limit " + std::to_string(lift.limit()) + " shorter than requested " +
                         std::to_string(limit));
    if (lift.weight() != 2 * instance.k) throw DomainError("lift weight differs from 2k");
    const auto c = truncate(lift.c, limit);
    auto A = arith::dirichlet_convolve(twisted_powers(instance, *lift.sieve, limit, true), c);
    A.set_label("A");
    A.set_multiplicative(true);
    return HalfIntegralTable(instance, lift, std::move(A));
}

HalfIntegralTable halfintegral_coefficients(const FormInstance& instance, u64 limit) {
    instance.validate();
    return halfintegral_coefficients(instance, eigen::build_eigenvalues(instance.backend, limit), limit);
}

u64 verify_shimura_forward(const HalfIntegralTable& table) {
    const u64 limit = table.limit();
    const auto forward =
        arith::dirichlet_convolve(twisted_powers(table.instance(), table.sieve(), limit, false), table.A());
    for (u64 n = 1; n <= limit; ++n)
        if (forward[n] != table.c()[n])
            throw IntegrityError("Shimura divisor sum fails at n = " + std::to_string(n), n);
    return limit;
}

SignSummary sign_counts(const HalfIntegralTable& table, u64 x) {
    require_x(table, x);
    SignSummary s;
    s.x = x;
    for (u64 n = 1; n <= x; ++n) {
        const int e = table.sign(n);
        if (e > 0)
            ++s.nplus;
        else if (e < 0)
            ++s.nminus;
        else
            ++s.nzero;
    }
    s.nstar = s.nplus + s.nminus;
    return s;
}

SignSummary sign_sequence(const HalfIntegralTable& table) {
    SignSummary s = sign_counts(table, table.limit());
    s.eps.assign(table.limit() + 1, 0);
    for (u64 n = 1; n <= table.limit(); ++n) s.eps[n] = static_cast<signed char>(table.sign(n));
    return s;
}

FirstNegative first_negative_index(const HalfIntegralTable& table) {
    const auto& inst = table.instance();
    FirstNegative out;
    out.search_bound = table.limit();
    out.benchmark = std::pow(static_cast<double>(inst.k) * inst.k * static_cast<double>(inst.N), 9.0 / 20.0);
    const u64 half = inst.N / 2;
    for (u64 n = 1; n <= table.limit(); ++n) {
        if (arith::gcd(n, half) != 1) continue;
        if (table.sign(n) < 0) {
            out.n_f = n;
            break;
        }
    }
    return out;
}

u64 gap_at(const HalfIntegralTable& table, u64 n) {
    u64 j = 0;
    while (n + j + 1 <= table.limit() && table.sign(n + j + 1) == 0) ++j;
    return j;
}

GapReport vanishing_gaps(const HalfIntegralTable& table) {
    GapReport r;
    const u64 limit = table.limit();
    u64 n = 2;
    while (n <= limit) {
        if (table.sign(n) != 0) {
            ++n;
            continue;
        }
        const u64 start = n;
        while (n <= limit && table.sign(n) == 0) ++n;
        const u64 run = n - start;
        if (run > r.max_gap) {
            r.max_gap = run;
            r.argmax = start - 1;
            r.truncated = (n > limit);
        }
    }
    r.benchmark = r.argmax ? std::pow(static_cast<double>(r.argmax), 7.0 / 17.0) : 0.0;
    return r;
}

RhoInterval density_rho_f(const HalfIntegralTable& table, u64 prime_bound, unsigned exponent_bound) {
    require_x(table, prime_bound);
    RhoInterval r;
    r.prime_bound = prime_bound;
    r.exponent_bound = exponent_bound;
    double lower = 1.0, upper = 1.0;
    for (u64 p : table.sieve().primes()) {
        if (p > prime_bound) break;
        const double inv = 1.0 / static_cast<double>(p);
        // Factor = 1 - (1 - 1/p) * sum over vanishing nu of p^-nu; the unknown
        // tail nu > V has mass p^-(V+1) after the (1 - 1/p) weight.
        double missing = 0.0;
        double pw = 1.0;
        for (unsigned nu = 0; nu <= exponent_bound; ++nu) {
            if (nu > 0 && sgn(table.prime_power_value(p, nu)) == 0) missing += pw;
            pw *= inv;
        }
        const double factor_upper = 1.0 - (1.0 - inv) * missing;
        upper *= factor_upper;
        lower *= std::max(0.0, factor_upper - pw);
    }
    r.value = lower;
    r.lower = lower;
    r.upper = upper;
    return r;
}

std::vector<BalanceRow> sign_balance_report(const HalfIntegralTable& table, const std::vector<u64>& grid) {
    std::vector<BalanceRow> rows;
    for (u64 x : grid) {
        const auto s = sign_counts(table, x);
        BalanceRow row{x, s.nplus, s.nminus, s.nstar, s.nzero, std::nullopt, std::nullopt};
        if (s.nstar > 0)
            row.balance = std::fabs(static_cast<double>(s.nplus) - static_cast<double>(s.nminus)) /
                          static_cast<double>(s.nstar);
        if (x >= 2) row.envelope = std::pow(std::log(static_cast<double>(x)), -0.25);
        rows.push_back(row);
    }
    return rows;
}

HallTenenbaumConstant hall_tenenbaum_constant() {
    // f(phi) = sin phi - phi cos phi - pi/2 is increasing on (0, pi) (f' = phi sin phi).
    auto f = [](double phi) { return std::sin(phi) - phi * std::cos(phi) - std::numbers::pi / 2; };
    double lo = 0.0, hi = std::numbers::pi;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) < 0 ? lo : hi) = mid;
    }
    const double phi0 = 0.5 * (lo + hi);
    return {phi0, -std::cos(phi0)};
}

std::vector<HallTenenbaumRow> hall_tenenbaum_report(const HalfIntegralTable& table, const std::vector<u64>& grid) {
    const double K = hall_tenenbaum_constant().K;
    std::vector<HallTenenbaumRow> rows;
    if (grid.empty()) return rows;
    const u64 top = *std::max_element(grid.begin(), grid.end());
    require_x(table, top);
    std::vector<i64> partial(top + 1, 0);
    std::vector<double> negsum(top + 1, 0.0);
    for (u64 n = 1; n <= top; ++n) {
        const int e = table.sign(n);
        partial[n] = partial[n - 1] + e;
        negsum[n] = negsum[n - 1];
        if (e < 0 && table.sieve().is_prime(n)) negsum[n] += 2.0 / static_cast<double>(n);
    }
    for (u64 x : grid) {
        HallTenenbaumRow row;
        row.x = x;
        row.left = std::fabs(static_cast<double>(partial[x]));
        row.negative_prime_sum = negsum[x];
        row.right = static_cast<double>(x) * std::exp(-K * negsum[x]);
        row.ratio = row.right > 0 ? row.left / row.right : 0.0;
        rows.push_back(row);
    }
    return rows;
}

NegativePrimeDensity negative_prime_density(const HalfIntegralTable& table, u64 x) {
    require_x(table, x);
    NegativePrimeDensity d;
    d.x = x;
    for (u64 p : table.sieve().primes()) {
        if (p > x) break;
        ++d.primes;
        if (table.sign(p) < 0) ++d.negative;
    }
    if (d.primes) d.fraction = static_cast<double>(d.negative) / static_cast<double>(d.primes);
    if (x >= 2) d.density = static_cast<double>(d.negative) * std::log(static_cast<double>(x)) / static_cast<double>(x);
    return d;
}

SerreCount serre_exceptional_count(const HalfIntegralTable& table, u64 x) {
    require_x(table, x);
    SerreCount s;
    s.x = x;
    for (u64 p : table.sieve().primes()) {
        if (p > x) break;
        if (table.sign(p) == 0) s.primes.push_back(p);
    }
    s.count = s.primes.size();
    if (x >= 3) s.envelope = static_cast<double>(x) / std::pow(std::log(static_cast<double>(x)), 1.25);
    return s;
}

EllFactors ell_prime_power_factors(const HalfIntegralTable& table, u64 p, unsigned max_nu) {
    if (p > table.limit() || !table.sieve().is_prime(p))
        throw DomainError(std::to_string(p) + " is not a prime within the table");
    const auto& inst = table.instance();
    const int chi = twist_character(inst, p);
    const Integer G1 = Integer(chi) * arith::ipow(p, inst.k - 1);  // g(p) D
    const Integer H1 = table[p];                                     // h(p) D
    const Integer sum = G1 + H1;
    const Integer prod = G1 * H1;

    EllFactors out;
    out.p = p;
    out.max_nu = max_nu;
    out.cleared.assign(max_nu + 1, Integer(0));
    out.cleared[0] = 1;
    for (unsigned nu = 2; nu <= max_nu; ++nu)
        out.cleared[nu] = -(out.cleared[nu - 1] * sum + out.cleared[nu - 2] * prod);

    // Independent expansion of the triple convolution with g, h supported on
    // square-free exponents, against lambda(p^nu) mu(p^nu)^2 from the lift table.
    const Integer G[2] = {Integer(1), G1};
    const Integer H[2] = {Integer(1), H1};
    out.convolution.assign(max_nu + 1, Integer(0));
    out.target.assign(max_nu + 1, Integer(0));
    out.identity_holds = true;
    for (unsigned nu = 0; nu <= max_nu; ++nu) {
        for (unsigned a = 0; a <= 1 && a <= nu; ++a)
            for (unsigned b = 0; b <= 1 && a + b <= nu; ++b)
                out.convolution[nu] += G[a] * H[b] * out.cleared[nu - a - b];
        out.target[nu] = nu == 0 ? Integer(1) : nu == 1 ? table.c()[p] : Integer(0);
        if (out.convolution[nu] != out.target[nu]) out.identity_holds = false;
    }

    const double log_d = (inst.k - 0.5) * std::log(static_cast<double>(p));
    const double g = std::fabs(static_cast<double>(chi)) / std::sqrt(static_cast<double>(p));
    const double h = std::fabs(table.normalized(p));
    out.local_constant = g + h + g * h;
    out.bound_holds = true;
    out.magnitude.assign(max_nu + 1, 0.0);
    for (unsigned nu = 0; nu <= max_nu; ++nu) {
        const auto& v = out.cleared[nu];
        out.magnitude[nu] = sgn(v) == 0 ? 0.0 : std::fabs(arith::scaled_to_double(v, nu * log_d));
        if (out.magnitude[nu] > std::pow(out.local_constant, nu) * (1.0 + 1e-12)) out.bound_holds = false;
    }
    return out;
}

EllFactors ell_local_factors(const ModulusContext& ctx, const HalfIntegralTable& table, u64 p, unsigned max_nu) {
    if (ctx.divides_Nk(p))
        throw DomainError("prime " + std::to_string(p) + " divides N_k; local factors are taken at p not dividing N_k");
    return ell_prime_power_factors(table, p, max_nu);
}

}  // namespace halfsign::shimura
