#include "halfsign/eigenform.hpp"

#include <cmath>
#include <numbers>

#include "halfsign/kernels.hpp"

namespace halfsign::eigen {

LiftBackend LiftBackend::builtin_delta() { return LiftBackend{}; }

LiftBackend LiftBackend::synthetic(unsigned weight, u64 level, PrimeCoefficientRule rule,
                                   std::string description, bool admissible) {
    if (weight < 2 || weight % 2 != 0)
        throw DomainError("synthetic lift weight must be even and >= 2, got " + std::to_string(weight));
    if (level < 1) throw DomainError("synthetic lift level must be >= 1");
    if (!rule) throw DomainError("synthetic lift needs a prime coefficient rule");
    LiftBackend b;
    b.kind_ = BackendKind::Synthetic;
    b.weight_ = weight;
    b.level_ = level;
    b.admissible_ = admissible;
    b.description_ = std::move(description);
    b.rule_ = std::move(rule);
    return b;
}

Integer LiftBackend::prime_coefficient(u64 p) const {
    if (kind_ != BackendKind::Synthetic)
        throw DomainError("prime_coefficient is only defined for synthetic backends");
    return rule_(p);
}

LiftBackend synthetic_from_lambda(unsigned weight, u64 level, std::function<double(u64)> lambda) {
    auto rule = [weight, lambda = std::move(lambda)](u64 p) -> Integer {
        const double l = lambda(p);
        if (l == 0.0) return Integer(0);
        throw DomainError("inadmissible synthetic eigenvalue lambda(" + std::to_string(p) + ") = " +
                          std::to_string(l) + ": c(p) = lambda p^(" + std::to_string(weight - 1) +
                          "/2) is not an integer");
    };
    return LiftBackend::synthetic(weight, level, std::move(rule), "lambda-specified");
}

LiftBackend synthetic_near_bound(unsigned weight, u64 level) {
    auto rule = [weight](u64 p) {
        // floor(sqrt(4 p^(w-1)))
        Integer four = arith::ipow(p, weight - 1) * 4;
        Integer root;
        mpz_sqrt(root.get_mpz_t(), four.get_mpz_t());
        return root;
    };
    return LiftBackend::synthetic(weight, level, rule, "near-bound");
}

double EigenvalueTable::normalized(u64 n) const {
    return arith::scaled_to_double(c.at(n), 0.5 * (weight() - 1) * std::log(static_cast<double>(n)));
}

std::shared_ptr<const arith::FactorSieve> shared_sieve(u64 limit) {
    return std::make_shared<const arith::FactorSieve>(std::max<u64>(limit, 2));
}

EigenvalueTable delta_coefficients(u64 limit) {
    if (limit < 1 || limit > kMaxDeltaLimit)
        throw CapacityError("delta coefficient limit " + std::to_string(limit) + " outside [1, " +
                            std::to_string(kMaxDeltaLimit) + "]");
    const auto series = kernels::parallel::eta_power_series(limit, 24);
    arith::CoefficientTable c("tau", limit);
    for (u64 n = 1; n <= limit; ++n) {
        // i128 -> mpz via two 64-bit halves
        const kernels::i128 v = series[n - 1];
        const bool neg = v < 0;
        const unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        Integer hi(static_cast<unsigned long>(static_cast<u64>(mag >> 64)));
        Integer lo(static_cast<unsigned long>(static_cast<u64>(mag)));
        Integer out = (hi << 64) + lo;
        c[n] = neg ? Integer(-out) : out;
    }
    c.set_multiplicative(true);
    return EigenvalueTable{LiftBackend::builtin_delta(), std::move(c), shared_sieve(limit)};
}

Integer prime_power_coefficient(const Integer& cp, u64 p, unsigned nu, unsigned weight,
                                bool divides_level) {
    if (nu == 0) return 1;
    if (divides_level) {
        Integer out;
        mpz_pow_ui(out.get_mpz_t(), cp.get_mpz_t(), nu);
        return out;
    }
    const Integer pw = arith::ipow(p, weight - 1);
    Integer prev = 1, cur = cp;
    for (unsigned j = 1; j < nu; ++j) {
        Integer next = cp * cur - pw * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

EigenvalueTable synthetic_coefficients(const LiftBackend& backend, u64 limit) {
    if (backend.kind() != BackendKind::Synthetic)
        throw DomainError("synthetic_coefficients needs a synthetic backend");
    if (limit < 1) throw CapacityError("synthetic table limit must be >= 1");
    auto sieve = shared_sieve(limit);
    const unsigned w = backend.weight();
    arith::PrimePowerValues values;
    for (u64 p : sieve->primes()) {
        if (p > limit) break;
        const Integer cp = backend.prime_coefficient(p);
        if (backend.admissible()) {
            const Integer bound = arith::ipow(p, w - 1) * 4;
            if (cp * cp > bound)
                throw DomainError("synthetic c(" + std::to_string(p) + ") = " + cp.get_str() +
                                  " violates the Deligne bound");
        }
        u64 pk = p;
        for (unsigned nu = 1;; ++nu) {
            values[{p, nu}] = prime_power_coefficient(cp, p, nu, w, backend.divides_level(p));
            if (pk > limit / p) break;
            pk *= p;
        }
    }
    auto c = arith::extend_multiplicative(values, limit, "c_" + backend.description());
    return EigenvalueTable{backend, std::move(c), sieve};
}

EigenvalueTable build_eigenvalues(const LiftBackend& backend, u64 limit) {
    return backend.kind() == BackendKind::BuiltinDelta ? delta_coefficients(limit)
                                                       : synthetic_coefficients(backend, limit);
}

u64 verify_hecke_recurrence(const EigenvalueTable& table) {
    const u64 limit = table.limit();
    const auto& c = table.c;
    if (c[1] != 1) throw IntegrityError("c(1) != 1", 1, 1, 0);
    u64 checked = 0;
    if (limit < 4) return 0;
    const unsigned w = table.weight();
    for (u64 p : table.sieve->primes()) {
        if (p * p > limit) break;
        if (table.backend.divides_level(p)) continue;
        const Integer pw = arith::ipow(p, w - 1);
        u64 prev = 1, cur = p;
        for (unsigned nu = 1; cur <= limit / p; ++nu) {
            const u64 next = cur * p;
            if (c[next] != c[p] * c[cur] - pw * c[prev])
                throw IntegrityError("Hecke recurrence fails at (p, nu) = (" + std::to_string(p) + ", " +
                                         std::to_string(nu + 1) + ")",
                                     next, p, nu + 1);
            ++checked;
            prev = cur;
            cur = next;
        }
    }
    return checked;
}

namespace {

void check_prime_bound(const EigenvalueTable& table, u64 prime_bound) {
    if (prime_bound > table.limit())
        throw ShapeError("prime bound " + std::to_string(prime_bound) + " exceeds table limit " +
                         std::to_string(table.limit()));
}

bool within_deligne(const EigenvalueTable& table, u64 p) {
    const Integer& cp = table.c[p];
    return cp * cp <= arith::ipow(p, table.weight() - 1) * 4;
}

}  // namespace

std::vector<SatoTateAngle> sato_tate_angles(const EigenvalueTable& table, u64 prime_bound) {
    check_prime_bound(table, prime_bound);
    std::vector<SatoTateAngle> out;
    for (u64 p : table.sieve->primes()) {
        if (p > prime_bound) break;
        if (table.backend.divides_level(p)) continue;
        if (!within_deligne(table, p))
            throw DomainError("Deligne violation at p = " + std::to_string(p) + ": c(p) = " +
                              table.c[p].get_str());
        const double half_lambda = std::clamp(0.5 * table.normalized(p), -1.0, 1.0);
        out.push_back({p, sgn(table.c[p]) == 0 ? std::numbers::pi / 2 : std::acos(half_lambda)});
    }
    return out;
}

bool deligne_check(const EigenvalueTable& table, u64 prime_bound) {
    check_prime_bound(table, prime_bound);
    for (u64 p : table.sieve->primes()) {
        if (p > prime_bound) break;
        if (!within_deligne(table, p)) return false;
    }
    return true;
}

}  // namespace halfsign::eigen
