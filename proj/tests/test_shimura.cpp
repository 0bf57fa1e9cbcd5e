#include <doctest.h>

#include <cmath>
#include <numbers>

#include "halfsign/modulus.hpp"
#include "halfsign/shimura.hpp"

using namespace halfsign;
using arith::Integer;

namespace {

std::vector<Integer> tau_oracle(u64 terms) {
    std::vector<Integer> poly(terms, 0);
    poly[0] = 1;
    for (u64 m = 1; m < terms; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (u64 d = terms - 1; d >= m; --d) poly[d] -= poly[d - m];
    std::vector<Integer> tau(terms + 1, 0);
    for (u64 n = 1; n <= terms; ++n) tau[n] = poly[n - 1];
    return tau;
}

int mobius_oracle(u64 n) {
    int mu = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

// (t / d) for odd d from Euler's criterion at each prime factor.
int odd_symbol(u64 t, u64 d) {
    int s = 1;
    for (u64 p = 3; d > 1; p += 2) {
        if (p * p > d) p = d;
        while (d % p == 0) {
            d /= p;
            u64 r = 1, b = t % p;
            for (u64 e = (p - 1) / 2; e; e >>= 1, b = b * b % p)
                if (e & 1) r = r * b % p;
            s *= (t % p == 0) ? 0 : (r == 1 ? 1 : -1);
        }
    }
    return s;
}

// A(n) for level 4, principal character, k = 6, square-free t = 1 mod 4.
std::vector<Integer> A_oracle(u64 limit, u64 t) {
    const auto tau = tau_oracle(limit);
    std::vector<Integer> A(limit + 1, 0);
    for (u64 n = 1; n <= limit; ++n)
        for (u64 d = 1; d <= n; d += 2) {
            if (n % d) continue;
            const int s = mobius_oracle(d) * odd_symbol(t, d);
            if (s) A[n] += s * arith::ipow(d, 5) * tau[n / d];
        }
    return A;
}

shimura::FormInstance zeros_instance() {
    auto inst = shimura::FormInstance::default_delta();
    const auto near = eigen::synthetic_near_bound(12);
    inst.backend = eigen::LiftBackend::synthetic(
        12, 1,
        [near](u64 p) -> Integer {
            if (p == 11 || p == 101) return arith::ipow(p, 5);
            return near.prime_coefficient(p);
        },
        "zeros");
    return inst;
}

}  // namespace

TEST_CASE("default coefficients against the divisor-sum oracle") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 600);
    const auto oracle = A_oracle(600, 1);
    for (u64 n = 1; n <= 600; ++n) CHECK(table[n] == oracle[n]);
    CHECK(table[2] == -24);
    CHECK(table[3] == 9);
    CHECK(table[4] == -1472);
    CHECK(table[5] == 1705);
    CHECK(table[6] == -216);
    CHECK(table[7] == -33551);
}

TEST_CASE("twisted instance t = 5") {
    auto inst = shimura::FormInstance::default_delta();
    inst.t = 5;
    const auto table = shimura::halfintegral_coefficients(inst, 400);
    const auto oracle = A_oracle(400, 5);
    for (u64 n = 1; n <= 400; ++n) CHECK(table[n] == oracle[n]);
    CHECK(shimura::verify_shimura_forward(table) == 400);
    CHECK(shimura::twist_character(inst, 3) == -1);
    CHECK(shimura::twist_character(inst, 11) == 1);
    CHECK(shimura::twist_character(inst, 5) == 0);
}

TEST_CASE("forward Shimura identity and fault injection") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 5000);
    CHECK(shimura::verify_shimura_forward(table) == 5000);
    CHECK(arith::verify_multiplicative(table.A()) > 0);
    auto A = table.A();
    A[1234] += 1;
    const shimura::HalfIntegralTable bad(table.instance(), table.lift(), A);
    try {
        shimura::verify_shimura_forward(bad);
        FAIL("corruption not detected");
    } catch (const IntegrityError& e) {
        CHECK(e.n == 1234);
    }
}

TEST_CASE("prime power values follow the table") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 5000);
    for (u64 p : {2, 3, 5, 7, 13})
        for (unsigned nu = 0; nu <= 4; ++nu) {
            const u64 q = arith::ipow(p, nu).get_ui();
            if (q <= 5000) CHECK(table.prime_power_value(p, nu) == table[q]);
        }
    CHECK_THROWS_AS(table.prime_power_value(4, 1), DomainError);
}

TEST_CASE("instance validation") {
    auto inst = shimura::FormInstance::default_delta();
    CHECK_NOTHROW(inst.validate());
    inst.N = 6;
    inst.chi = shimura::RealCharacter::principal(6);
    CHECK_THROWS_AS(inst.validate(), DomainError);
    inst = shimura::FormInstance::default_delta();
    inst.t = 12;
    CHECK_THROWS_AS(inst.validate(), DomainError);
    inst = shimura::FormInstance::default_delta();
    inst.chi = shimura::RealCharacter::principal(8);
    CHECK_THROWS_AS(inst.validate(), DomainError);
    inst = shimura::FormInstance::default_delta();
    inst.k = 5;
    CHECK_THROWS_AS(inst.validate(), DomainError);
    inst = shimura::FormInstance::default_delta();
    CHECK_THROWS_AS(shimura::halfintegral_coefficients(inst, eigen::delta_coefficients(50), 100), ShapeError);
}

TEST_CASE("signs, first negative index and gaps") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const auto nf = shimura::first_negative_index(table);
    REQUIRE(nf.n_f);
    CHECK(*nf.n_f == 7);
    CHECK(nf.benchmark == doctest::Approx(std::pow(144.0, 0.45)));
    const auto s = shimura::sign_sequence(table);
    u64 plus = 0, minus = 0;
    for (u64 n = 1; n <= 10'000; ++n) {
        plus += sgn(table[n]) > 0;
        minus += sgn(table[n]) < 0;
        CHECK(s.eps[n] == sgn(table[n]));
    }
    CHECK(s.nplus == plus);
    CHECK(s.nminus == minus);
    CHECK(s.nzero == 0);
    CHECK(shimura::vanishing_gaps(table).max_gap == 0);

    const auto zeros = shimura::halfintegral_coefficients(zeros_instance(), 3000);
    u64 best = 0, arg = 0;
    for (u64 n = 1; n <= 3000; ++n) {
        u64 j = 0;
        while (n + j + 1 <= 3000 && sgn(zeros[n + j + 1]) == 0) ++j;
        CHECK(shimura::gap_at(zeros, n) == j);
        if (j > best) best = j, arg = n;
    }
    const auto g = shimura::vanishing_gaps(zeros);
    CHECK(g.max_gap == best);
    CHECK(g.argmax == arg);
    CHECK(best >= 1);
}

TEST_CASE("density of nonvanishing coefficients") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 1000);
    const auto r = shimura::density_rho_f(table, 100, 6);
    CHECK(r.lower <= r.upper);
    CHECK(r.upper == doctest::Approx(1.0));
    const auto zeros = shimura::halfintegral_coefficients(zeros_instance(), 1000);
    const auto z = shimura::density_rho_f(zeros, 200, 8);
    // A(11) = A(101) = 0 and the higher powers do not vanish.
    const double expect = (1 - 10.0 / 11 / 11) * (1 - 100.0 / 101 / 101);
    CHECK(z.upper == doctest::Approx(expect).epsilon(1e-12));
    CHECK(z.lower <= z.upper);
}

TEST_CASE("Hall-Tenenbaum constant and reports") {
    const auto c = shimura::hall_tenenbaum_constant();
    CHECK(std::sin(c.phi0) - c.phi0 * std::cos(c.phi0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(std::round(c.K * 1e5) / 1e5 == doctest::Approx(0.32867).epsilon(1e-12));

    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 10'000);
    const auto rows = shimura::hall_tenenbaum_report(table, {10, 1000, 10'000});
    REQUIRE(rows.size() == 3);
    i64 partial = 0;
    for (u64 n = 1; n <= 1000; ++n) partial += sgn(table[n]);
    CHECK(rows[1].left == doctest::Approx(std::fabs(static_cast<double>(partial))));
    CHECK(rows[2].right == doctest::Approx(10'000 * std::exp(-c.K * rows[2].negative_prime_sum)));

    const auto bal = shimura::sign_balance_report(table, {0, 1, 1000});
    CHECK(!bal[0].balance);
    CHECK(!bal[0].envelope);
    CHECK(bal[1].balance == doctest::Approx(1.0));
    CHECK(bal[2].envelope == doctest::Approx(std::pow(std::log(1000.0), -0.25)));
    CHECK_THROWS_AS(shimura::sign_balance_report(table, {10'001}), ShapeError);
}

TEST_CASE("negative prime density and exceptional primes") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 20'000);
    const auto d = shimura::negative_prime_density(table, 20'000);
    u64 neg = 0, primes = 0;
    for (u64 p : table.sieve().primes()) {
        if (p > 20'000) break;
        ++primes;
        neg += sgn(table[p]) < 0;
    }
    CHECK(d.primes == primes);
    CHECK(d.negative == neg);
    CHECK(d.fraction == doctest::Approx(static_cast<double>(neg) / primes));
    CHECK(shimura::serre_exceptional_count(table, 20'000).count == 0);
    const auto zeros = shimura::halfintegral_coefficients(zeros_instance(), 1000);
    CHECK(shimura::serre_exceptional_count(zeros, 1000).primes == std::vector<u64>{11, 101});
}

TEST_CASE("l factors satisfy the convolution identity and the local bound") {
    const auto table = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 1000);
    for (u64 p : table.sieve().primes()) {
        if (p > 200) break;
        const auto e = shimura::ell_prime_power_factors(table, p, 6);
        CHECK(e.identity_holds);
        CHECK(e.bound_holds);
        CHECK(e.cleared[0] == 1);
        for (unsigned nu = 2; nu <= 6; ++nu) CHECK(e.target[nu] == 0);
    }
    const auto zeros = shimura::halfintegral_coefficients(zeros_instance(), 1000);
    CHECK(shimura::ell_prime_power_factors(zeros, 11, 6).identity_holds);
    const auto ctx = make_modulus_context(6, 4);
    CHECK_THROWS_AS(shimura::ell_local_factors(ctx, table, 2, 4), DomainError);
    CHECK(shimura::ell_local_factors(ctx, table, 67, 4).identity_holds);
}

TEST_CASE("modulus context") {
    const auto ctx = make_modulus_context(6, 4);
    CHECK(ctx.L == doctest::Approx(std::log(2400.0)));
    CHECK(ctx.omega() == 17);
    CHECK(ctx.Nk_primes.back() == 59);
    Integer prod = 1;
    for (u64 p : ctx.Nk_primes) prod *= p;
    CHECK(prod == ctx.Nk);
    const auto odd = make_modulus_context(6, 4 * 1009);
    CHECK(odd.divides_Nk(1009));
    CHECK(!odd.divides_Nk(1013));
    CHECK_THROWS_AS(make_modulus_context(6, 6), DomainError);
}
