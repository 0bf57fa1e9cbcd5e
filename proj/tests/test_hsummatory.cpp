#include <doctest.h>

#include <cmath>

#include "halfsign/friable.hpp"
#include "halfsign/hsummatory.hpp"

using namespace halfsign;
using arith::Integer;

namespace {

const ModulusContext& default_ctx() {
    static const auto ctx = make_modulus_context(6, 4);
    return ctx;
}

const shimura::HalfIntegralTable& default_table() {
    static const auto t = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 20'000);
    return t;
}

bool squarefree_coprime(u64 n, const Integer& Nk) {
    for (u64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    Integer g;
    mpz_gcd_ui(g.get_mpz_t(), Nk.get_mpz_t(), n);
    return g == 1;
}

shimura::FormInstance near_instance() {
    auto inst = shimura::FormInstance::default_delta();
    inst.backend = eigen::synthetic_near_bound(12);
    return inst;
}

}  // namespace

TEST_CASE("h at primes by band") {
    const auto& ctx = default_ctx();
    const double s = 1.0 / ctx.L;
    const hsum::HFunction h(ctx, 10'000.0);
    CHECK(h.at_prime(2) == 0.0);
    CHECK(h.at_prime(59) == 0.0);
    CHECK(h.at_prime(61) == doctest::Approx(1.0 - s));
    CHECK(h.at_prime(97) == doctest::Approx(1.0 - s));
    CHECK(h.at_prime(101) == doctest::Approx(-s));
    CHECK(h.at_prime(9973) == doctest::Approx(-s));
    CHECK(h.at_prime(10'007) == doctest::Approx(-2.0 - s));
    CHECK(h.at_prime_power(61, 2) == 0.0);
    CHECK(h.at_prime_power(61, 0) == 1.0);
    CHECK_THROWS_AS(hsum::HFunction(ctx, 100.0, 0.0), DomainError);
}

TEST_CASE("h support and size") {
    const auto& ctx = default_ctx();
    const hsum::HFunction h(ctx, 1000.0, 2.0);
    const arith::FactorSieve sieve(30'000);
    for (u64 n = 1; n <= 30'000; ++n) {
        const double v = h.value(sieve, n);
        if (v != 0.0) {
            CHECK(squarefree_coprime(n, ctx.Nk));
            const double omega = static_cast<double>(sieve.factorize(n).size());
            CHECK(std::fabs(v) <= std::pow(2.0 + 2.0 / ctx.L, omega) * (1 + 1e-12));
        }
    }
}

TEST_CASE("summatory function against direct summation") {
    const auto& t = default_table();
    const auto& ctx = default_ctx();
    CHECK(hsum::summatory_S(t, ctx, 1.0) == 0.0);
    CHECK(hsum::summatory_S(t, ctx, 0.5) == 0.0);
    double brute = 0.0;
    for (u64 n = 1; n <= 100; ++n)
        if (squarefree_coprime(n, ctx.Nk))
            brute += t[n].get_d() / std::pow(static_cast<double>(n), 5.5) * std::log(100.0 / n);
    CHECK(hsum::summatory_S(t, ctx, 100.0) == doctest::Approx(brute).epsilon(1e-12));
    for (double x : {50.5, 1000.0, 12'345.6, 20'000.0}) {
        const double a = hsum::summatory_S(t, ctx, x);
        const double b = hsum::summatory_S_reversed(t, ctx, x);
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
    }
    CHECK(hsum::summatory_S(t, ctx, 67.0 - 1e-9) == doctest::Approx(hsum::summatory_S(t, ctx, 67.0)).epsilon(1e-6));
    CHECK_THROWS_AS(hsum::summatory_S(t, ctx, 20'001.0), ShapeError);
}

TEST_CASE("positivity threshold") {
    const auto y = hsum::compute_y_f(default_table());
    CHECK(y.y_f == 6);
    REQUIRE(y.witness);
    CHECK(*y.witness == 7);
    const auto near = shimura::halfintegral_coefficients(near_instance(), 2000);
    const auto yn = hsum::compute_y_f(near);
    CHECK(yn.y_f == 2000);
    CHECK(!yn.witness);
}

TEST_CASE("h-weighted sum against direct summation") {
    const auto& ctx = default_ctx();
    const hsum::HFunction h(ctx, 1000.0);
    CHECK(hsum::h_weighted_sum(h, 0.05) == doctest::Approx(std::log(std::pow(1000.0, 0.05))));
    const arith::FactorSieve sieve(40'000);
    for (double u : {1.0, 1.1, 1.5}) {
        const double X = std::pow(1000.0, u);
        double brute = 0.0;
        for (u64 n = 1; n <= static_cast<u64>(X); ++n) brute += h.value(sieve, n) * std::log(X / n);
        CHECK(hsum::h_weighted_sum(h, u) == doctest::Approx(brute).epsilon(1e-11));
    }
    CHECK_THROWS_AS(hsum::h_weighted_sum(hsum::HFunction(ctx, 1e6), 1.5), CapacityError);

    const auto rho = dickman::solve_dickman(3.0, 0.005);
    const auto rows = hsum::lemma42_report(h, rho, {1.0, 1.1, 1.2});
    REQUIRE(rows.size() == 3);
    const double Pi = friable::pi_q(ctx.Nk_primes).value;
    CHECK(rows[0].predicted == doctest::Approx(Pi * 1000.0 * (1 - std::log(2.0))));
    for (const auto& r : rows) CHECK(std::isfinite(r.ratio));
}

TEST_CASE("deconvolution round trip") {
    const auto& t = default_table();
    const auto& ctx = default_ctx();
    for (double y : {6.0, 1000.0}) {
        const hsum::HFunction h(ctx, y);
        const auto g = hsum::deconvolve_g(t, h, 1000);
        CHECK(g.values[1] == 1.0);
        CHECK(g.values[2] == doctest::Approx(t.normalized(2)));
        const auto& sieve = t.sieve();
        for (u64 n = 1; n <= 1000; ++n) {
            double conv = 0.0, scale = 0.0;
            for (u64 d : sieve.divisors(n)) {
                const double term = g.values[d] * h.value(sieve, n / d);
                conv += term;
                scale += std::fabs(term);
            }
            const double target = sieve.squarefree(n) || n == 1 ? t.normalized(n) : 0.0;
            CHECK(std::fabs(conv - target) <= 1e-10 * std::max(scale, std::fabs(target)) + 1e-300);
        }
    }
}

TEST_CASE("nonnegative g under the band conditions") {
    const auto near = shimura::halfintegral_coefficients(near_instance(), 20'000);
    const hsum::HFunction h(default_ctx(), 20'000.0);
    const auto g = hsum::deconvolve_g(near, h, 20'000);
    CHECK(g.min_prime_value >= 0.0);
    CHECK(g.argmin > 59);
}

TEST_CASE("boundedness ratio report") {
    const auto& t = default_table();
    const auto r = hsum::prop1_ratio_report(t, default_ctx(), {100.0, 1000.0, 10'000.0});
    REQUIRE(r.rows.size() == 3);
    for (const auto& row : r.rows) {
        CHECK(std::isfinite(row.ratio));
        CHECK(row.ratio == doctest::Approx(std::fabs(row.S) / (std::pow(144.0, 0.3) * std::sqrt(row.x))));
    }
    CHECK(!r.exploding);
    CHECK(hsum::prop1_ratio_report(t, default_ctx(), {}).rows.empty());

    const auto zero = shimura::halfintegral_coefficients(shimura::FormInstance::default_delta(), 100);
    const auto one = hsum::prop1_ratio_report(zero, default_ctx(), {1.0});
    CHECK(one.rows[0].ratio == 0.0);
}

TEST_CASE("inequality chain") {
    const auto& ctx = default_ctx();
    const auto def = hsum::prop2_chain_check(default_table(), ctx, 1.0, 1.05);
    CHECK(def.status == hsum::ChainStatus::Vacuous);
    CHECK(def.y_f == 6);

    const auto near = shimura::halfintegral_coefficients(near_instance(), 20'000);
    const auto r = hsum::prop2_chain_check(near, ctx, 1.0, 1.05);
    CHECK(r.status == hsum::ChainStatus::Applicable);
    CHECK(r.y_f == 20'000);
    CHECK(std::pow(static_cast<double>(r.y), 1.05) <= 20'000.0);
    CHECK(r.min_g >= 0.0);
    CHECK(r.holds);
    CHECK(r.S >= r.h_sum);
    CHECK(hsum::to_string(r.status) == "applicable");
}
