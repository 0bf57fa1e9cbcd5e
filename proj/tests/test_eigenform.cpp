#include <doctest.h>

#include <cmath>
#include <numbers>

#include "halfsign/eigenform.hpp"

using namespace halfsign;
using arith::Integer;

namespace {

// tau(n) for n <= terms from q prod (1 - q^m)^24, multiplied out term by term.
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

}  // namespace

TEST_CASE("tau from the eta product matches direct expansion") {
    const auto table = eigen::delta_coefficients(400);
    const auto oracle = tau_oracle(400);
    for (u64 n = 1; n <= 400; ++n) CHECK(table.c[n] == oracle[n]);
    const long known[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
    for (u64 n = 1; n <= 10; ++n) CHECK(table.c[n] == known[n - 1]);
    CHECK(table.weight() == 12);
}

TEST_CASE("tau satisfies the Hecke recurrence and multiplicativity") {
    const auto table = eigen::delta_coefficients(20'000);
    CHECK(eigen::verify_hecke_recurrence(table) > 0);
    CHECK(arith::verify_multiplicative(table.c) > 0);
    CHECK(eigen::deligne_check(table, 20'000));
    for (u64 p : {2, 3, 5, 7, 11})
        for (unsigned nu = 0; nu <= 4; ++nu) {
            const Integer expect = eigen::prime_power_coefficient(table.c[p], p, nu, 12, false);
            if (arith::ipow(p, nu) <= 20'000) CHECK(table.c[arith::ipow(p, nu).get_ui()] == expect);
        }
}

TEST_CASE("corrupted tau table is caught with its prime power") {
    auto table = eigen::delta_coefficients(2000);
    table.c[27] += 1;
    try {
        eigen::verify_hecke_recurrence(table);
        FAIL("corruption not detected");
    } catch (const IntegrityError& e) {
        CHECK(e.p == 3);
        CHECK(e.nu == 3);
        CHECK(e.n == 27);
    }
}

TEST_CASE("delta table limits") {
    CHECK_THROWS_AS(eigen::delta_coefficients(0), CapacityError);
    CHECK_THROWS_AS(eigen::delta_coefficients(eigen::kMaxDeltaLimit + 1), CapacityError);
}

TEST_CASE("Sato-Tate angles") {
    const auto table = eigen::delta_coefficients(5000);
    const auto angles = eigen::sato_tate_angles(table, 5000);
    CHECK(angles.size() == table.sieve->prime_count(5000));
    for (const auto& a : angles) {
        CHECK(a.theta >= 0.0);
        CHECK(a.theta <= std::numbers::pi);
        const double lambda = table.normalized(a.p);
        CHECK(2 * std::cos(a.theta) == doctest::Approx(lambda).epsilon(1e-9));
    }
    CHECK_THROWS_AS(eigen::sato_tate_angles(table, 5001), ShapeError);

    const auto zero = eigen::build_eigenvalues(eigen::synthetic_from_lambda(12, 1, [](u64) { return 0.0; }), 100);
    for (const auto& a : eigen::sato_tate_angles(zero, 100)) CHECK(a.theta == std::numbers::pi / 2);
}

TEST_CASE("synthetic backends") {
    const auto zero = eigen::build_eigenvalues(eigen::synthetic_from_lambda(12, 1, [](u64) { return 0.0; }), 1000);
    CHECK(zero.c[7] == 0);
    CHECK(zero.c[49] == -arith::ipow(7, 11));  // c(p^2) = -p^(w-1) when c(p) = 0
    CHECK(eigen::verify_hecke_recurrence(zero) > 0);
    CHECK_THROWS_AS(
        eigen::build_eigenvalues(eigen::synthetic_from_lambda(12, 1, [](u64) { return 0.5; }), 100),
        DomainError);

    const auto near = eigen::build_eigenvalues(eigen::synthetic_near_bound(12), 3000);
    CHECK(eigen::deligne_check(near, 3000));
    for (u64 n = 1; n <= 3000; ++n) CHECK(sgn(near.c[n]) > 0);

    auto too_big = eigen::LiftBackend::synthetic(12, 1, [](u64 p) { return Integer(2) * arith::ipow(p, 6); });
    CHECK_THROWS_AS(eigen::build_eigenvalues(too_big, 50), DomainError);
    CHECK_THROWS_AS(eigen::LiftBackend::synthetic(11, 1, [](u64) { return Integer(0); }), DomainError);

    const auto level = eigen::build_eigenvalues(
        eigen::LiftBackend::synthetic(12, 3, [](u64 p) { return Integer(static_cast<long>(p)); }), 200);
    CHECK(level.c[81] == 81);  // p | level: c(p^nu) = c(p)^nu
}
