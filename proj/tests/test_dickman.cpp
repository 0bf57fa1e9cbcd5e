#include <doctest.h>

#include <cmath>

#include "halfsign/dickman.hpp"

using namespace halfsign;

namespace {

// rho(u) on [2, 3] = 1 - log u + int_2^u log(t - 1)/t dt, by fine Simpson.
double rho_23(double u) {
    const int n = 20'000;
    const double h = (u - 2.0) / n;
    auto f = [](double t) { return std::log(t - 1.0) / t; };
    double s = f(2.0) + f(u);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(2.0 + i * h);
    return 1.0 - std::log(u) + s * h / 3.0;
}

}  // namespace

TEST_CASE("rho on [0, 2]") {
    const auto tab = dickman::solve_dickman(3.0, 0.005);
    CHECK(tab(0.0) == 1.0);
    CHECK(tab(0.5) == 1.0);
    CHECK(tab(1.0) == 1.0);
    CHECK(tab(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-12));
    for (double u = 1.0; u <= 2.0; u += 0.0137) CHECK(std::fabs(tab(u) - (1.0 - std::log(u))) <= 1e-10);
}

TEST_CASE("rho on [2, 3] against the closed integral") {
    const auto tab = dickman::solve_dickman(3.0, 0.005);
    for (double u = 2.0; u <= 3.0; u += 0.05) CHECK(std::fabs(tab(u) - rho_23(u)) <= 1e-9);
    CHECK(tab(3.0) == doctest::Approx(0.0486083882911).epsilon(1e-9));
}

TEST_CASE("table invariants and residual") {
    const auto tab = dickman::solve_dickman(6.0, 0.005);
    CHECK(tab.max_residual() <= 1e-8);
    const auto& k = tab.knots();
    for (std::size_t i = 1; i < k.size(); ++i) {
        CHECK(k[i] > 0.0);
        CHECK(k[i] <= k[i - 1]);
    }
    const unsigned n = tab.per_unit();
    for (std::size_t i = n + 2; i + 2 < k.size(); ++i)
        if (i % n >= 2 && i % n <= n - 2) CHECK(dickman::residual_at(tab, i) <= 1e-8);
}

TEST_CASE("grid refinement") {
    const auto a = dickman::solve_dickman(3.0, 0.005);
    const auto b = dickman::solve_dickman(3.0, 0.0025);
    for (std::size_t i = 0; i < a.knots().size(); ++i) CHECK(std::fabs(a.knots()[i] - b.knots()[2 * i]) <= 1e-9);
    for (double u = 0.0; u <= 3.0; u += 0.0123) CHECK(std::fabs(a(u) - b(u)) <= 1e-9);
    const auto ka = dickman::solve_kappa(a), kb = dickman::solve_kappa(b);
    CHECK(std::fabs(ka.kappa - kb.kappa) <= 1e-8);
}

TEST_CASE("step snapping and domain errors") {
    const auto tab = dickman::solve_dickman(2.5, 0.003);
    CHECK(tab.per_unit() == 334);
    CHECK(tab.knot_u(tab.knots().size() - 1) >= 2.5);
    CHECK_THROWS_AS(dickman::solve_dickman(1.0, 0.005), DomainError);
    CHECK_THROWS_AS(dickman::solve_dickman(10.5, 0.005), DomainError);
    CHECK_THROWS_AS(dickman::solve_dickman(3.0, 0.02), DomainError);
    CHECK_THROWS_AS(dickman::solve_dickman(3.0, 0.0), DomainError);
    CHECK_THROWS_AS(tab(2.6), DomainError);
}

TEST_CASE("kappa") {
    const auto tab = dickman::solve_dickman(3.0, 0.005);
    const auto k = dickman::solve_kappa(tab);
    CHECK(k.kappa > 10.0 / 9.0);
    CHECK(k.kappa < 1.5);
    CHECK(k.f_lower > 0.0);
    CHECK(k.f_upper < 0.0);
    CHECK(k.f_upper == doctest::Approx(tab(3.0) - 2.0 * std::log(1.5)));
    CHECK(k.residual <= 1e-9);
    CHECK_THROWS_AS(dickman::solve_kappa(dickman::solve_dickman(2.5, 0.005)), DomainError);

    // A table stuck at 1 has F(3/2) = 1 - 2 log 1.5 > 0: no sign change.
    const dickman::DickmanTable flat(3.0, 100, std::vector<double>(301, 1.0), 0.0);
    CHECK_THROWS_AS(dickman::solve_kappa(flat), NumericalError);
}

TEST_CASE("weighted prediction Pi y^u (rho(2u) - 2 log u)") {
    const auto tab = dickman::solve_dickman(3.0, 0.005);
    const double kappa = dickman::solve_kappa(tab).kappa;
    CHECK(dickman::lemma42_rhs(tab, 1.0, 1000.0, 0.5) == doctest::Approx(0.5 * 1000.0 * (1.0 - std::log(2.0))));
    CHECK(std::fabs(dickman::lemma42_rhs(tab, kappa, 1000.0, 1.0)) <= 1e-8 * std::pow(1000.0, kappa));
    CHECK(dickman::lemma42_rhs(tab, kappa + 0.01, 1000.0, 1.0) < 0.0);
    CHECK(dickman::lemma42_rhs(tab, kappa - 0.01, 1000.0, 1.0) > 0.0);
    CHECK_THROWS_AS(dickman::lemma42_rhs(tab, 0.9, 10.0, 1.0), DomainError);
    CHECK_THROWS_AS(dickman::lemma42_rhs(tab, 1.6, 10.0, 1.0), DomainError);
}
