#include "halfsign/dickman.hpp"

#include <algorithm>
#include <cmath>

namespace halfsign::dickman {

namespace {

// Cubic Lagrange interpolation of the knots at fractional index s, using four
// knots kept inside the unit interval [piece*n, (piece+1)*n].
double interpolate(const std::vector<double>& knots, unsigned n, std::size_t piece, double s) {
    const std::size_t first = piece * n;
    const std::size_t last = std::min(first + n, knots.size() - 1);
    std::size_t base = static_cast<std::size_t>(std::floor(s));
    base = base > first ? base - 1 : first;
    if (base + 3 > last) base = last >= first + 3 ? last - 3 : first;
    double acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        double w = 1.0;
        for (std::size_t m = 0; m < 4; ++m) {
            if (m == j) continue;
            w *= (s - static_cast<double>(base + m)) / static_cast<double>(static_cast<i64>(j) - static_cast<i64>(m));
        }
        acc += w * knots[base + j];
    }
    return acc;
}

}  // namespace

DickmanTable::DickmanTable(double upper, unsigned per_unit, std::vector<double> knots, double max_residual)
    : upper_(upper), per_unit_(per_unit), knots_(std::move(knots)), max_residual_(max_residual) {}

double DickmanTable::operator()(double u) const {
    if (u < 0.0 || u > knot_u(knots_.size() - 1) + 1e-12)
        throw DomainError("rho evaluated outside [0, " + std::to_string(upper_) + "]");
    if (u <= 1.0) return 1.0;
    const double s = u * per_unit_;
    const double nearest = std::round(s);
    if (std::fabs(s - nearest) < 1e-9) return knots_[static_cast<std::size_t>(nearest)];
    const std::size_t piece = static_cast<std::size_t>(std::floor(u));
    return interpolate(knots_, per_unit_, piece, s);
}

DickmanTable solve_dickman(double upper, double step) {
    if (!(upper > 1.0) || upper > kMaxU)
        throw DomainError("Dickman table needs 1 < U <= 10, got U = " + std::to_string(upper));
    if (!(step > 0.0) || step > kMaxStep)
        throw DomainError("Dickman step must lie in (0, 0.01], got " + std::to_string(step));
    const unsigned n = static_cast<unsigned>(std::ceil(1.0 / step - 1e-9));
    const std::size_t count = static_cast<std::size_t>(std::ceil(upper * n - 1e-9));
    std::vector<double> rho(count + 1, 1.0);
    const double h = 1.0 / n;
    for (std::size_t i = n; i < count; ++i) {
        // Integrate rho(t - 1)/t over [u_i, u_{i+1}]; the delayed values sit at
        // knots i - n, i - n + 1 and at the midpoint between them.
        const double u0 = static_cast<double>(i) / n;
        const double u1 = static_cast<double>(i + 1) / n;
        const double um = 0.5 * (u0 + u1);
        const std::size_t d = i - n;
        const double mid = (d + 1 <= n) ? 1.0 : interpolate(rho, n, d / n, static_cast<double>(d) + 0.5);
        const double integral = h / 6.0 * (rho[d] / u0 + 4.0 * mid / um + rho[d + 1] / u1);
        rho[i + 1] = rho[i] - integral;
    }
    DickmanTable provisional(upper, n, rho, 0.0);
    double worst = 0.0;
    for (std::size_t i = n; i <= count; ++i) {
        const std::size_t local = i % n;
        if (local < 2 || local > n - 2 || i + 2 > count) continue;
        worst = std::max(worst, residual_at(provisional, i));
    }
    return DickmanTable(upper, n, std::move(rho), worst);
}

double residual_at(const DickmanTable& table, std::size_t i) {
    const auto& k = table.knots();
    const unsigned n = table.per_unit();
    if (i < n + 2 || i + 2 >= k.size()) throw DomainError("residual stencil leaves the table");
    const double h = table.step();
    const double deriv = (-k[i + 2] + 8.0 * k[i + 1] - 8.0 * k[i - 1] + k[i - 2]) / (12.0 * h);
    return std::fabs(table.knot_u(i) * deriv + k[i - n]);
}

KappaRoot solve_kappa(const DickmanTable& table) {
    if (table.knot_u(table.knots().size() - 1) < 3.0 - 1e-12)
        throw DomainError("kappa needs a rho table covering [0, 3]");
    auto F = [&](double u) { return table(2.0 * u) - 2.0 * std::log(u); };
    KappaRoot r;
    double lo = 10.0 / 9.0, hi = 1.5;
    r.f_lower = F(lo);
    r.f_upper = F(hi);
    if (!(r.f_lower > 0.0) || !(r.f_upper < 0.0))
        throw NumericalError("F(u) = rho(2u) - 2 log u does not change sign on (10/9, 3/2)");
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) > 0.0 ? lo : hi) = mid;
    }
    r.kappa = 0.5 * (lo + hi);
    r.residual = std::fabs(F(r.kappa));
    return r;
}

double lemma42_rhs(const DickmanTable& table, double u, double y, double Pi) {
    if (u < 1.0 || u > 1.5) throw DomainError("lemma42_rhs needs 1 <= u <= 3/2");
    return Pi * std::pow(y, u) * (table(2.0 * u) - 2.0 * std::log(u));
}

}  // namespace halfsign::dickman
