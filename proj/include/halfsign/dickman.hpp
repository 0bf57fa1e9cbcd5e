#ifndef HALFSIGN_DICKMAN_HPP
#define HALFSIGN_DICKMAN_HPP

#include <vector>

#include "halfsign/errors.hpp"

namespace halfsign::dickman {

inline constexpr double kMaxU = 10.0;
inline constexpr double kMaxStep = 0.01;

/// Knot values of rho on the uniform grid u_i = i h, i = 0..count, with the
/// grid aligned to the integers (1/h is an integer).
class DickmanTable {
public:
    DickmanTable(double upper, unsigned per_unit, std::vector<double> knots, double max_residual);

    double upper() const { return upper_; }
    double step() const { return 1.0 / per_unit_; }
    unsigned per_unit() const { return per_unit_; }
    const std::vector<double>& knots() const { return knots_; }
    double knot_u(std::size_t i) const { return static_cast<double>(i) / per_unit_; }
    /// max |u rho'(u) + rho(u - 1)| over knots whose difference stencil stays
    /// inside one unit interval.
    double max_residual() const { return max_residual_; }

    /// rho(u) for 0 <= u <= upper: exact 1 on [0, 1], cubic interpolation
    /// within a unit interval elsewhere.
    double operator()(double u) const;

private:
    double upper_;
    unsigned per_unit_;
    std::vector<double> knots_;
    double max_residual_;
};

/// Steps rho(u) = rho(m) - int_m^u rho(t - 1)/t dt with Simpson's rule, the
/// delayed midpoint value coming from cubic interpolation. The step is rounded
/// down to 1/ceil(1/h) so that the integers are knots.
DickmanTable solve_dickman(double upper, double step);

/// Residual |u rho'(u) + rho(u-1)| at a knot, with rho' from a 5-point
/// difference inside the unit interval. Needs 2 knots of room on each side.
double residual_at(const DickmanTable& table, std::size_t i);

struct KappaRoot {
    double kappa = 0.0;
    double f_lower = 0.0;  // F(10/9)
    double f_upper = 0.0;  // F(3/2)
    double residual = 0.0; // |F(kappa)|
};

/// Root of F(u) = rho(2u) - 2 log u in (10/9, 3/2).
KappaRoot solve_kappa(const DickmanTable& table);

/// Pi * y^u * (rho(2u) - 2 log u), for 1 <= u <= 3/2.
double lemma42_rhs(const DickmanTable& table, double u, double y, double Pi);

}  // namespace halfsign::dickman

#endif
