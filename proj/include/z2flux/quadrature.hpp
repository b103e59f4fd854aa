#pragma once

#include <array>
#include <functional>
#include <vector>

namespace z2flux {

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussRule(int n);
};

using Integrand2D = std::function<double(double, double)>;

// Composite tensor-product Gauss-Legendre over [ax,bx] x [ay,by] with
// panels x panels cells and an order-point rule per cell.
double tensor_gauss_2d(const Integrand2D& f, double ax, double bx, double ay,
                       double by, int panels, int order);

// Doubles the panel count until two successive levels differ by less than
// tol; returns the finer value. Suitable for smooth (piecewise-smooth)
// periodic integrands.
double tensor_gauss_2d_refined(const Integrand2D& f, double ax, double bx,
                               double ay, double by, double tol,
                               int initial_panels = 4, int order = 12,
                               int max_panels = 4096);

// Adaptive rectangle subdivision with an embedded coarse/fine Gauss error
// estimate. Splits the worst cells until the global estimate is below tol or
// the cell budget is exhausted. Handles integrable point singularities.
double adaptive_gauss_2d(const Integrand2D& f, double ax, double bx, double ay,
                         double by, double tol, int max_cells = 200000);

// Composite Gauss integration of a 1D function on [a,b].
double gauss_1d(const std::function<double(double)>& f, double a, double b,
                int panels, int order);

}  // namespace z2flux
