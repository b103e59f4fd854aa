#include "z2flux/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace z2flux {

GaussRule::GaussRule(int n) {
  if (n < 1) throw std::invalid_argument("GaussRule: order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

double cell_gauss(const Integrand2D& f, double ax, double bx, double ay,
                  double by, const GaussRule& rule) {
  const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = cx + hx * rule.nodes[i];
    double row = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      row += rule.weights[j] * f(x, cy + hy * rule.nodes[j]);
    }
    sum += rule.weights[i] * row;
  }
  return sum * hx * hy;
}

}  // namespace

double tensor_gauss_2d(const Integrand2D& f, double ax, double bx, double ay,
                       double by, int panels, int order) {
  GaussRule rule(order);
  const double dx = (bx - ax) / panels, dy = (by - ay) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    for (int j = 0; j < panels; ++j) {
      total += cell_gauss(f, ax + i * dx, ax + (i + 1) * dx, ay + j * dy,
                          ay + (j + 1) * dy, rule);
    }
  }
  return total;
}

double tensor_gauss_2d_refined(const Integrand2D& f, double ax, double bx,
                               double ay, double by, double tol,
                               int initial_panels, int order, int max_panels) {
  double prev = tensor_gauss_2d(f, ax, bx, ay, by, initial_panels, order);
  for (int panels = 2 * initial_panels; panels <= max_panels; panels *= 2) {
    double cur = tensor_gauss_2d(f, ax, bx, ay, by, panels, order);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  return prev;
}

double adaptive_gauss_2d(const Integrand2D& f, double ax, double bx, double ay,
                         double by, double tol, int max_cells) {
  struct Cell {
    double ax, bx, ay, by;
    double value;   // fine estimate
    double error;   // |fine - coarse|
    bool operator<(const Cell& o) const { return error < o.error; }
  };
  static const GaussRule coarse(4), fine(8);
  auto make_cell = [&](double cax, double cbx, double cay, double cby) {
    Cell c{cax, cbx, cay, cby, 0.0, 0.0};
    const double lo = cell_gauss(f, cax, cbx, cay, cby, coarse);
    c.value = cell_gauss(f, cax, cbx, cay, cby, fine);
    c.error = std::abs(c.value - lo);
    return c;
  };

  std::priority_queue<Cell> heap;
  heap.push(make_cell(ax, bx, ay, by));
  double total = heap.top().value;
  double err = heap.top().error;
  int cells = 1;
  while (err > tol && cells < max_cells) {
    Cell worst = heap.top();
    heap.pop();
    total -= worst.value;
    err -= worst.error;
    const double mx = 0.5 * (worst.ax + worst.bx);
    const double my = 0.5 * (worst.ay + worst.by);
    const Cell kids[4] = {
        make_cell(worst.ax, mx, worst.ay, my),
        make_cell(mx, worst.bx, worst.ay, my),
        make_cell(worst.ax, mx, my, worst.by),
        make_cell(mx, worst.bx, my, worst.by),
    };
    for (const Cell& k : kids) {
      total += k.value;
      err += k.error;
      heap.push(k);
    }
    cells += 3;
  }
  return total;
}

double gauss_1d(const std::function<double(double)>& f, double a, double b,
                int panels, int order) {
  GaussRule rule(order);
  const double dx = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double c = a + (i + 0.5) * dx, h = 0.5 * dx;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      total += rule.weights[j] * f(c + h * rule.nodes[j]);
    }
  }
  return total * 0.5 * dx;
}

}  // namespace z2flux
