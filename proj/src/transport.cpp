#include "z2flux/transport.hpp"

#include <cmath>
#include <stdexcept>

#include "z2flux/parallel.hpp"
#include "z2flux/quadrature.hpp"

namespace z2flux {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};

// Directed hops of the two-site cell (A above B): H = sum c a^+_{x,i}
// a^-_{x+d,j} + (listed h.c. partners). Cell offsets r_A = e2, r_B = 0.
struct Hop {
  int i, j;        // 0 = A, 1 = B
  double dx, dy;   // cell displacement d
  double amp;      // amplitude in units of t
};

constexpr std::array<Hop, 8> kHops = {{
    {0, 1, 0.0, 2.0, -1.0},   // A -> B in the cell above
    {1, 0, 0.0, -2.0, -1.0},  // h.c.
    {0, 0, 1.0, 0.0, 1.0},    // A -> A right (sign-reversed row)
    {0, 0, -1.0, 0.0, 1.0},
    {1, 0, 0.0, 0.0, -1.0},   // B -> A inside the cell
    {0, 1, 0.0, 0.0, -1.0},
    {1, 1, 1.0, 0.0, -1.0},   // B -> B right
    {1, 1, -1.0, 0.0, -1.0},
}};

constexpr std::array<std::array<double, 2>, 2> kCellOffset = {{{0.0, 1.0},
                                                               {0.0, 0.0}}};

struct Eig2 {
  double e_minus, e_plus;
  Eigen::Matrix2cd u;  // columns: (minus, plus)
};

Eig2 eig2(double k1, double k2, double t) {
  const double haa = 2.0 * t * std::cos(k1);
  const complex<double> hab = -t * (1.0 + std::exp(2.0 * kI * k2));
  const double r = std::sqrt(haa * haa + std::norm(hab));
  Eig2 out;
  out.e_minus = -r;
  out.e_plus = r;
  complex<double> v1, v2;
  if (std::abs(hab) > 1e-300) {
    v1 = hab;
    v2 = r - haa;
  } else {
    v1 = haa > 0 ? 1.0 : 0.0;
    v2 = haa > 0 ? 0.0 : 1.0;
  }
  const double norm = std::sqrt(std::norm(v1) + std::norm(v2));
  v1 /= norm;
  v2 /= norm;
  out.u(0, 1) = v1;
  out.u(1, 1) = v2;
  out.u(0, 0) = -std::conj(v2);
  out.u(1, 0) = std::conj(v1);
  return out;
}

double fermi(double e, double beta, Parity parity) {
  if (parity == Parity::even) {
    // 1 / (1 + e^{beta e})
    return e > 0 ? std::exp(-beta * e) / (1.0 + std::exp(-beta * e))
                 : 1.0 / (1.0 + std::exp(beta * e));
  }
  // odd ensemble: 1 / (1 - e^{beta e})
  if (e > 0) {
    const double x = std::exp(-beta * e);
    return -x / (1.0 - x);
  }
  return 1.0 / (1.0 - std::exp(beta * e));
}

// lim_{mu -> lambda} (f(lambda) - f(mu)) / (mu - lambda) = -f'(lambda);
// equals beta f (1 - f) for both ensembles.
double kernel(double lam, double mu, double beta, Parity parity) {
  if (std::abs(lam - mu) < 1e-10) {
    const double f = fermi(lam, beta, parity);
    return beta * f * (1.0 - f);
  }
  return (fermi(lam, beta, parity) - fermi(mu, beta, parity)) / (mu - lam);
}

void require_on_grid(const std::array<double, 2>& p, int L) {
  for (double c : p) {
    const double m = c * L / (2.0 * M_PI);
    if (std::abs(m - std::round(m)) > 1e-9) {
      throw std::invalid_argument("momentum is not on the (2 pi / L) grid");
    }
  }
}

bool grid_has_zero_modes(int L, int a, int b) {
  return a == 1 && b == 1 && L % 4 == 0;
}

}  // namespace

std::complex<double> eta(const std::array<double, 2>& xi,
                         const std::array<double, 2>& p) {
  const double px = p[0] * xi[0] + p[1] * xi[1];
  if (px == 0.0) return 1.0;
  return (std::exp(-kI * px) - 1.0) / (-kI * px);
}

MomentumBlock current_block(int mu, const std::array<double, 2>& p, double t,
                            double q) {
  if (mu != 0 && mu != 1) throw std::invalid_argument("mu must be 0 or 1");
  MomentumBlock out;
  out.p = p;
  out.block = [mu, p, t, q](double k1, double k2) {
    Eigen::Matrix2cd j = Eigen::Matrix2cd::Zero();
    for (const Hop& hop : kHops) {
      const std::array<double, 2> xi = {
          kCellOffset[hop.i][0] - hop.dx - kCellOffset[hop.j][0],
          kCellOffset[hop.i][1] - hop.dy - kCellOffset[hop.j][1]};
      if (xi[mu] == 0.0) continue;
      const std::array<double, 2> mxi = {-xi[0], -xi[1]};
      const double pri = p[0] * kCellOffset[hop.i][0] +
                         p[1] * kCellOffset[hop.i][1];
      const double kd = k1 * hop.dx + k2 * hop.dy;
      j(hop.i, hop.j) += -kI * q * (hop.amp * t) * xi[mu] * eta(mxi, p) *
                         std::exp(-kI * pri) * std::exp(kI * kd);
    }
    return j;
  };
  return out;
}

MomentumBlock diamagnetic_block(int mu, int nu,
                                const std::array<double, 2>& p, double t,
                                double q) {
  if ((mu != 0 && mu != 1) || (nu != 0 && nu != 1)) {
    throw std::invalid_argument("mu, nu must be 0 or 1");
  }
  MomentumBlock out;
  out.p = {0.0, 0.0};  // momenta (p, -p): the block is momentum diagonal
  out.block = [mu, nu, p, t, q](double k1, double k2) {
    Eigen::Matrix2cd kap = Eigen::Matrix2cd::Zero();
    for (const Hop& hop : kHops) {
      const std::array<double, 2> xi = {
          kCellOffset[hop.i][0] - hop.dx - kCellOffset[hop.j][0],
          kCellOffset[hop.i][1] - hop.dy - kCellOffset[hop.j][1]};
      if (xi[mu] == 0.0 || xi[nu] == 0.0) continue;
      const double kd = k1 * hop.dx + k2 * hop.dy;
      const double w = std::norm(eta(xi, p));
      kap(hop.i, hop.j) += q * q * (hop.amp * t) * xi[mu] * xi[nu] * w *
                           std::exp(kI * kd);
    }
    return kap;
  };
  return out;
}

double kubo_static(const MomentumBlock& A, const MomentumBlock& B, int L,
                   double beta, double t, int a, int b, Parity parity,
                   unsigned threads) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  if (std::abs(A.p[0] + B.p[0]) > 1e-12 || std::abs(A.p[1] + B.p[1]) > 1e-12) {
    throw std::invalid_argument("kubo_static needs opposite block momenta");
  }
  require_on_grid(B.p, L);
  if (parity == Parity::odd && grid_has_zero_modes(L, a, b)) {
    throw std::invalid_argument(
        "odd parity is undefined on a grid with zero modes");
  }
  const std::array<double, 2> p = B.p;
  const double step = 2.0 * M_PI / L;
  const double o1 = -0.25 * (a - 1) * step;
  const double o2 = -0.25 * (b - 1) * step;
  const std::size_t n1 = L, n2 = L / 2;
  const double total = parallel_sum(
      n1 * n2,
      [&](std::size_t idx) {
        const double k1 = o1 + step * static_cast<double>(idx / n2);
        const double k2 = o2 + step * static_cast<double>(idx % n2);
        const Eig2 e0 = eig2(k1, k2, t);
        const Eig2 e1 = eig2(k1 + p[0], k2 + p[1], t);
        const Eigen::Matrix2cd At =
            e1.u.adjoint() * A.block(k1, k2) * e0.u;
        const Eigen::Matrix2cd Bt =
            e0.u.adjoint() * B.block(k1 + p[0], k2 + p[1]) * e1.u;
        const double ev0[2] = {e0.e_minus, e0.e_plus};
        const double ev1[2] = {e1.e_minus, e1.e_plus};
        double s = 0.0;
        for (int m = 0; m < 2; ++m) {
          for (int n = 0; n < 2; ++n) {
            s += std::real(At(m, n) * Bt(n, m)) *
                 kernel(ev1[m], ev0[n], beta, parity);
          }
        }
        return s;
      },
      threads);
  return total / (static_cast<double>(L) * L);
}

double one_body_expectation(const MomentumBlock& M, int L, double beta,
                            double t, int a, int b, Parity parity,
                            unsigned threads) {
  if (parity == Parity::odd && grid_has_zero_modes(L, a, b)) {
    throw std::invalid_argument(
        "odd parity is undefined on a grid with zero modes");
  }
  const double step = 2.0 * M_PI / L;
  const double o1 = -0.25 * (a - 1) * step;
  const double o2 = -0.25 * (b - 1) * step;
  const std::size_t n1 = L, n2 = L / 2;
  const double total = parallel_sum(
      n1 * n2,
      [&](std::size_t idx) {
        const double k1 = o1 + step * static_cast<double>(idx / n2);
        const double k2 = o2 + step * static_cast<double>(idx % n2);
        const Eig2 e = eig2(k1, k2, t);
        const Eigen::Matrix2cd Mt = e.u.adjoint() * M.block(k1, k2) * e.u;
        return std::real(Mt(0, 0)) * fermi(e.e_minus, beta, parity) +
               std::real(Mt(1, 1)) * fermi(e.e_plus, beta, parity);
      },
      threads);
  return total / (static_cast<double>(L) * L);
}

WardReport ward_check(int L, double beta, double t, int m, int a, int b,
                      unsigned threads) {
  if (m == 0) throw std::invalid_argument("m must be nonzero");
  const std::array<double, 2> p = {2.0 * M_PI * m / L, 0.0};
  const std::array<double, 2> mp = {-p[0], -p[1]};
  const MomentumBlock jp = current_block(0, p, t, 1.0);
  const MomentumBlock jm = current_block(0, mp, t, 1.0);
  WardReport r;
  r.kubo = kubo_static(jm, jp, L, beta, t, a, b, Parity::even, threads);
  r.diamagnetic = one_body_expectation(diamagnetic_block(0, 0, p, t, 1.0), L,
                                       beta, t, a, b, Parity::even, threads);
  r.residual = std::abs(r.diamagnetic + r.kubo) /
               std::max(std::abs(r.diamagnetic), 1e-300);
  r.passed = r.residual <= 1e-8;
  return r;
}

ResponseSample susceptibility_lattice(int m, int L, double beta, double t,
                                      double q, unsigned threads) {
  if (m == 0) throw std::invalid_argument("momentum index m must be nonzero");
  if (L % 4 != 0) throw std::invalid_argument("L must be divisible by 4");
  const double p2 = 2.0 * M_PI * m / L;
  const std::array<double, 2> p = {0.0, p2};
  const std::array<double, 2> mp = {0.0, -p2};
  const std::array<double, 2> zero = {0.0, 0.0};
  const double at_p =
      kubo_static(current_block(0, mp, t, q), current_block(0, p, t, q), L,
                  beta, t, -1, -1, Parity::even, threads);
  const double at_0 =
      kubo_static(current_block(0, zero, t, q), current_block(0, zero, t, q),
                  L, beta, t, -1, -1, Parity::even, threads);
  ResponseSample s;
  s.p2 = p2;
  s.value = (at_p - at_0) / (p2 * p2);
  s.method = "lattice";
  s.L = L;
  s.beta = beta;
  s.t = t;
  s.q = q;
  return s;
}

namespace {

// Band-pair response integrand with the frequency integral in closed form:
// only opposite-sign pairs survive, with weight 1/(|lam| + |mu|).
struct ConeResponse {
  std::array<double, 2> p;
  double t;
  MomentumBlock fwd;  // current at transfer +p
  MomentumBlock bwd;  // current at transfer -p

  ConeResponse(const std::array<double, 2>& p_in, double t_in, double q)
      : p(p_in),
        t(t_in),
        fwd(current_block(0, p_in, t_in, q)),
        bwd(current_block(0, {-p_in[0], -p_in[1]}, t_in, q)) {}

  double operator()(double k1, double k2) const {
    const Eig2 e0 = eig2(k1, k2, t);
    const Eig2 e1 = eig2(k1 - p[0], k2 - p[1], t);
    const Eigen::Matrix2cd JA =
        e0.u.adjoint() * bwd.block(k1 - p[0], k2 - p[1]) * e1.u;  // (k <- k-p)
    const Eigen::Matrix2cd JB =
        e1.u.adjoint() * fwd.block(k1, k2) * e0.u;                // (k-p <- k)
    const double ev0[2] = {e0.e_minus, e0.e_plus};
    const double ev1[2] = {e1.e_minus, e1.e_plus};
    double s = 0.0;
    for (int m = 0; m < 2; ++m) {
      for (int n = 0; n < 2; ++n) {
        if (ev0[m] * ev1[n] < 0) {
          s += std::real(JA(m, n) * JB(n, m)) /
               (std::abs(ev0[m]) + std::abs(ev1[n]));
        }
      }
    }
    return s;
  }
};

}  // namespace

ResponseSample susceptibility_continuum(double p2, double delta, double t,
                                        double q) {
  if (!(0.0 < p2 && p2 < delta && delta < 1.0)) {
    throw std::invalid_argument("need 0 < p2 < delta < 1");
  }
  const ConeResponse at_p({0.0, p2}, t, q);
  const ConeResponse at_0({0.0, 0.0}, t, q);
  auto subtracted = [&](double k1, double k2) {
    return at_p(k1, k2) - at_0(k1, k2);
  };

  const double c1[2] = {M_PI / 2.0, 3.0 * M_PI / 2.0};
  const double c2 = M_PI / 2.0;
  // smooth rectangles tiling [0,2pi] x [0,pi] minus the two cone squares
  const double xs[6] = {0.0,        c1[0] - delta, c1[0] + delta,
                        c1[1] - delta, c1[1] + delta, 2.0 * M_PI};
  const double ys[4] = {0.0, c2 - delta, c2 + delta, M_PI};
  double total = 0.0;
  const double tol = 1e-8;
  for (int ix = 0; ix < 5; ++ix) {
    for (int iy = 0; iy < 3; ++iy) {
      const bool cone_square = (ix == 1 || ix == 3) && iy == 1;
      if (cone_square) continue;
      total += adaptive_gauss_2d(subtracted, xs[ix], xs[ix + 1], ys[iy],
                                 ys[iy + 1], tol);
    }
  }
  // cone squares in polar coordinates, log-spaced radii down to p2/100
  const double r_min = p2 / 100.0;
  const GaussRule rule(12);
  for (double cx : c1) {
    const int n_theta = 64;
    for (int it = 0; it < n_theta; ++it) {
      const double th0 = 2.0 * M_PI * it / n_theta;
      const double th1 = 2.0 * M_PI * (it + 1) / n_theta;
      for (std::size_t gt = 0; gt < rule.nodes.size(); ++gt) {
        const double th = 0.5 * (th0 + th1) + 0.5 * (th1 - th0) * rule.nodes[gt];
        const double wt = 0.5 * (th1 - th0) * rule.weights[gt];
        const double r_edge =
            delta / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
        // log-spaced radial panels
        const int n_r = 48;
        const double ratio = std::pow(r_edge / r_min, 1.0 / n_r);
        double r0 = r_min;
        double radial = 0.0;
        for (int ir = 0; ir < n_r; ++ir) {
          const double r1 = r0 * ratio;
          for (std::size_t gr = 0; gr < rule.nodes.size(); ++gr) {
            const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * rule.nodes[gr];
            const double wr = 0.5 * (r1 - r0) * rule.weights[gr];
            radial += wr * r *
                      subtracted(cx + r * std::cos(th), c2 + r * std::sin(th));
          }
          r0 = r1;
        }
        total += wt * radial;
      }
    }
  }
  ResponseSample s;
  s.p2 = p2;
  s.value = (total / (4.0 * M_PI * M_PI)) / (p2 * p2);
  s.method = "continuum";
  s.L = 0;
  s.beta = 0.0;
  s.t = t;
  s.q = q;
  return s;
}

double dirac_subtracted_disc(double R) {
  // transverse-momentum integral of the scaled cone pair propagator product,
  // subtracted at zero external momentum; centre scale and tail are handled
  // by the tangent substitution y = s tan(u).
  auto reduced = [](double w, double x) {
    const double r2 = w * w + x * x;
    const double s = std::max(std::sqrt(r2), 1.0);
    auto f = [&](double y) {
      const double d1 = r2 + y * y;
      const double d2 = w * w + x * x + (y - 1.0) * (y - 1.0);
      return y * (y - 1.0) / (d1 * d2) - y * y / (d1 * d1);
    };
    double sum = 0.0;
    const int panels = 8, order = 24;
    const GaussRule rule(order);
    const double u_max = M_PI / 2.0;
    for (int p = 0; p < panels; ++p) {
      const double ua = -u_max + 2.0 * u_max * p / panels;
      const double ub = -u_max + 2.0 * u_max * (p + 1) / panels;
      for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        const double u = 0.5 * (ua + ub) + 0.5 * (ub - ua) * rule.nodes[g];
        const double wgt = 0.5 * (ub - ua) * rule.weights[g];
        const double c = std::cos(u);
        sum += wgt * f(s * std::tan(u)) * s / (c * c);
      }
    }
    return sum / (2.0 * M_PI);
  };
  // polar integration over the disc of radius R
  const GaussRule rule(16);
  const int n_theta = 32;
  const int n_r = 64;
  double total = 0.0;
  for (int it = 0; it < n_theta; ++it) {
    const double th0 = 2.0 * M_PI * it / n_theta;
    const double th1 = 2.0 * M_PI * (it + 1) / n_theta;
    for (std::size_t gt = 0; gt < rule.nodes.size(); ++gt) {
      const double th = 0.5 * (th0 + th1) + 0.5 * (th1 - th0) * rule.nodes[gt];
      const double wt = 0.5 * (th1 - th0) * rule.weights[gt];
      const double ratio = std::pow(R / 1e-7, 1.0 / n_r);
      double r0 = 1e-7;
      for (int ir = 0; ir < n_r; ++ir) {
        const double r1 = r0 * ratio;
        for (std::size_t gr = 0; gr < rule.nodes.size(); ++gr) {
          const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * rule.nodes[gr];
          const double wr = 0.5 * (r1 - r0) * rule.weights[gr];
          total += wt * wr * r * -reduced(r * std::cos(th), r * std::sin(th));
        }
        r0 = r1;
      }
    }
  }
  return total / (4.0 * M_PI * M_PI);
}

double dirac_velocity(double t, double* isotropy_spread) {
  const double h = 1e-5;
  const std::array<std::array<double, 2>, 2> cones = {
      {{M_PI / 2.0, M_PI / 2.0}, {3.0 * M_PI / 2.0, M_PI / 2.0}}};
  double lo = 1e300, hi = -1e300, mean = 0.0;
  int count = 0;
  for (const auto& c : cones) {
    for (int d = 0; d < 8; ++d) {
      const double th = 2.0 * M_PI * d / 8.0;
      const double slope =
          std::abs(pi_band_minus(c[0] + h * std::cos(th),
                                 c[1] + h * std::sin(th), t)) /
          h;
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
      mean += slope;
      ++count;
    }
  }
  mean /= count;
  if (isotropy_spread) *isotropy_spread = (hi - lo) / mean;
  return mean;
}

}  // namespace z2flux
