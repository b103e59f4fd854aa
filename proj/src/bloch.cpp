#include "z2flux/bloch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "z2flux/quadrature.hpp"

namespace z2flux {

namespace {

constexpr double kBandArgTol = 1e-12;  // band treated as exactly zero below

void require_even(int L) {
  if (L < 4 || L % 2 != 0) {
    throw std::invalid_argument("lattice size must be even and >= 4");
  }
}

void require_flux_label(int v) {
  if (v != 1 && v != -1) {
    throw std::invalid_argument("loop flux labels must be +1 or -1");
  }
}

}  // namespace

BlochGrid BlochGrid::make(int L, int a, int b) {
  require_even(L);
  require_flux_label(a);
  require_flux_label(b);
  BlochGrid g;
  g.L = L;
  g.a = a;
  g.b = b;
  g.points.reserve(static_cast<std::size_t>(L) * (L / 2));
  const double step = 2.0 * M_PI / L;
  for (int n1 = 0; n1 < L; ++n1) {
    for (int n2 = 0; n2 < L / 2; ++n2) {
      g.points.push_back({step * (n1 - 0.25 * (a - 1)),
                          step * (n2 - 0.25 * (b - 1))});
    }
  }
  return g;
}

Eigen::Matrix2cd bloch_h_pi(double k1, double k2, double t) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd h;
  h(0, 0) = 2.0 * t * std::cos(k1);
  h(0, 1) = -t * (1.0 + std::exp(2.0i * k2));
  h(1, 0) = -t * (1.0 + std::exp(-2.0i * k2));
  h(1, 1) = -2.0 * t * std::cos(k1);
  return h;
}

double pi_band_minus(double k1, double k2, double t) {
  const double arg =
      1.0 + 0.5 * std::cos(2.0 * k1) + 0.5 * std::cos(2.0 * k2);
  return -2.0 * t * std::sqrt(std::max(0.0, arg));
}

double pi_ground_energy(int L, int a, int b, double t) {
  const BlochGrid g = BlochGrid::make(L, a, b);
  double e = 0.0;
  for (const auto& k : g.points) e += pi_band_minus(k[0], k[1], t);
  return e;
}

PartitionPair pi_partition(int L, int a, int b, double beta, double t) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  const BlochGrid g = BlochGrid::make(L, a, b);
  PartitionPair p;
  p.beta = beta;
  double lp = 0.0, lm = 0.0;
  int negatives = 0;
  bool zero = false;
  for (const auto& k : g.points) {
    const double arg =
        1.0 + 0.5 * std::cos(2.0 * k[0]) + 0.5 * std::cos(2.0 * k[1]);
    if (arg < kBandArgTol) {
      zero = true;
      lp += 2.0 * std::log(2.0);  // both bands at zero energy
      continue;
    }
    const double e = 2.0 * t * std::sqrt(arg);
    lp += log1p_exp(-beta * e) + log1p_exp(beta * e);
    lm += log_abs_1m_exp(-beta * e) + log_abs_1m_exp(beta * e);
    negatives += 1;  // the filled band contributes one negative factor
  }
  p.log_z_plus = lp;
  if (zero) {
    p.z_minus_sign = 0;
    p.log_abs_z_minus = -std::numeric_limits<double>::infinity();
  } else {
    p.z_minus_sign = (negatives % 2 == 0) ? 1 : -1;
    p.log_abs_z_minus = lm;
  }
  return p;
}

std::array<double, 4> chess_bands(double k1, double k2, double t) {
  const double c1 = std::cos(2.0 * k1), c2 = std::cos(2.0 * k2);
  const double s = std::sqrt(1.0 + c1 * c1 + c2 * c2);
  const double e1 = 2.0 * t * std::sqrt(1.0 + 0.5 * s);
  const double e2 = 2.0 * t * std::sqrt(std::max(0.0, 1.0 - 0.5 * s));
  return {-e1, -e2, e2, e1};
}

Eigen::Matrix<std::complex<double>, 8, 8> chess_bloch_matrix(double k1,
                                                             double k2,
                                                             double t) {
  using namespace std::complex_literals;
  const std::complex<double> w2 = std::exp(-2.0i * k2);
  const std::complex<double> w4 = std::exp(-4.0i * k1);
  Eigen::Matrix<std::complex<double>, 8, 8> m;
  m.setZero();
  // cell sites ordered a,b,c,d (lower row), A,B,C,D (upper row)
  m(0, 1) = 1;
  m(0, 3) = w4;
  m(0, 4) = 1.0 + w2;
  m(1, 2) = 1;
  m(1, 5) = -1.0 + w2;
  m(2, 3) = 1;
  m(2, 6) = -1.0 + w2;
  m(3, 7) = 1.0 + w2;
  m(4, 5) = -1;
  m(4, 7) = -w4;
  m(5, 6) = -1;
  m(6, 7) = -1;
  // fill the lower triangle by hermiticity
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) m(j, i) = std::conj(m(i, j));
  }
  return -t * m;
}

BlochGrid chess_grid(int L, int a, int b) {
  require_even(L);
  require_flux_label(a);
  require_flux_label(b);
  if (L % 4 != 0) {
    throw std::invalid_argument("staggered grid needs L divisible by 4");
  }
  BlochGrid g;
  g.L = L;
  g.a = a;
  g.b = b;
  const double step = 2.0 * M_PI / L;
  const double s1 = -(M_PI / (2.0 * L)) * (a - 1);
  const double s2 = -(M_PI / (2.0 * L)) * (b - 1);
  for (int n1 = 0; n1 < L / 4; ++n1) {
    for (int n2 = 0; n2 < L / 2; ++n2) {
      g.points.push_back({step * n1 + s1, step * n2 + s2});
    }
  }
  return g;
}

PartitionPair chess_partition(int L, int a, int b, double beta, double t) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  const BlochGrid g = chess_grid(L, a, b);
  PartitionPair p;
  p.beta = beta;
  double lp = 0.0, lm = 0.0;
  for (const auto& k : g.points) {
    for (double e : chess_bands(k[0], k[1], t)) {
      lp += 2.0 * log1p_exp(-beta * e);
      lm += 2.0 * log_abs_1m_exp(-beta * e);
    }
  }
  p.log_z_plus = lp;
  p.z_minus_sign = 1;  // doubly degenerate bands square every factor
  p.log_abs_z_minus = lm;
  return p;
}

double monopole_mass(double beta, int L, double t, Parity parity) {
  if (L % 4 != 0) {
    throw std::invalid_argument("monopole mass needs L divisible by 4");
  }
  const PartitionPair ref = pi_partition(L, -1, -1, beta, t);
  const double log_ref =
      parity == Parity::even ? ref.log_z_plus : ref.log_abs_z_minus;
  if (parity == Parity::odd && ref.z_minus_sign <= 0) {
    throw std::runtime_error("reference odd partition function vanished");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const PartitionPair z = chess_partition(L, a, b, beta, t);
      if (parity == Parity::even) {
        best = std::max(best, z.log_z_plus);
      } else if (z.z_minus_sign > 0) {
        best = std::max(best, z.log_abs_z_minus);
      }
    }
  }
  return -(best - log_ref) / (beta * L * L);
}

double monopole_mass_infinity(double t) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  static const double kappa = [] {
    const double tol = 1e-9;
    const double two_pi = 2.0 * M_PI;
    const double norm = 1.0 / (4.0 * M_PI * M_PI);
    const double i1 = norm * tensor_gauss_2d_refined(
                                 [](double u, double v) {
                                   return std::sqrt(std::max(
                                       0.0, 1.0 + 0.5 * std::cos(u) +
                                                0.5 * std::cos(v)));
                                 },
                                 0, two_pi, 0, two_pi, tol);
    const double i2 =
        0.5 * norm *
        tensor_gauss_2d_refined(
            [](double u, double v) {
              const double c1 = std::cos(u), c2 = std::cos(v);
              return std::sqrt(
                  1.0 + 0.5 * std::sqrt(1.0 + c1 * c1 + c2 * c2));
            },
            0, two_pi, 0, two_pi, tol);
    const double i3 =
        0.5 * norm *
        tensor_gauss_2d_refined(
            [](double u, double v) {
              const double c1 = std::cos(u), c2 = std::cos(v);
              return std::sqrt(std::max(
                  0.0, 1.0 - 0.5 * std::sqrt(1.0 + c1 * c1 + c2 * c2)));
            },
            0, two_pi, 0, two_pi, tol);
    return i1 - i2 - i3;
  }();
  return kappa * t;
}

double degeneracy_gap(int L, double t) {
  require_even(L);
  const int ref_a = (L % 4 == 0) ? -1 : 1;
  const double e_ref = pi_ground_energy(L, ref_a, ref_a, t);
  double gap = 0.0;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      gap = std::max(gap, std::abs(pi_ground_energy(L, a, b, t) - e_ref));
    }
  }
  return gap;
}

}  // namespace z2flux
