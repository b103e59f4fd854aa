#include "z2flux/gibbs.hpp"

#include <cmath>
#include <stdexcept>

#include "z2flux/parallel.hpp"

namespace z2flux {

namespace {

double logaddexp(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log of the full sector weight e^{-beta H_g} * (Z+ + Z-)/2.
double log_weight(const SectorTable& table, std::uint32_t id, int ab,
                  double beta, double t) {
  const int n = table.n_modes();
  const double h_gauge = n - 2.0 * table.zero_flux_count(id);
  const PartitionPair p = table.partition(id, ab, beta, t);
  double ratio = 0.0;  // Z-/Z+
  if (p.z_minus_sign != 0) {
    ratio = p.z_minus_sign * std::exp(p.log_abs_z_minus - p.log_z_plus);
  }
  return -beta * h_gauge + p.log_z_plus + std::log1p(ratio) - std::log(2.0);
}

std::vector<double> all_log_weights(const SectorTable& table, double beta,
                                    double t, unsigned threads) {
  const std::uint32_t n = table.n_sectors();
  std::vector<double> lw(static_cast<std::size_t>(n) * 4);
  parallel_for(
      n,
      [&](std::size_t id) {
        for (int ab = 0; ab < 4; ++ab) {
          lw[id * 4 + ab] =
              log_weight(table, static_cast<std::uint32_t>(id), ab, beta, t);
        }
      },
      threads);
  return lw;
}

// <B> per plaquette from the weight vector; throws if the sixteen values
// spread beyond 1e-12 (they agree exactly by relabeling symmetry).
double plaquette_mean(const SectorTable& table, const std::vector<double>& lw) {
  const int np = table.n_modes();
  const std::uint32_t n = table.n_sectors();
  double shift = lw[0];
  for (double v : lw) shift = std::max(shift, v);
  std::vector<double> numer(np, 0.0);
  double denom = 0.0;
  for (std::uint32_t id = 0; id < n; ++id) {
    const FluxSector s = table.sector(id, 0);
    double wsum = 0.0;
    for (int ab = 0; ab < 4; ++ab) {
      wsum += std::exp(lw[static_cast<std::size_t>(id) * 4 + ab] - shift);
    }
    denom += wsum;
    for (int p = 0; p < np; ++p) numer[p] += wsum * s.phi[p];
  }
  double lo = numer[0] / denom, hi = lo, mean = 0.0;
  for (int p = 0; p < np; ++p) {
    const double v = numer[p] / denom;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mean += v;
  }
  if (hi - lo > 1e-12) {
    throw std::runtime_error("plaquette expectation is not translation "
                             "invariant; enumeration is inconsistent");
  }
  return mean / np;
}

}  // namespace

GibbsSummary full_partition(const SectorTable& table, double beta, double t,
                            unsigned threads) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  const int L = table.L();
  const std::vector<double> lw = all_log_weights(table, beta, t, threads);
  double shift = lw[0];
  for (double v : lw) shift = std::max(shift, v);
  const double sum = parallel_sum(
      lw.size(), [&](std::size_t i) { return std::exp(lw[i] - shift); },
      threads);
  const double log_z = shift + std::log(sum);

  // uniform-flux sectors: every plaquette at -1
  const std::uint32_t pi_id = (1u << (L * L - 1)) - 1u;
  double log_z_pi = -std::numeric_limits<double>::infinity();
  for (int ab = 0; ab < 4; ++ab) {
    log_z_pi =
        logaddexp(log_z_pi, lw[static_cast<std::size_t>(pi_id) * 4 + ab]);
  }

  GibbsSummary g;
  g.L = L;
  g.beta = beta;
  g.t = t;
  g.log_z = log_z;
  g.f = -log_z / (beta * L * L);
  g.f_pi = -log_z_pi / (beta * L * L);
  g.delta_plus = t > 0 ? monopole_mass(beta, L, t, Parity::even) : 0.0;
  g.delta_minus = t > 0 ? monopole_mass(beta, L, t, Parity::odd) : 0.0;
  const double delta = std::min(g.delta_plus, g.delta_minus);
  const double x = std::exp(-beta * (delta - 1.0));
  const int nsq = L * L;
  g.bound_rhs =
      logaddexp(nsq * std::log1p(x), nsq * std::log(std::abs(1.0 - x))) +
      std::log(2.0);
  const double gap = log_z - log_z_pi;  // beta L^2 (f_pi - f)
  g.sandwich_ok = gap >= -1e-9 && gap <= g.bound_rhs + 1e-9;
  g.observables["sandwich_lhs"] = gap;
  g.observables["plaquette_expectation"] = plaquette_mean(table, lw);
  return g;
}

double plaquette_expectation(const SectorTable& table, double beta, double t,
                             unsigned threads) {
  return plaquette_mean(table, all_log_weights(table, beta, t, threads));
}

Eigen::Matrix2cd ground_state_propagator(int x1, int x2, double tau, double t,
                                         std::optional<Side> side) {
  if (!(t > 0)) throw std::invalid_argument("t must be positive");
  if (tau == 0.0 && !side) {
    throw std::invalid_argument(
        "tau = 0 is ambiguous; pass Side::minus or Side::plus");
  }
  const double s =
      tau > 0 ? 1.0 : (tau < 0 ? -1.0 : (*side == Side::plus ? 1.0 : -1.0));
  const double at = std::abs(tau);

  auto evaluate = [&](int n1) {
    const int n2 = n1 / 2;
    Eigen::Matrix2cd g = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < n1; ++i) {
      const double k1 = 2.0 * M_PI * (i + 0.5) / n1;
      const double haa = 2.0 * t * std::cos(k1);
      const std::complex<double> e1x =
          std::exp(std::complex<double>(0.0, k1 * x1));
      for (int j = 0; j < n2; ++j) {
        const double k2 = M_PI * (j + 0.5) / n2;
        const std::complex<double> hab =
            -t * (1.0 + std::exp(std::complex<double>(0.0, 2.0 * k2)));
        const double r = std::sqrt(haa * haa + std::norm(hab));
        const double w = -s * std::exp(-at * r);
        const std::complex<double> phase =
            e1x * std::exp(std::complex<double>(0.0, k2 * x2));
        const double d = s * haa / r;
        g(0, 0) += w * 0.5 * (1.0 + d) * phase;
        g(1, 1) += w * 0.5 * (1.0 - d) * phase;
        g(0, 1) += w * (s * hab / (2.0 * r)) * phase;
        g(1, 0) += w * (s * std::conj(hab) / (2.0 * r)) * phase;
      }
    }
    return Eigen::Matrix2cd(g / (static_cast<double>(n1) * n2));
  };

  // Mesh fine enough for the e^{-tau r} cone peak and the e^{ikx} phase.
  const double scale = std::max({std::abs(tau) * 2.0 * t,
                                 std::abs(static_cast<double>(x1)),
                                 std::abs(static_cast<double>(x2)), 1.0});
  int n1 = 512;
  while (n1 < 24.0 * scale && n1 < 8192) n1 *= 2;
  Eigen::Matrix2cd g = evaluate(n1);
  for (;;) {
    if (n1 >= 16384) break;
    n1 *= 2;
    const Eigen::Matrix2cd fine = evaluate(n1);
    const double diff = (fine - g).cwiseAbs().maxCoeff();
    g = fine;
    if (diff < std::max(1e-12, 1e-6 * g.cwiseAbs().maxCoeff())) break;
  }
  return g;
}

double density_correlation(int x1, int x2, double tau, double t, int i,
                           int j) {
  if (x1 == 0 && x2 == 0 && tau == 0.0) {
    throw std::invalid_argument("coincident points are excluded");
  }
  const Eigen::Matrix2cd g1 =
      ground_state_propagator(x1, x2, tau, t, Side::plus);
  const Eigen::Matrix2cd g2 =
      ground_state_propagator(-x1, -x2, -tau, t, Side::minus);
  return -std::real(g1(i, j) * g2(j, i));
}

}  // namespace z2flux
