#include "z2flux/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace z2flux {

double log1p_exp(double u) {
  return u > 0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double log_abs_1m_exp(double u) {
  if (u == 0.0) return -std::numeric_limits<double>::infinity();
  return u > 0 ? u + std::log1p(-std::exp(-u)) : std::log1p(-std::exp(u));
}

Eigen::MatrixXd hopping_matrix(const GaugeConfig& cfg, double t) {
  if (!(t > 0)) throw std::invalid_argument("hopping t must be positive");
  const int L = cfg.L;
  const int n = L * L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  auto site = [L](int x, int y) {
    return ((y % L + L) % L) * L + ((x % L + L) % L);
  };
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      const int i = site(x, y);
      const int jx = site(x + 1, y);
      const int jy = site(x, y + 1);
      h(i, jx) += -t * cfg.at(x, y, 0);
      h(jx, i) += -t * cfg.at(x, y, 0);
      h(i, jy) += -t * cfg.at(x, y, 1);
      h(jy, i) += -t * cfg.at(x, y, 1);
    }
  }
  return h;
}

int count_zero_modes(const Eigen::VectorXd& values) {
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  const double tol = 1e-12 * std::max(1.0, scale / 4.0);
  int n = 0;
  for (int i = 0; i < values.size(); ++i) n += std::abs(values[i]) < tol;
  return n;
}

Spectrum eigensolve(const Eigen::MatrixXd& h) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("eigensolve expects a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed to converge");
  }
  Spectrum s;
  s.values = solver.eigenvalues();
  s.vectors = solver.eigenvectors();
  s.zero_modes = count_zero_modes(s.values);
  s.zero_tolerance =
      1e-12 * std::max(1.0, s.values.cwiseAbs().maxCoeff() / 4.0);
  return s;
}

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

PartitionPair partition_pair(const Eigen::VectorXd& values, double beta) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  PartitionPair p;
  p.beta = beta;
  double lp = 0.0, lm = 0.0;
  int negatives = 0;
  const int zero_modes = count_zero_modes(values);
  for (int i = 0; i < values.size(); ++i) {
    const double u = -beta * values[i];
    lp += log1p_exp(u);
    if (zero_modes == 0) {
      lm += log_abs_1m_exp(u);
      negatives += (u > 0);  // 1 - e^u < 0 for u > 0
    }
  }
  p.log_z_plus = lp;
  if (zero_modes > 0) {
    p.z_minus_sign = 0;
    p.log_abs_z_minus = -std::numeric_limits<double>::infinity();
  } else {
    p.z_minus_sign = (negatives % 2 == 0) ? 1 : -1;
    p.log_abs_z_minus = lm;
  }
  return p;
}

std::string PartitionPair::to_json() const {
  nlohmann::json j;
  j["log_z_plus"] = log_z_plus;
  j["z_minus_sign"] = z_minus_sign;
  j["log_abs_z_minus"] =
      std::isinf(log_abs_z_minus) ? nlohmann::json(nullptr)
                                  : nlohmann::json(log_abs_z_minus);
  j["beta"] = beta;
  return j.dump();
}

double ground_energy(const Eigen::VectorXd& values) {
  double e = 0.0;
  for (int i = 0; i < values.size(); ++i) {
    if (values[i] < 0) e += values[i];
  }
  return e;
}

double gauge_energy(const FluxSector& sector) {
  double e = 0.0;
  for (auto v : sector.phi) e -= v;
  return e;
}

double odd_trace_quadratic(const Spectrum& spectrum, const Eigen::MatrixXd& O,
                           double beta) {
  const int n = static_cast<int>(spectrum.values.size());
  if (O.rows() != n || O.cols() != n) {
    throw std::invalid_argument("observable must match the mode count");
  }
  if (spectrum.zero_modes >= 2) return 0.0;
  // sum_m O_mm (-e^{-beta lambda_m}) prod_{l != m} (1 - e^{-beta lambda_l})
  double total = 0.0;
  for (int m = 0; m < n; ++m) {
    double logmag = -beta * spectrum.values[m];
    int sign = -1;
    for (int l = 0; l < n; ++l) {
      if (l == m) continue;
      const double u = -beta * spectrum.values[l];
      if (u == 0.0) {
        sign = 0;
        break;
      }
      logmag += log_abs_1m_exp(u);
      if (u > 0) sign = -sign;
    }
    if (sign != 0) total += O(m, m) * sign * std::exp(logmag);
  }
  return total;
}

}  // namespace z2flux
