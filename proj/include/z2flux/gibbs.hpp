#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "z2flux/rpchess.hpp"

namespace z2flux {

// Full gauge-theory Gibbs state at L = 4 by exact flux-sector enumeration.
struct GibbsSummary {
  int L = 4;
  double beta = 0.0;
  double t = 0.0;
  double log_z = 0.0;
  double f = 0.0;       // free energy per site per beta
  double f_pi = 0.0;    // same, restricted to the four uniform-flux sectors
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double bound_rhs = 0.0;  // upper bound for beta L^2 (f_pi - f)
  bool sandwich_ok = false;
  std::map<std::string, double> observables;
};

GibbsSummary full_partition(const SectorTable& table, double beta, double t,
                            unsigned threads = 0);

// <B_plaquette> in the full Gibbs state; identical for every plaquette by
// translation invariance of the sector sum (checked to 1e-12).
double plaquette_expectation(const SectorTable& table, double beta, double t,
                             unsigned threads = 0);

enum class Side { minus, plus };

// Infinite-volume, zero-temperature imaginary-time propagator of the
// uniform pi-flux background on the two-site cell:
//   tau > 0: -avg_k e^{ik.x} e^{-tau h(k)} P_+(k)
//   tau < 0: +avg_k e^{ik.x} e^{-tau h(k)} P_-(k)
// x = (x1, x2) in cell-lattice coordinates. tau == 0 needs an explicit side.
Eigen::Matrix2cd ground_state_propagator(int x1, int x2, double tau, double t,
                                         std::optional<Side> side = {});

// Connected density-density correlation by the Wick pairing:
// -g_ij(x, tau) g_ji(-x, -tau).
double density_correlation(int x1, int x2, double tau, double t, int i = 0,
                           int j = 0);

}  // namespace z2flux
