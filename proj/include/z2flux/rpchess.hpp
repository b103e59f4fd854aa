#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "z2flux/bloch.hpp"
#include "z2flux/lattice.hpp"
#include "z2flux/spectral.hpp"

namespace z2flux {

// Log-scale comparison lhs <= rhs with relative tolerance; partition
// functions span hundreds of orders of magnitude across beta.
struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool passed = false;
  bool degenerate = false;  // a vanishing odd partition function was involved
};

InequalityReport make_report(double lhs, double rhs, bool degenerate = false);

// Fermionic partition pair of a gauge configuration (matter sector only).
PartitionPair config_partition(const GaugeConfig& cfg, double beta, double t);

// Z^±(sector; a,b) evaluated through a representative configuration.
PartitionPair sector_partition(const FluxSector& sector, int a, int b,
                               double beta, double t);

// Reflection bound: 2 log Z^±(cfg) <= log Z^±(left) + log Z^±(right), with
// the two sides built by fix_cut + reflect.
InequalityReport rp_check(const GaugeConfig& cfg, ReflectionCut cut,
                          double beta, double t, Parity parity);

// Periodic extension of one plaquette value: plaquette (m,n) copies
// sector.phi(i,j) when m = i and n = j mod 2, and carries flux pi otherwise.
FluxSector chessboard_extension(const FluxSector& sector, int i, int j);

// F(sector) >= (1/L^2) sum_{i,j} F(extension(i,j)) with
// F = -max_{a,b} log Z^±.
InequalityReport chessboard_check(const FluxSector& sector, double beta,
                                  double t, Parity parity);

// -(1/beta) log Z^±(sector; a,b) >= k * Delta^±(beta,L) - (1/beta) log Z^±_*
// with k the zero-flux count and Z_* the optimal uniform-flux reference.
InequalityReport monopole_bound_check(const FluxSector& sector, int a, int b,
                                      double beta, double t, Parity parity);

// Cache of single-particle spectra for every flux sector at L = 4.
// Eigenvalues are stored at t = 1 and scaled on demand (h is linear in t).
class SectorTable {
 public:
  static constexpr std::array<std::pair<int, int>, 4> kBoundary = {
      {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

  static SectorTable build(int L, unsigned threads = 0);

  int L() const { return L_; }
  std::uint32_t n_sectors() const { return n_sectors_; }
  FluxSector sector(std::uint32_t id, int ab_index) const;
  int zero_flux_count(std::uint32_t id) const;
  const double* spectrum(std::uint32_t id, int ab_index) const;
  int n_modes() const { return n_modes_; }

  PartitionPair partition(std::uint32_t id, int ab_index, double beta,
                          double t) const;

 private:
  int L_ = 0;
  int n_modes_ = 0;
  std::uint32_t n_sectors_ = 0;
  std::vector<double> eigs_;
  std::vector<std::uint8_t> zero_flux_;
};

struct OptimumResult {
  FluxSector sector;        // maximizer
  int a = 1;
  int b = 1;
  double log_z = 0.0;       // log Z^± at the maximizer
  double runner_up = 0.0;   // best log Z^± among sectors with a zero flux
  bool all_tie = false;     // every sector equal (t = 0)
};

// Exhaustive maximization of Z^± over all flux sectors and boundary fluxes.
// Only L = 4 is enumerable; larger L is refused.
OptimumResult brute_force_optimum(const SectorTable& table, double beta,
                                  double t, Parity parity,
                                  unsigned threads = 0);

}  // namespace z2flux
