#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "z2flux/rng.hpp"

namespace z2flux {

// L x L torus. Sites (x,y) with x,y in Z/L; bond (x,y,mu) leaves (x,y) in
// direction mu (0 = +x, 1 = +y); plaquettes indexed by lower-left corner.
struct TorusLattice {
  int L = 0;

  static TorusLattice build(int L);

  int n_sites() const { return L * L; }
  int n_edges() const { return 2 * L * L; }
  int n_plaquettes() const { return L * L; }
};

// Ising gauge field: one sign per oriented bond.
// Storage order: index = mu*L*L + y*L + x  (x fastest, then y, then mu).
struct GaugeConfig {
  int L = 0;
  std::vector<std::int8_t> sigma;

  static GaugeConfig all_plus(int L);
  static GaugeConfig random(int L, SplitMix64& rng);

  int edge_index(int x, int y, int mu) const;
  std::int8_t at(int x, int y, int mu) const;
  void set(int x, int y, int mu, int value);

  std::string to_json() const;
  static GaugeConfig from_json(const std::string& text);
};

// Plaquette fluxes (+1 <-> flux 0, -1 <-> flux pi) plus the two loop fluxes:
// a along the row y=0 (horizontal bonds), b along the column x=0 (vertical
// bonds). Plaquette storage: index = y*L + x.
struct FluxSector {
  int L = 0;
  std::vector<std::int8_t> phi;
  int a = 1;
  int b = 1;

  static FluxSector uniform(int L, int value, int a = 1, int b = 1);
  static FluxSector random(int L, SplitMix64& rng);
  // +1 on plaquettes whose lower-left corner has both coordinates even,
  // -1 elsewhere; one quarter of the plaquettes carry flux 0.
  static FluxSector staggered(int L, int a = 1, int b = 1);

  std::int8_t at(int x, int y) const;
  void set(int x, int y, int value);
  bool product_constraint_ok() const;
  int zero_flux_count() const;  // number of plaquettes with value +1

  std::string to_json() const;
  static FluxSector from_json(const std::string& text);
};

enum class CutOrientation { vertical, horizontal };

// Bond-centered double cut of the torus. For a vertical cut at position c the
// two cut lines cross the horizontal bonds (c, y, 0) and (c + L/2, y, 0); each
// half then holds L/2 full columns. Horizontal cuts are the transposed
// picture (rows instead of columns).
struct ReflectionCut {
  CutOrientation orientation = CutOrientation::vertical;
  int position = 0;
};

FluxSector flux_of(const GaugeConfig& cfg);

// Flips every bond with exactly one endpoint in the vertex set
// (in_set[y*L+x] != 0). Fluxes are invariant.
GaugeConfig gauge_transform(const GaugeConfig& cfg,
                            const std::vector<std::uint8_t>& in_set);

// Deterministic O(L^2) gauge choice with flux_of(representative(s)) == s.
// Vertical bonds are +1 except the top row; horizontal rows are accumulated
// upward from the plaquette fluxes; the top-row vertical bonds absorb the
// remaining fluxes and the loop flux b.
GaugeConfig representative(const FluxSector& sector);

// Gauge-equivalent configuration whose cut-crossing bonds are all +1.
GaugeConfig fix_cut(const GaugeConfig& cfg, ReflectionCut cut);

// Left- and right-reflected configurations: one half is kept, the other half
// is replaced by the sign-reversed mirror image, and the crossing bonds stay
// +1. Requires the crossing bonds of cfg to be +1 (call fix_cut first).
std::pair<GaugeConfig, GaugeConfig> reflect(const GaugeConfig& cfg,
                                            ReflectionCut cut);

// (x,y,mu=0) <-> (y,x,mu=1); swaps the roles of rows and columns and the two
// loop fluxes.
GaugeConfig transposed(const GaugeConfig& cfg);

}  // namespace z2flux
