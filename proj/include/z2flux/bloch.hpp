#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "z2flux/spectral.hpp"

namespace z2flux {

enum class Parity { even, odd };

// Momentum grid for the uniform-flux two-band problem with boundary fluxes
// (a,b): k = (2pi/L) (n1 - (a-1)/4, n2 - (b-1)/4), n1 < L, n2 < L/2.
struct BlochGrid {
  int L = 0;
  int a = 1;
  int b = 1;
  std::vector<std::array<double, 2>> points;

  static BlochGrid make(int L, int a, int b);
};

// Two-band Bloch Hamiltonian of the uniform pi-flux background on the
// two-site cell (A above B, cell lattice spanned by e1 and 2*e2).
Eigen::Matrix2cd bloch_h_pi(double k1, double k2, double t);

// Lower band -2t sqrt(1 + cos(2k1)/2 + cos(2k2)/2); upper band is its mirror.
double pi_band_minus(double k1, double k2, double t);

double pi_ground_energy(int L, int a, int b, double t);
PartitionPair pi_partition(int L, int a, int b, double beta, double t);

// Staggered (quarter zero-flux) background: four band magnitudes, each
// doubly degenerate, on the momentum grid below.
std::array<double, 4> chess_bands(double k1, double k2, double t);
Eigen::Matrix<std::complex<double>, 8, 8> chess_bloch_matrix(double k1,
                                                             double k2,
                                                             double t);
BlochGrid chess_grid(int L, int a, int b);  // n1 < L/4, n2 < L/2
PartitionPair chess_partition(int L, int a, int b, double beta, double t);

// Free-energy cost per plaquette of the staggered background relative to the
// optimal pi-flux phase, at finite (beta, L); requires L % 4 == 0.
double monopole_mass(double beta, int L, double t, Parity parity);

// Its beta, L -> infinity limit by quadrature (proportional to t).
double monopole_mass_infinity(double t);

// max_{a,b} |E0(a,b) - E0(ref)| over the four boundary-flux phases; the
// reference is (-1,-1) for L % 4 == 0 and (1,1) otherwise.
double degeneracy_gap(int L, double t);

}  // namespace z2flux
