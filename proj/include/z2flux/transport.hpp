#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <string>

#include "z2flux/bloch.hpp"

namespace z2flux {

// (e^{-i p.xi} - 1) / (-i p.xi); 1 when p.xi = 0.
std::complex<double> eta(const std::array<double, 2>& xi,
                         const std::array<double, 2>& p);

// Quadratic operator block in the two-site cell basis: the operator is
// sum_k c^+_{k-p} block(k) c_k on orthonormal momentum modes.
struct MomentumBlock {
  std::array<double, 2> p{0.0, 0.0};
  std::function<Eigen::Matrix2cd(double, double)> block;
};

// Paramagnetic current j_mu(k-p, k) of the uniform pi-flux cell Hamiltonian;
// at p = 0 it reduces to the band velocity q * dh/dk_mu.
MomentumBlock current_block(int mu, const std::array<double, 2>& p, double t,
                            double q);

// Diamagnetic two-photon block for momenta (p, -p), with the sign fixed by
// the lattice continuity equation (see ward_check).
MomentumBlock diamagnetic_block(int mu, int nu, const std::array<double, 2>& p,
                                double t, double q);

// (1/L^2) int_0^beta ds <A(s); B> over the (a,b) momentum grid. Requires
// A.p == -B.p and p on the (2pi/L) lattice; odd parity requires a zero-mode
// free grid.
double kubo_static(const MomentumBlock& A, const MomentumBlock& B, int L,
                   double beta, double t, int a, int b,
                   Parity parity = Parity::even, unsigned threads = 0);

// One-body thermal expectation (1/L^2) <sum_k c^+_k M(k) c_k>.
double one_body_expectation(const MomentumBlock& M, int L, double beta,
                            double t, int a, int b,
                            Parity parity = Parity::even, unsigned threads = 0);

struct WardReport {
  double diamagnetic = 0.0;  // <K_11(p,-p)>/L^2
  double kubo = 0.0;         // (1/L^2) int <J_1(-p,s); J_1(p)>
  double residual = 0.0;     // |diamagnetic + kubo| / max(|diamagnetic|, eps)
  bool passed = false;
};

// Continuity-equation identity at p = (2 pi m / L, 0):
// <K_11(p,-p)> = -int_0^beta <J_1(-p,s); J_1(p)> ds.
WardReport ward_check(int L, double beta, double t, int m, int a = -1,
                      int b = -1, unsigned threads = 0);

struct ResponseSample {
  double p2 = 0.0;
  double value = 0.0;
  std::string method;
  int L = 0;
  double beta = 0.0;
  double t = 0.0;
  double q = 0.0;
};

// chi(p2) = (Kubo(0,p2) - Kubo(0)) / p2^2 at p2 = 2 pi m / L, evaluated on
// the zero-mode-free (-1,-1) grid at even parity.
ResponseSample susceptibility_lattice(int m, int L, double beta, double t,
                                      double q, unsigned threads = 0);

// Same response from the infinite-volume band integral: closed-form
// frequency integral per band pair, then adaptive k-quadrature with polar
// refinement around the two conical points.
ResponseSample susceptibility_continuum(double p2, double delta, double t,
                                        double q);

// Disc integral of the frequency/k1-reduced cone response profile, with the
// transverse momentum integral done numerically; equals
// arctan(2R)/(16 pi) in the scaling limit.
double dirac_subtracted_disc(double R);

// Cone slope |grad e_-| at the band-touching points (forward differences at
// h = 1e-5, eight directions; returns the mean and writes the spread).
double dirac_velocity(double t, double* isotropy_spread = nullptr);

}  // namespace z2flux
