#pragma once

#include <Eigen/Dense>

#include "z2flux/lattice.hpp"

namespace z2flux {

// Single-particle hopping matrix h(x;y) = -t * sigma_(x,mu) on nearest
// neighbours; site index y*L + x.
Eigen::MatrixXd hopping_matrix(const GaugeConfig& cfg, double t);

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
  int zero_modes = 0;
  double zero_tolerance = 0.0;
};

// Dense symmetric eigendecomposition; throws if the input is not symmetric.
Spectrum eigensolve(const Eigen::MatrixXd& h);

// Eigenvalues only (keeps the hot enumeration paths lean).
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& h);

int count_zero_modes(const Eigen::VectorXd& values);

// Free-fermion traces at half filling in stable (sign, log) form:
//   Z+ = prod_i (1 + e^{-beta lambda_i}),  Z- = prod_i (1 - e^{-beta lambda_i}).
struct PartitionPair {
  double log_z_plus = 0.0;
  int z_minus_sign = 0;          // 0 marks Z- = 0 (zero modes present)
  double log_abs_z_minus = 0.0;  // -inf when z_minus_sign == 0
  double beta = 0.0;

  std::string to_json() const;
};

PartitionPair partition_pair(const Eigen::VectorXd& values, double beta);

// beta -> infinity limit of -(1/beta) log Z^±: the filled negative modes.
double ground_energy(const Eigen::VectorXd& values);

// -(sum of plaquette fluxes); +L^2 when every plaquette carries flux pi.
double gauge_energy(const FluxSector& sector);

// Tr (-1)^N e^{-beta H} O for a quadratic observable O (matrix given in the
// eigenbasis of h); vanishes identically with two or more zero modes.
double odd_trace_quadratic(const Spectrum& spectrum, const Eigen::MatrixXd& O,
                           double beta);

// log(1 + e^u) and log|1 - e^u| without overflow for |u| up to ~700.
double log1p_exp(double u);
double log_abs_1m_exp(double u);

}  // namespace z2flux
