#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "z2flux/spectral.hpp"

using namespace z2flux;

TEST_CASE("hopping matrix of the free configuration diagonalizes to plane "
          "waves") {
  const int L = 4;
  const Eigen::MatrixXd h = hopping_matrix(GaugeConfig::all_plus(L), 1.0);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < h.rows(); ++i) {
    CHECK(h.row(i).cwiseAbs().sum() == doctest::Approx(4.0));
  }
  // plane-wave oracle: -2(cos k1 + cos k2) over the integer momentum grid
  std::vector<double> expected;
  for (int n1 = 0; n1 < L; ++n1) {
    for (int n2 = 0; n2 < L; ++n2) {
      expected.push_back(-2.0 * (std::cos(2.0 * M_PI * n1 / L) +
                                 std::cos(2.0 * M_PI * n2 / L)));
    }
  }
  std::sort(expected.begin(), expected.end());
  const Spectrum s = eigensolve(h);
  for (int i = 0; i < 16; ++i) {
    CHECK(s.values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("spectra are symmetric about zero") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd ev =
        eigenvalues_only(hopping_matrix(GaugeConfig::random(4, rng), 1.0));
    const int n = static_cast<int>(ev.size());
    for (int i = 0; i < n; ++i) {
      CHECK(ev[i] == doctest::Approx(-ev[n - 1 - i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("eigensolve contract") {
  Eigen::MatrixXd two(2, 2);
  two << 0.0, -1.5, -1.5, 0.0;
  const Spectrum s = eigensolve(two);
  CHECK(s.values[0] == doctest::Approx(-1.5));
  CHECK(s.values[1] == doctest::Approx(1.5));

  SplitMix64 rng(31);
  const Eigen::MatrixXd h = hopping_matrix(GaugeConfig::random(4, rng), 1.0);
  const Spectrum full = eigensolve(h);
  const Eigen::MatrixXd rebuilt =
      full.vectors * full.values.asDiagonal() * full.vectors.transpose();
  CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-9);
  for (int i = 0; i < full.values.size(); ++i) {
    const Eigen::VectorXd r =
        h * full.vectors.col(i) - full.values[i] * full.vectors.col(i);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-10 * h.cwiseAbs().maxCoeff());
  }

  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 2.0, 0.0;
  CHECK_THROWS_AS(eigensolve(bad), std::invalid_argument);
}

TEST_CASE("partition pair on tiny spectra") {
  SUBCASE("two modes") {
    Eigen::VectorXd ev(2);
    ev << -1.0, 1.0;
    const PartitionPair p = partition_pair(ev, 1.0);
    const double e = std::exp(1.0);
    CHECK(p.log_z_plus ==
          doctest::Approx(std::log((1 + e) * (1 + 1 / e))).epsilon(1e-14));
    CHECK(p.z_minus_sign == -1);
    CHECK(p.log_abs_z_minus ==
          doctest::Approx(std::log(std::abs((1 - e) * (1 - 1 / e))))
              .epsilon(1e-13));
    // (1-e)(1-1/e) = 2 - e - 1/e
    CHECK(-std::exp(p.log_abs_z_minus) ==
          doctest::Approx(2.0 - e - 1.0 / e).epsilon(1e-13));
  }
  SUBCASE("zero mode kills the odd trace") {
    Eigen::VectorXd ev(3);
    ev << -2.0, 0.0, 2.0;
    const PartitionPair p = partition_pair(ev, 1.7);
    CHECK(p.z_minus_sign == 0);
    CHECK(std::isinf(p.log_abs_z_minus));
  }
  SUBCASE("single zero mode at beta=2") {
    Eigen::VectorXd ev(1);
    ev << 0.0;
    CHECK(partition_pair(ev, 2.0).log_z_plus ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
}

TEST_CASE("stable logs at extreme arguments") {
  CHECK(std::isfinite(log1p_exp(700.0)));
  CHECK(std::isfinite(log1p_exp(-700.0)));
  CHECK(std::isfinite(log_abs_1m_exp(700.0)));
  CHECK(std::isfinite(log_abs_1m_exp(-700.0)));
  CHECK(log1p_exp(700.0) == doctest::Approx(700.0));
  CHECK(log_abs_1m_exp(700.0) == doctest::Approx(700.0));
}

TEST_CASE("ground and gauge energies") {
  Eigen::VectorXd ev(2);
  ev << -1.0, 1.0;
  CHECK(ground_energy(ev) == doctest::Approx(-1.0));

  const FluxSector pi4 = FluxSector::uniform(4, -1, -1, -1);
  CHECK(gauge_energy(pi4) == doctest::Approx(16.0));
  CHECK(gauge_energy(FluxSector::uniform(4, 1)) == doctest::Approx(-16.0));
  FluxSector two_removed = FluxSector::uniform(4, -1, 1, 1);
  two_removed.set(0, 0, 1);
  two_removed.set(1, 0, 1);
  CHECK(gauge_energy(two_removed) == doctest::Approx(12.0));

  // uniform pi flux at L=4: every mode at +-2t
  const Eigen::VectorXd pi_ev =
      eigenvalues_only(hopping_matrix(representative(pi4), 1.0));
  CHECK(ground_energy(pi_ev) == doctest::Approx(-16.0).epsilon(1e-12));
  const Eigen::VectorXd pi11 = eigenvalues_only(
      hopping_matrix(representative(FluxSector::uniform(4, -1, 1, 1)), 1.0));
  CHECK(ground_energy(pi11) ==
        doctest::Approx(-8.0 - 4.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("odd traces of quadratic observables") {
  SUBCASE("single zero mode with the number operator") {
    Eigen::MatrixXd h(1, 1);
    h << 0.0;
    const Spectrum s = eigensolve(h);
    Eigen::MatrixXd O(1, 1);
    O << 1.0;
    CHECK(odd_trace_quadratic(s, O, 3.3) == doctest::Approx(-1.0));
  }
  SUBCASE("four zero modes annihilate any quadratic observable") {
    const Spectrum s = eigensolve(
        hopping_matrix(representative(FluxSector::uniform(4, -1, 1, 1)), 1.0));
    CHECK(s.zero_modes == 4);
    SplitMix64 rng(23);
    Eigen::MatrixXd O(16, 16);
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) O(i, j) = rng.uniform() - 0.5;
    }
    O = ((O + O.transpose()) / 2).eval();
    CHECK(odd_trace_quadratic(s, O, 2.0) == 0.0);
  }
  SUBCASE("two-mode brute force") {
    // direct Fock enumeration over occupations of two modes
    Eigen::MatrixXd h(2, 2);
    h << -0.7, 0.0, 0.0, 1.3;
    const Spectrum s = eigensolve(h);
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(2, 2);
    O(0, 0) = 0.4;
    O(1, 1) = -1.1;
    const double beta = 0.9;
    double brute = 0.0;
    for (int n0 = 0; n0 <= 1; ++n0) {
      for (int n1 = 0; n1 <= 1; ++n1) {
        brute += ((n0 + n1) % 2 ? -1.0 : 1.0) *
                 std::exp(-beta * (s.values[0] * n0 + s.values[1] * n1)) *
                 (O(0, 0) * n0 + O(1, 1) * n1);
      }
    }
    CHECK(odd_trace_quadratic(s, O, beta) ==
          doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("gauge invariance of spectra") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const GaugeConfig cfg = GaugeConfig::random(4, rng);
    std::vector<std::uint8_t> mask(16);
    for (auto& m : mask) m = rng.next() & 1;
    const Eigen::VectorXd a = eigenvalues_only(hopping_matrix(cfg, 1.0));
    const Eigen::VectorXd b =
        eigenvalues_only(hopping_matrix(gauge_transform(cfg, mask), 1.0));
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("odd partition function is non-negative on real configurations") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const GaugeConfig cfg = GaugeConfig::random(4, rng);
    const PartitionPair p =
        partition_pair(eigenvalues_only(hopping_matrix(cfg, 1.0)), 1.0);
    CHECK(p.z_minus_sign >= 0);
  }
}
