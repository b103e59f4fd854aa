#include <cmath>
#include <complex>

#include "doctest.h"
#include "z2flux/bloch.hpp"
#include "z2flux/lattice.hpp"
#include "z2flux/rng.hpp"

using namespace z2flux;

namespace {

PartitionPair real_space_pi(int L, int a, int b, double beta, double t) {
  const FluxSector s = FluxSector::uniform(L, -1, a, b);
  return partition_pair(eigenvalues_only(hopping_matrix(representative(s), t)),
                        beta);
}

}  // namespace

TEST_CASE("two-band Bloch matrix against the closed form") {
  SUBCASE("corner values") {
    const Eigen::Matrix2cd h0 = bloch_h_pi(0, 0, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h0);
    CHECK(es.eigenvalues()[0] ==
          doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(bloch_h_pi(M_PI / 2, M_PI / 2, 1.0).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("random momenta") {
    SplitMix64 rng(2);
    for (int i = 0; i < 1000; ++i) {
      const double k1 = 2 * M_PI * rng.uniform();
      const double k2 = 2 * M_PI * rng.uniform();
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
          bloch_h_pi(k1, k2, 1.0));
      CHECK(std::abs(es.eigenvalues()[0] - pi_band_minus(k1, k2, 1.0)) <
            1e-12);
      CHECK(std::abs(es.eigenvalues()[1] + pi_band_minus(k1, k2, 1.0)) <
            1e-12);
    }
  }
  SUBCASE("pi periodicity in k1") {
    SplitMix64 rng(4);
    for (int i = 0; i < 100; ++i) {
      const double k1 = 2 * M_PI * rng.uniform();
      const double k2 = 2 * M_PI * rng.uniform();
      CHECK(pi_band_minus(k1 + M_PI, k2, 1.0) ==
            doctest::Approx(pi_band_minus(k1, k2, 1.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("momentum grids") {
  const BlochGrid g = BlochGrid::make(4, 1, 1);
  CHECK(g.points.size() == 8);
  bool has_cone = false;
  for (const auto& k : g.points) {
    if (std::abs(k[0] - M_PI / 2) < 1e-12 && std::abs(k[1] - M_PI / 2) < 1e-12)
      has_cone = true;
  }
  CHECK(has_cone);  // L divisible by 4
  bool has_cone6 = false;
  for (const auto& k : BlochGrid::make(6, 1, 1).points) {
    if (std::abs(k[0] - M_PI / 2) < 1e-12 && std::abs(k[1] - M_PI / 2) < 1e-12)
      has_cone6 = true;
  }
  CHECK(!has_cone6);
}

TEST_CASE("band-sum ground energies") {
  CHECK(pi_ground_energy(4, -1, -1, 1.0) == doctest::Approx(-16.0));
  CHECK(pi_ground_energy(4, 1, 1, 1.0) ==
        doctest::Approx(-8.0 - 4.0 * std::sqrt(2.0)));
  // ordering of the four phases at L=8
  const double e_mm = pi_ground_energy(8, -1, -1, 1.0);
  const double e_pm = pi_ground_energy(8, 1, -1, 1.0);
  const double e_mp = pi_ground_energy(8, -1, 1, 1.0);
  const double e_pp = pi_ground_energy(8, 1, 1, 1.0);
  CHECK(e_mm < e_pm);
  CHECK(e_pm == doctest::Approx(e_mp).epsilon(1e-12));
  CHECK(e_pm < e_pp);
  CHECK(e_mm == doctest::Approx(-61.564145).epsilon(1e-7));
  CHECK(e_pp == doctest::Approx(-60.566481).epsilon(1e-7));
}

TEST_CASE("band sums match real-space diagonalization") {
  SUBCASE("zero modes at (1,1)") {
    CHECK(pi_partition(4, 1, 1, 1.0, 1.0).z_minus_sign == 0);
    CHECK(pi_partition(8, 1, 1, 1.0, 1.0).z_minus_sign == 0);
  }
  SUBCASE("flat bands at (-1,-1), L=4") {
    const PartitionPair p = pi_partition(4, -1, -1, 1.0, 1.0);
    const double expected =
        8.0 * (log1p_exp(-2.0) + log1p_exp(2.0));
    CHECK(p.log_z_plus == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("random couplings, all boundary fluxes, L in {4,8}") {
    SplitMix64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      const int L = trial % 2 ? 8 : 4;
      const double beta = 0.2 + 3.0 * rng.uniform();
      const double t = 0.5 + 2.0 * rng.uniform();
      for (int a : {1, -1}) {
        for (int b : {1, -1}) {
          const PartitionPair bands = pi_partition(L, a, b, beta, t);
          const PartitionPair real = real_space_pi(L, a, b, beta, t);
          CHECK(bands.log_z_plus ==
                doctest::Approx(real.log_z_plus).epsilon(1e-8));
          CHECK(bands.z_minus_sign == real.z_minus_sign);
          if (bands.z_minus_sign != 0) {
            CHECK(bands.log_abs_z_minus ==
                  doctest::Approx(real.log_abs_z_minus).epsilon(1e-8));
          }
        }
      }
    }
  }
}

TEST_CASE("staggered bands") {
  SUBCASE("corner values") {
    const auto bands = chess_bands(0, 0, 1.0);
    CHECK(bands[0] == doctest::Approx(-(1.0 + std::sqrt(3.0))).epsilon(1e-14));
    CHECK(bands[1] == doctest::Approx(-(std::sqrt(3.0) - 1.0)).epsilon(1e-14));
    CHECK(1.0 - 0.5 * std::sqrt(3.0) > 0.0);
  }
  SUBCASE("eight-band matrix is Hermitian and doubly degenerate") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
      const double k1 = 2 * M_PI * rng.uniform();
      const double k2 = 2 * M_PI * rng.uniform();
      const auto m = chess_bloch_matrix(k1, k2, 1.0);
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, 8, 8>>
          es(m);
      const auto bands = chess_bands(k1, k2, 1.0);
      for (int b = 0; b < 4; ++b) {
        CHECK(std::abs(es.eigenvalues()[2 * b] - bands[b]) < 1e-10);
        CHECK(std::abs(es.eigenvalues()[2 * b + 1] - bands[b]) < 1e-10);
      }
    }
  }
  SUBCASE("partition function matches a real-space staggered background") {
    SplitMix64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
      const int L = trial % 2 ? 8 : 4;
      const double beta = 0.3 + 2.0 * rng.uniform();
      const double t = 0.5 + 1.5 * rng.uniform();
      for (int a : {1, -1}) {
        for (int b : {1, -1}) {
          const PartitionPair bands = chess_partition(L, a, b, beta, t);
          const FluxSector s = FluxSector::staggered(L, a, b);
          const PartitionPair real = partition_pair(
              eigenvalues_only(hopping_matrix(representative(s), t)), beta);
          CHECK(bands.log_z_plus ==
                doctest::Approx(real.log_z_plus).epsilon(1e-8));
          CHECK(bands.z_minus_sign == real.z_minus_sign);
          CHECK(bands.log_abs_z_minus ==
                doctest::Approx(real.log_abs_z_minus).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("monopole mass") {
  SUBCASE("finite size approaches the quadrature limit") {
    const double d = monopole_mass(40.0, 64, 1.0, Parity::even);
    const double dinf = monopole_mass_infinity(1.0);
    CHECK(std::abs(d - dinf) < 0.01);
    CHECK(d == doctest::Approx(0.0361152).epsilon(1e-4));
  }
  SUBCASE("scales linearly in t at fixed beta*t") {
    const double d1 = monopole_mass(8.0, 16, 1.0, Parity::even);
    const double d2 = monopole_mass(4.0, 16, 2.0, Parity::even);
    CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-12));
  }
  SUBCASE("parities agree at large beta") {
    const double dp = monopole_mass(20.0, 16, 1.0, Parity::even);
    const double dm = monopole_mass(20.0, 16, 1.0, Parity::odd);
    CHECK(dp == doctest::Approx(dm).epsilon(1e-6));
  }
  SUBCASE("quadrature limit value and scaling") {
    const double kappa = monopole_mass_infinity(1.0);
    CHECK(kappa == doctest::Approx(0.0361083648).epsilon(3e-5));
    CHECK(monopole_mass_infinity(2.0) ==
          doctest::Approx(2.0 * kappa).epsilon(1e-14));
    // threshold where the limit reaches 1: root of (kappa t - 1)
    double lo = 1.0, hi = 100.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (monopole_mass_infinity(mid) < 1.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(1.0 / kappa).epsilon(1e-9));
  }
  SUBCASE("invalid size") {
    CHECK_THROWS_AS(monopole_mass(1.0, 6, 1.0, Parity::even),
                    std::invalid_argument);
  }
}

TEST_CASE("degeneracy gap") {
  CHECK(degeneracy_gap(4, 1.0) ==
        doctest::Approx(8.0 - 4.0 * std::sqrt(2.0)).epsilon(1e-12));
  double prev = degeneracy_gap(16, 1.0);
  for (int L : {32, 64, 128, 256, 512}) {
    const double g = degeneracy_gap(L, 1.0);
    CHECK(g < prev);
    prev = g;
  }
  // log L / L profile with the constant fitted at L=64
  const double g64 = degeneracy_gap(64, 1.0);
  const double c = g64 * 64.0 / std::log(64.0);
  CHECK(degeneracy_gap(512, 1.0) <= 1.5 * c * std::log(512.0) / 512.0);
}

TEST_CASE("conical dispersion near the band touching") {
  for (double qmag : {1e-2, 1e-3, 1e-4}) {
    const double ratio =
        std::abs(pi_band_minus(M_PI / 2 + qmag, M_PI / 2, 1.0)) /
        (2.0 * qmag);
    CHECK(std::abs(ratio - 1.0) < 2.0 * qmag);
  }
}
