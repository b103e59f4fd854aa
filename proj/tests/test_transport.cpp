#include <cmath>
#include <complex>

#include "doctest.h"
#include "z2flux/transport.hpp"

using namespace z2flux;
using std::complex;

TEST_CASE("bond phase factor eta") {
  CHECK(eta({1, 0}, {0.0, 0.7}) == complex<double>(1.0, 0.0));
  const complex<double> v = eta({1, 0}, {M_PI, 0.0});
  CHECK(std::abs(v - complex<double>(0.0, -2.0 / M_PI)) < 1e-15);
  // continuous at small momenta
  CHECK(std::abs(eta({0, 1}, {0.0, 1e-9}) - 1.0) < 1e-8);
}

TEST_CASE("current block") {
  const double t = 1.0, q = 1.0;
  SUBCASE("transverse momentum block is diagonal with the listed phases") {
    const double p2 = 0.37;
    const MomentumBlock j = current_block(0, {0.0, p2}, t, q);
    for (double k1 : {0.3, 1.7, 4.4}) {
      const Eigen::Matrix2cd m = j.block(k1, 0.9);
      const complex<double> i(0, 1);
      const complex<double> aa =
          i * t * q * std::exp(-i * p2) *
          (std::exp(i * k1) - std::exp(-i * k1));
      const complex<double> bb =
          i * t * q * (std::exp(-i * k1) - std::exp(i * k1));
      CHECK(std::abs(m(0, 0) - aa) < 1e-14);
      CHECK(std::abs(m(1, 1) - bb) < 1e-14);
      CHECK(std::abs(m(0, 1)) < 1e-14);
      CHECK(std::abs(m(1, 0)) < 1e-14);
    }
  }
  SUBCASE("zero-momentum block is the band velocity") {
    const MomentumBlock j0 = current_block(0, {0.0, 0.0}, t, q);
    const MomentumBlock j1 = current_block(1, {0.0, 0.0}, t, q);
    const double h = 1e-6;
    // proper gauge: phases attached to absolute site positions, so the
    // derivative measures physical bond displacements (r_A = e2, r_B = 0)
    auto proper = [&](double k1, double k2) {
      Eigen::Matrix2cd d = Eigen::Matrix2cd::Identity();
      d(0, 0) = std::exp(std::complex<double>(0.0, -k2));
      return Eigen::Matrix2cd(d * bloch_h_pi(k1, k2, t) * d.adjoint());
    };
    for (double k1 : {0.4, 2.1}) {
      for (double k2 : {0.8, 2.9}) {
        const Eigen::Matrix2cd d0 =
            (bloch_h_pi(k1 + h, k2, t) - bloch_h_pi(k1 - h, k2, t)) /
            (2.0 * h);
        const Eigen::Matrix2cd d1 =
            (proper(k1, k2 + h) - proper(k1, k2 - h)) / (2.0 * h);
        Eigen::Matrix2cd dconj = Eigen::Matrix2cd::Identity();
        dconj(0, 0) = std::exp(std::complex<double>(0.0, k2));
        const Eigen::Matrix2cd j1_proper =
            dconj.adjoint() * j1.block(k1, k2) * dconj;
        CHECK((j0.block(k1, k2) - q * d0).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((j1_proper - q * d1).cwiseAbs().maxCoeff() < 1e-6);
      }
    }
  }
  SUBCASE("hermiticity pairing") {
    SplitMix64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
      const std::array<double, 2> p = {rng.uniform() - 0.5,
                                       rng.uniform() - 0.5};
      const std::array<double, 2> mp = {-p[0], -p[1]};
      const double k1 = 2 * M_PI * rng.uniform();
      const double k2 = 2 * M_PI * rng.uniform();
      const Eigen::Matrix2cd a = current_block(0, p, t, q).block(k1, k2);
      const Eigen::Matrix2cd b =
          current_block(0, mp, t, q).block(k1 - p[0], k2 - p[1]);
      CHECK((a - b.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("static response of the number operator") {
  // identity block at zero momentum: the particle-number susceptibility
  const int L = 8;
  const double beta = 2.0, t = 1.0;
  MomentumBlock number;
  number.p = {0.0, 0.0};
  number.block = [](double, double) {
    return Eigen::Matrix2cd(Eigen::Matrix2cd::Identity());
  };
  const double got =
      kubo_static(number, number, L, beta, t, -1, -1, Parity::even);
  // independent oracle: identity is band diagonal, so only the degenerate
  // kernel beta f (1-f) contributes, summed over the band energies
  double expected = 0.0;
  const double step = 2.0 * M_PI / L;
  for (int n1 = 0; n1 < L; ++n1) {
    for (int n2 = 0; n2 < L / 2; ++n2) {
      const double e =
          -pi_band_minus(step * (n1 + 0.5), step * (n2 + 0.5), t);
      for (double s : {-1.0, 1.0}) {
        const double f = 1.0 / (1.0 + std::exp(beta * s * e));
        expected += beta * f * (1.0 - f);
      }
    }
  }
  expected /= L * L;
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  // response vanishes linearly as beta -> 0
  const double tiny =
      kubo_static(number, number, L, 1e-4, t, -1, -1, Parity::even);
  const double tiny2 =
      kubo_static(number, number, L, 2e-4, t, -1, -1, Parity::even);
  CHECK(tiny2 == doctest::Approx(2.0 * tiny).epsilon(1e-3));
}

TEST_CASE("kubo preconditions") {
  const MomentumBlock j = current_block(0, {2.0 * M_PI / 8.0, 0.0}, 1.0, 1.0);
  const MomentumBlock jm = current_block(0, {-2.0 * M_PI / 8.0, 0.0}, 1.0, 1.0);
  CHECK_THROWS_AS(kubo_static(j, j, 8, 1.0, 1.0, -1, -1, Parity::even),
                  std::invalid_argument);  // momenta must be opposite
  const MomentumBlock off = current_block(0, {0.1234, 0.0}, 1.0, 1.0);
  const MomentumBlock offm = current_block(0, {-0.1234, 0.0}, 1.0, 1.0);
  CHECK_THROWS_AS(kubo_static(offm, off, 8, 1.0, 1.0, -1, -1, Parity::even),
                  std::invalid_argument);  // off-grid momentum
  CHECK_THROWS_AS(kubo_static(jm, j, 8, 1.0, 1.0, 1, 1, Parity::odd),
                  std::invalid_argument);  // zero modes at (1,1)
}

TEST_CASE("ward identity") {
  for (const auto& [L, beta] : std::vector<std::pair<int, double>>{
           {8, 2.0}, {16, 5.0}}) {
    const WardReport r = ward_check(L, beta, 1.0, 1);
    CHECK(r.passed);
    CHECK(r.residual <= 1e-8);
  }
  // both sides converge to a common small-momentum limit as L grows
  const WardReport a = ward_check(16, 2.0, 1.0, 1);
  const WardReport b = ward_check(32, 2.0, 1.0, 2);  // same p1
  CHECK(a.diamagnetic == doctest::Approx(b.diamagnetic).epsilon(1e-3));
}

TEST_CASE("diamagnetic block is transverse-momentum independent") {
  const double p2 = 2.0 * M_PI * 3.0 / 16.0;
  const double with_p = one_body_expectation(
      diamagnetic_block(0, 0, {0.0, p2}, 1.0, 1.0), 16, 2.0, 1.0, -1, -1);
  const double at_zero = one_body_expectation(
      diamagnetic_block(0, 0, {0.0, 0.0}, 1.0, 1.0), 16, 2.0, 1.0, -1, -1);
  CHECK(with_p == doctest::Approx(at_zero).epsilon(1e-14));
}

TEST_CASE("lattice susceptibility") {
  SUBCASE("frozen small-size value") {
    const ResponseSample s = susceptibility_lattice(2, 64, 250.0, 1.0, 1.0);
    CHECK(s.p2 * s.value == doctest::Approx(-0.194961).epsilon(1e-4));
    CHECK(s.value < 0.0);
  }
  SUBCASE("charge scaling") {
    const ResponseSample q1 = susceptibility_lattice(2, 32, 50.0, 1.0, 1.0);
    const ResponseSample q2 = susceptibility_lattice(2, 32, 50.0, 1.0, 2.0);
    CHECK(q2.value == doctest::Approx(4.0 * q1.value).epsilon(1e-12));
  }
  SUBCASE("momentum index zero is rejected") {
    CHECK_THROWS_AS(susceptibility_lattice(0, 32, 50.0, 1.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("continuum susceptibility") {
  const ResponseSample s = susceptibility_continuum(0.1, 0.35, 1.0, 1.0);
  CHECK(s.p2 * s.value == doctest::Approx(-0.2378).epsilon(0.02));
  CHECK(s.value < 0.0);
  CHECK_THROWS_AS(susceptibility_continuum(0.5, 0.35, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("cone-profile disc integral matches the arctangent") {
  for (double R : {5.0, 17.5}) {
    CHECK(std::abs(dirac_subtracted_disc(R) -
                   std::atan(2.0 * R) / (16.0 * M_PI)) < 1e-4);
  }
}

TEST_CASE("cone velocity") {
  double spread = 0.0;
  const double v = dirac_velocity(1.0, &spread);
  CHECK(std::abs(v - 2.0) < 1e-4);
  CHECK(spread < 1e-6);
  CHECK(std::abs(dirac_velocity(3.0) - 6.0) < 3e-4);
}
