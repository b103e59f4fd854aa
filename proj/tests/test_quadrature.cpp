#include <cmath>

#include "doctest.h"
#include "z2flux/quadrature.hpp"

using namespace z2flux;

TEST_CASE("gauss rule integrates polynomials exactly") {
  GaussRule rule(4);
  double sum = 0.0, sum_w = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::pow(rule.nodes[i], 6);
    sum_w += rule.weights[i];
  }
  CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sum == doctest::Approx(2.0 / 7.0).epsilon(1e-13));  // int x^6 on [-1,1]
}

TEST_CASE("gauss_1d") {
  const double v = gauss_1d([](double x) { return std::sin(x); }, 0, M_PI, 4, 12);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tensor rule on a periodic product") {
  const double v = tensor_gauss_2d_refined(
      [](double x, double y) {
        return std::sin(x) * std::sin(x) * std::cos(y) * std::cos(y);
      },
      0, 2 * M_PI, 0, 2 * M_PI, 1e-10);
  CHECK(v == doctest::Approx(M_PI * M_PI).epsilon(1e-9));
}

TEST_CASE("adaptive rule handles an integrable 1/r corner") {
  const double v = adaptive_gauss_2d(
      [](double x, double y) { return 1.0 / std::sqrt(x * x + y * y); }, 0, 1,
      0, 1, 1e-7);
  CHECK(v == doctest::Approx(2.0 * std::log(1.0 + std::sqrt(2.0)))
                 .epsilon(1e-5));
}
