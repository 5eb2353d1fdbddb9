#include <catch_amalgamated.hpp>

#include <cmath>

#include "cltlab/gaussian.hpp"
#include "helpers.hpp"

using namespace cltlab;

TEST_CASE("erfc against libm and known values") {
  CHECK(erfc_cody(0.0) == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(erfc_cody(0.3) == Catch::Approx(0.67137324054087255).epsilon(1e-14));
  CHECK(erfc_cody(2.5) == Catch::Approx(0.00040695201744495892).epsilon(1e-13));
  CHECK(erfc_cody(12.0) == Catch::Approx(1.3562611692059042e-64).epsilon(1e-12));
  CHECK(erfc_cody(-0.3) == Catch::Approx(2.0 - 0.67137324054087255).epsilon(1e-14));
  CHECK(erfc_cody(27.0) == 0.0);  // beyond the underflow threshold
  CHECK(erfc_cody(-27.0) == 2.0);

  // Dense sweep against the C library erfc.
  for (int i = -400; i <= 400; ++i) {
    double x = i * 0.02;
    double ref = std::erfc(x);
    double got = erfc_cody(x);
    if (ref > 0.0)
      CHECK(std::fabs(got - ref) / ref < 5e-14);
    else
      CHECK(got == 0.0);
  }
}

TEST_CASE("standard normal cdf known values") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(1.0) == Catch::Approx(0.84134474606854293).epsilon(1e-14));
  CHECK(std_normal_cdf(-1.0) == Catch::Approx(0.15865525393145707).epsilon(1e-14));
  CHECK(std_normal_cdf(1.96) == Catch::Approx(0.97500210485177952).epsilon(1e-14));
  CHECK(std_normal_cdf(-3.0) == Catch::Approx(0.0013498980316300957).epsilon(1e-13));
  CHECK(std_normal_cdf(-8.0) == Catch::Approx(6.2209605742718194e-16).epsilon(1e-12));
  CHECK(std_normal_cdf(6.0) == Catch::Approx(0.9999999990134123).epsilon(1e-15));
  CHECK(std_normal_pdf(0.0) == Catch::Approx(0.3989422804014327).epsilon(1e-15));
}

TEST_CASE("cdf symmetry identity") {
  for (int i = 0; i <= 800; ++i) {
    double z = i * 0.01;
    CHECK(std::fabs(std_normal_cdf(z) + std_normal_cdf(-z) - 1.0) <= 1e-12);
  }
}

TEST_CASE("scaled gaussian cdf") {
  gaussian_params g{0.0, 4.0};
  CHECK(gaussian_cdf(2.0, g) == Catch::Approx(0.84134474606854293).epsilon(1e-14));
  gaussian_params q{0.0, 0.25};
  CHECK(gaussian_cdf(-0.5, q) == Catch::Approx(0.15865525393145707).epsilon(1e-14));
  CHECK(gaussian_cdf(0.0, g) == 0.5);
}

TEST_CASE("fast cdf agrees with the quadrature validator") {
  for (double sigma2 : {0.25, 1.0, 4.0}) {
    gaussian_params g{0.0, sigma2};
    for (int i = -40; i <= 40; ++i) {
      double x = i * 0.2;
      CHECK(std::fabs(gaussian_cdf(x, g) - gaussian_cdf_quadrature(x, g)) <= 1e-12);
    }
  }
}

TEST_CASE("cdf agrees with an independent Simpson oracle") {
  // Integrate the density over [0, z] with Simpson's rule and compare.
  for (double z : {0.25, 0.9, 1.7, 3.1}) {
    double integral = testutil::simpson(std_normal_pdf, 0.0, z, 20000);
    CHECK(std_normal_cdf(z) == Catch::Approx(0.5 + integral).epsilon(1e-12));
  }
}
