#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "wh/theta.hpp"

using namespace wh;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
const std::complex<double> kI(0.0, 1.0);

// wide direct summation used as the reference for every series value
std::complex<double> reference_theta(std::complex<double> z, std::complex<double> tau) {
  std::complex<double> acc = 0.0;
  for (int k = -100; k <= 100; ++k) {
    double kk = k;
    acc += std::exp(kI * kPi * (kk * kk * tau + 2.0 * kk * z));
  }
  return acc;
}

// the four classical series with nome q = e^{i pi tau}, summed independently
// of the characteristic-based implementation
std::complex<double> jacobi(int which, std::complex<double> z, std::complex<double> tau) {
  std::complex<double> acc = 0.0;
  switch (which) {
    case 1:
      for (int k = 0; k <= 100; ++k) {
        double m = k + 0.5;
        acc += 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * std::exp(kI * kPi * tau * m * m) *
               std::sin((2.0 * k + 1.0) * kPi * z);
      }
      return acc;
    case 2:
      for (int k = 0; k <= 100; ++k) {
        double m = k + 0.5;
        acc += 2.0 * std::exp(kI * kPi * tau * m * m) * std::cos((2.0 * k + 1.0) * kPi * z);
      }
      return acc;
    case 3:
      acc = 1.0;
      for (int k = 1; k <= 100; ++k)
        acc += 2.0 * std::exp(kI * kPi * tau * static_cast<double>(k) * static_cast<double>(k)) *
               std::cos(2.0 * k * kPi * z);
      return acc;
    default:
      acc = 1.0;
      for (int k = 1; k <= 100; ++k)
        acc += 2.0 * (k % 2 == 0 ? 1.0 : -1.0) *
               std::exp(kI * kPi * tau * static_cast<double>(k) * static_cast<double>(k)) *
               std::cos(2.0 * k * kPi * z);
      return acc;
  }
}

}  // namespace

TEST_CASE("series values match a wide reference sum with a certified tail") {
  LatticeParams lp({0.0, 1.0}, 40);
  for (std::complex<double> z : default_sample_points()) {
    ThetaValue v = theta_series(z, lp);
    CHECK(std::abs(v.value - reference_theta(z, lp.tau)) < 1e-12);
    CHECK(v.tail_bound <= 1e-10);
  }
  CHECK(theta_series(0.0, lp).value.real() == doctest::Approx(1.0864348112).epsilon(1e-10));
  CHECK(std::abs(theta_series(0.0, lp).value.imag()) < 1e-14);

  LatticeParams wide({0.3, 1.1}, 40);
  for (std::complex<double> z : default_sample_points())
    CHECK(std::abs(theta_series(z, wide).value - reference_theta(z, wide.tau)) < 1e-12);
}

TEST_CASE("unit shifts leave the series fixed and lattice shifts cost the known factor") {
  LatticeParams lp({0.0, 1.0}, 40);
  for (std::complex<double> z : default_sample_points()) {
    CHECK(std::abs(theta_series(z + 1.0, lp).value - theta_series(z, lp).value) < 1e-12);
    std::complex<double> factor = std::exp(-kI * kPi * lp.tau - 2.0 * kPi * kI * z);
    CHECK(std::abs(theta_series(z + lp.tau, lp).value - factor * theta_series(z, lp).value) <
          1e-10);
  }
}

TEST_CASE("uncertifiable tails are refused") {
  CHECK_THROWS_AS(theta_series(0.0, LatticeParams({0.0, 1e-6}, 40)), TailBound);
  CHECK_THROWS_AS(theta_series({0.5, 0.5}, LatticeParams({0.0, 1.0}, 1)), TailBound);
  CHECK_THROWS_AS(theta_char({0.0, 3.0}, ThetaCharacteristic(Fraction(0, 1), Fraction(0, 1), 1),
                             LatticeParams({0.0, 1.0}, 2)),
                  TailBound);
}

TEST_CASE("parameter validation rejects bad lattices and characteristics") {
  CHECK_THROWS_AS(LatticeParams({0.0, 0.0}, 40), std::invalid_argument);
  CHECK_THROWS_AS(LatticeParams({0.0, -1.0}, 40), std::invalid_argument);
  CHECK_THROWS_AS(LatticeParams({0.0, 1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaCharacteristic(Fraction(1, 2), Fraction(1, 3), 2), std::invalid_argument);
  CHECK_THROWS_AS(ThetaCharacteristic(Fraction(1, 2), Fraction(0, 1), 0), std::invalid_argument);
  CHECK_NOTHROW(ThetaCharacteristic(Fraction(1, 2), Fraction(1, 2), 2));
  CHECK_NOTHROW(ThetaCharacteristic(Fraction(2, 3), Fraction(1, 3), 3));
}

TEST_CASE("the trivial characteristic reproduces the plain series") {
  LatticeParams lp({0.0, 1.0}, 40);
  ThetaCharacteristic triv(Fraction(0, 1), Fraction(0, 1), 1);
  for (std::complex<double> z : default_sample_points())
    CHECK(std::abs(theta_char(z, triv, lp).value - theta_series(z, lp).value) < 1e-14);
}

TEST_CASE("half characteristics are the classical jacobi functions") {
  LatticeParams lp({0.0, 1.0}, 40);
  Fraction h(1, 2), zero(0, 1);
  ThetaCharacteristic c00(zero, zero, 2), c01(zero, h, 2), c10(h, zero, 2), c11(h, h, 2);
  for (std::complex<double> z : {std::complex<double>(0.0, 0.0),
                                 std::complex<double>(0.1, 0.0),
                                 std::complex<double>(0.3, 0.2)}) {
    CHECK(std::abs(theta_char(z, c00, lp).value - jacobi(3, z, lp.tau)) < 1e-10);
    CHECK(std::abs(theta_char(z, c01, lp).value - jacobi(4, z, lp.tau)) < 1e-10);
    CHECK(std::abs(theta_char(z, c10, lp).value - jacobi(2, z, lp.tau)) < 1e-10);
    CHECK(std::abs(theta_char(z, c11, lp).value + jacobi(1, z, lp.tau)) < 1e-10);
  }
  // the odd member vanishes at the origin
  CHECK(std::abs(theta_char(0.0, c11, lp).value) < 1e-12);
}

TEST_CASE("translation laws hold for every characteristic at small order") {
  LatticeParams lp({0.0, 1.0}, 40);
  auto samples = default_sample_points();
  for (int n : {2, 3}) {
    Fraction shift(1, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ThetaCharacteristic c(Fraction(i, n), Fraction(j, n), n);
        CHECK(action_check(c, shift, shift, lp, samples) < 1e-10);
        CHECK(quasi_periodicity_check(c, 1, 1, lp, samples) < 1e-10);
      }
  }
}

TEST_CASE("zero shifts give zero residual") {
  LatticeParams lp({0.0, 1.0}, 40);
  ThetaCharacteristic c(Fraction(1, 3), Fraction(2, 3), 3);
  CHECK(action_check(c, Fraction(0, 1), Fraction(0, 1), lp, default_sample_points()) < 1e-14);
}

TEST_CASE("integer characteristic shifts produce explicit signs") {
  LatticeParams lp({0.0, 1.0}, 40);
  // shifting b by one at a = 1/2 flips the sign
  ThetaCharacteristic base(Fraction(1, 2), Fraction(0, 1), 2);
  ThetaCharacteristic shifted(Fraction(1, 2), Fraction(1, 1), 2);
  for (std::complex<double> z : default_sample_points())
    CHECK(std::abs(theta_char(z, shifted, lp).value + theta_char(z, base, lp).value) < 1e-11);
}

TEST_CASE("induced shift matrices obey the exact commutation relation") {
  for (int n : {2, 3, 4}) {
    auto [ms, mt] = induced_characteristic_action(n);
    MonomialMatrix st = monomial_compose(ms, mt);
    MonomialMatrix ts = monomial_compose(mt, ms);
    MonomialMatrix ts_scaled = ts;
    for (auto& p : ts_scaled.phases) p = p * PhaseExp(1, n * n);
    CHECK(st == ts_scaled);

    // n applications of the plain shift wind each characteristic once
    MonomialMatrix sn = monomial_pow(ms, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(sn.perm[i * n + j] == i * n + j);
        CHECK(sn.phases[i * n + j] == PhaseExp(i, n));
      }
    CHECK(monomial_order(ms) == static_cast<long long>(n) * n);
    CHECK(monomial_order(mt) == static_cast<long long>(n) * n);
  }
}

TEST_CASE("induced matrices certify against direct evaluation") {
  LatticeParams lp({0.0, 1.0}, 40);
  auto samples = default_sample_points();
  CHECK(induced_action_residual(2, lp, samples) < 1e-9);
  CHECK(induced_action_residual(3, lp, samples) < 1e-9);
}
