#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "wh/exactcore.hpp"

namespace wh {

// Truncated-series tail larger than the certification threshold.
struct TailBound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LatticeParams {
  std::complex<double> tau;
  int trunc;

  LatticeParams(std::complex<double> tau_, int trunc_);
};

struct ThetaValue {
  std::complex<double> value;
  double tail_bound;
};

// Characteristic (a, b) with n*a and n*b integers.
struct ThetaCharacteristic {
  Fraction a;
  Fraction b;
  int n;

  ThetaCharacteristic(Fraction a_, Fraction b_, int n_);
};

// sum over |k| <= K of e^{pi i k^2 tau + 2 pi i k z}; the returned tail bound
// 2 sum_{k>K} e^{-pi Im(tau) k^2 + 2 pi |Im z| k} is certified to be at most
// 1e-10, otherwise TailBound is thrown and K must be raised.
ThetaValue theta_series(std::complex<double> z, const LatticeParams& lp);

// e^{pi i a^2 tau + 2 pi i a (z + b)} * theta(z + b + tau a)
ThetaValue theta_char(std::complex<double> z, const ThetaCharacteristic& c,
                      const LatticeParams& lp);

// Max residual over the samples of both translation laws applied to c:
// plain shift by shift_b against the characteristic (a, b + shift_b), and the
// tau-direction shift by shift_a against e^{-2 pi i b shift_a} (a + shift_a, b).
double action_check(const ThetaCharacteristic& c, const Fraction& shift_a,
                    const Fraction& shift_b, const LatticeParams& lp,
                    const std::vector<std::complex<double>>& samples);

// Max residual of theta_{a+x,b+y} = e^{2 pi i a y} theta_{a,b} for integers x, y.
double quasi_periodicity_check(const ThetaCharacteristic& c, long long x,
                               long long y, const LatticeParams& lp,
                               const std::vector<std::complex<double>>& samples);

std::vector<std::complex<double>> default_sample_points();

// Matrices of the two 1/n translations on the n^2 characteristics
// (i/n, j/n), flat index i*n + j; returned as (plain-shift, tau-shift).
std::pair<MonomialMatrix, MonomialMatrix> induced_characteristic_action(int n);

// Certifies the matrices above against direct function evaluation: max over
// characteristics, generators, and samples of |shifted theta - matrix image|.
double induced_action_residual(int n, const LatticeParams& lp,
                               const std::vector<std::complex<double>>& samples);

}  // namespace wh
