#include "wh/theta.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wh {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTailTol = 1e-10;

const std::complex<double> kI(0.0, 1.0);

double tail_estimate(double im_tau, double im_z_abs, int K) {
  // 2 sum_{k>K} e^{-pi Im(tau) k^2 + 2 pi |Im z| k}, summed term by term until
  // the term ratio drops below 1/2, then closed off geometrically
  double acc = 0.0;
  double k = static_cast<double>(K) + 1.0;
  double term = std::exp(-kPi * im_tau * k * k + 2.0 * kPi * im_z_abs * k);
  for (int steps = 0; steps < 200; ++steps) {
    double ratio = std::exp(-kPi * im_tau * (2.0 * k + 1.0) + 2.0 * kPi * im_z_abs);
    if (ratio < 0.5) return 2.0 * (acc + term + term * ratio / (1.0 - ratio));
    acc += term;
    k += 1.0;
    term = std::exp(-kPi * im_tau * k * k + 2.0 * kPi * im_z_abs * k);
  }
  return std::numeric_limits<double>::infinity();
}

[[noreturn]] void throw_tail(double bound, int K) {
  std::ostringstream os;
  os << "series tail bound " << bound << " exceeds " << kTailTol
     << " at truncation " << K << "; raise the truncation";
  throw TailBound(os.str());
}

}  // namespace

LatticeParams::LatticeParams(std::complex<double> tau_, int trunc_)
    : tau(tau_), trunc(trunc_) {
  if (!(tau.imag() > 0.0))
    throw std::invalid_argument("tau must have positive imaginary part");
  if (trunc < 1) throw std::invalid_argument("truncation must be at least 1");
}

ThetaCharacteristic::ThetaCharacteristic(Fraction a_, Fraction b_, int n_)
    : a(a_), b(b_), n(n_) {
  if (n <= 0) throw std::invalid_argument("characteristic order must be positive");
  if ((static_cast<long long>(n) * a.num) % a.den != 0 ||
      (static_cast<long long>(n) * b.num) % b.den != 0)
    throw std::invalid_argument("n*a and n*b must be integers");
}

ThetaValue theta_series(std::complex<double> z, const LatticeParams& lp) {
  double bound = tail_estimate(lp.tau.imag(), std::abs(z.imag()), lp.trunc);
  if (!(bound <= kTailTol)) throw_tail(bound, lp.trunc);
  std::complex<double> acc = 0.0;
  for (int k = -lp.trunc; k <= lp.trunc; ++k) {
    double kk = static_cast<double>(k);
    acc += std::exp(kI * kPi * (kk * kk * lp.tau + 2.0 * kk * z));
  }
  return {acc, bound};
}

ThetaValue theta_char(std::complex<double> z, const ThetaCharacteristic& c,
                      const LatticeParams& lp) {
  double a = c.a.to_double();
  double b = c.b.to_double();
  std::complex<double> pre =
      std::exp(kI * kPi * (a * a * lp.tau + 2.0 * a * (z + b)));
  ThetaValue inner = theta_series(z + b + lp.tau * a, lp);
  double bound = std::abs(pre) * inner.tail_bound;
  if (!(bound <= kTailTol)) throw_tail(bound, lp.trunc);
  return {pre * inner.value, bound};
}

double action_check(const ThetaCharacteristic& c, const Fraction& shift_a,
                    const Fraction& shift_b, const LatticeParams& lp,
                    const std::vector<std::complex<double>>& samples) {
  ThetaCharacteristic b_shifted(c.a, c.b + shift_b, c.n);
  ThetaCharacteristic a_shifted(c.a + shift_a, c.b, c.n);
  double sa = shift_a.to_double();
  double sb = shift_b.to_double();
  std::complex<double> t_phase =
      std::exp(-2.0 * kPi * kI * (c.b * shift_a).to_double());
  double worst = 0.0;
  for (std::complex<double> z : samples) {
    std::complex<double> s_lhs = theta_char(z + sb, c, lp).value;
    std::complex<double> s_rhs = theta_char(z, b_shifted, lp).value;
    worst = std::max(worst, std::abs(s_lhs - s_rhs));

    std::complex<double> t_pre =
        std::exp(kI * kPi * (sa * sa * lp.tau + 2.0 * sa * z));
    std::complex<double> t_lhs = t_pre * theta_char(z + lp.tau * sa, c, lp).value;
    std::complex<double> t_rhs = t_phase * theta_char(z, a_shifted, lp).value;
    worst = std::max(worst, std::abs(t_lhs - t_rhs));
  }
  return worst;
}

double quasi_periodicity_check(const ThetaCharacteristic& c, long long x,
                               long long y, const LatticeParams& lp,
                               const std::vector<std::complex<double>>& samples) {
  ThetaCharacteristic shifted(c.a + Fraction(x, 1), c.b + Fraction(y, 1), c.n);
  std::complex<double> phase = PhaseExp(Fraction(c.a.num * y, c.a.den)).value();
  double worst = 0.0;
  for (std::complex<double> z : samples) {
    std::complex<double> lhs = theta_char(z, shifted, lp).value;
    std::complex<double> rhs = phase * theta_char(z, c, lp).value;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<std::complex<double>> default_sample_points() {
  return {{0.0, 0.0}, {0.1, 0.0}, {0.3, 0.2}, {-0.25, 0.1}, {0.5, 0.5}};
}

std::pair<MonomialMatrix, MonomialMatrix> induced_characteristic_action(int n) {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  const int dim = n * n;
  std::vector<int> perm_s(dim), perm_t(dim);
  std::vector<PhaseExp> ph_s(dim), ph_t(dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int col = i * n + j;
      // plain shift: (i, j) -> (i, j+1), picking up e^{2 pi i i/n} on wrap
      perm_s[col] = i * n + (j + 1) % n;
      ph_s[col] = (j + 1 == n) ? PhaseExp(i, n) : PhaseExp();
      // tau shift: (i, j) -> (i+1, j) with phase e^{-2 pi i j/n^2}
      perm_t[col] = ((i + 1) % n) * n + j;
      ph_t[col] = PhaseExp(((dim - j) % dim), dim);
    }
  }
  return {MonomialMatrix(dim, std::move(perm_s), std::move(ph_s)),
          MonomialMatrix(dim, std::move(perm_t), std::move(ph_t))};
}

double induced_action_residual(int n, const LatticeParams& lp,
                               const std::vector<std::complex<double>>& samples) {
  auto [ms, mt] = induced_characteristic_action(n);
  auto characteristic = [&](int idx) {
    return ThetaCharacteristic(Fraction(idx / n, n), Fraction(idx % n, n), n);
  };
  double sa = 1.0 / n;
  double worst = 0.0;
  for (int col = 0; col < n * n; ++col) {
    ThetaCharacteristic src = characteristic(col);
    ThetaCharacteristic s_dst = characteristic(ms.perm[col]);
    ThetaCharacteristic t_dst = characteristic(mt.perm[col]);
    std::complex<double> s_ph = ms.phases[col].value();
    std::complex<double> t_ph = mt.phases[col].value();
    for (std::complex<double> z : samples) {
      std::complex<double> s_lhs = theta_char(z + sa, src, lp).value;
      std::complex<double> s_rhs = s_ph * theta_char(z, s_dst, lp).value;
      worst = std::max(worst, std::abs(s_lhs - s_rhs));

      std::complex<double> t_pre =
          std::exp(kI * kPi * (sa * sa * lp.tau + 2.0 * sa * z));
      std::complex<double> t_lhs = t_pre * theta_char(z + lp.tau * sa, src, lp).value;
      std::complex<double> t_rhs = t_ph * theta_char(z, t_dst, lp).value;
      worst = std::max(worst, std::abs(t_lhs - t_rhs));
    }
  }
  return worst;
}

}  // namespace wh
