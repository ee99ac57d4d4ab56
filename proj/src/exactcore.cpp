#include "wh/exactcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace wh {

namespace {

long long checked_lcm(long long a, long long b, long long cap) {
  long long g = std::gcd(a, b);
  long long q = a / g;
  if (q > cap / b + 1) throw OrderOverflow("order exceeds cap");
  long long r = q * b;
  if (r > cap) throw OrderOverflow("order exceeds cap");
  return r;
}

}  // namespace

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

Fraction Fraction::operator+(const Fraction& o) const {
  return Fraction(num * o.den + o.num * den, den * o.den);
}

Fraction Fraction::operator-(const Fraction& o) const {
  return Fraction(num * o.den - o.num * den, den * o.den);
}

Fraction Fraction::operator*(const Fraction& o) const {
  return Fraction(num * o.num, den * o.den);
}

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.num == 0) throw std::invalid_argument("Fraction: division by zero");
  return Fraction(num * o.den, den * o.num);
}

Fraction Fraction::operator-() const { return Fraction(-num, den); }

std::strong_ordering Fraction::operator<=>(const Fraction& o) const {
  return num * o.den <=> o.num * den;
}

std::string Fraction::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

PhaseExp::PhaseExp(long long numerator, long long denominator) {
  if (denominator == 0) throw std::invalid_argument("PhaseExp: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  numerator %= denominator;
  if (numerator < 0) numerator += denominator;
  long long g = std::gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  num_ = numerator;
  den_ = numerator == 0 ? 1 : denominator;
}

PhaseExp::PhaseExp(const Fraction& turn) : PhaseExp(turn.num, turn.den) {}

PhaseExp PhaseExp::operator*(const PhaseExp& o) const {
  return PhaseExp(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

PhaseExp PhaseExp::inverse() const { return PhaseExp(-num_, den_); }

PhaseExp PhaseExp::pow(long long k) const {
  long long r = k % den_;
  return PhaseExp(r * num_, den_);
}

std::strong_ordering PhaseExp::operator<=>(const PhaseExp& o) const {
  return num_ * o.den_ <=> o.num_ * den_;
}

std::complex<double> PhaseExp::value() const {
  double t = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return {std::cos(t), std::sin(t)};
}

std::string PhaseExp::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

MonomialMatrix::MonomialMatrix(int d, std::vector<int> p, std::vector<PhaseExp> ph)
    : dim(d), perm(std::move(p)), phases(std::move(ph)) {
  if (dim <= 0 || perm.size() != static_cast<std::size_t>(dim) ||
      phases.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("MonomialMatrix: inconsistent sizes");
  std::vector<char> seen(dim, 0);
  for (int r : perm) {
    if (r < 0 || r >= dim || seen[r]) throw std::invalid_argument("MonomialMatrix: perm is not a bijection");
    seen[r] = 1;
  }
}

MonomialMatrix MonomialMatrix::identity(int dim) {
  std::vector<int> p(dim);
  std::iota(p.begin(), p.end(), 0);
  return MonomialMatrix(dim, std::move(p), std::vector<PhaseExp>(dim));
}

bool MonomialMatrix::is_identity() const {
  for (int c = 0; c < dim; ++c)
    if (perm[c] != c || !phases[c].is_one()) return false;
  return true;
}

MonomialMatrix monomial_compose(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("monomial_compose: dimension mismatch");
  std::vector<int> perm(a.dim);
  std::vector<PhaseExp> phases(a.dim);
  for (int c = 0; c < a.dim; ++c) {
    int mid = b.perm[c];
    perm[c] = a.perm[mid];
    phases[c] = a.phases[mid] * b.phases[c];
  }
  return MonomialMatrix(a.dim, std::move(perm), std::move(phases));
}

MonomialMatrix monomial_inverse(const MonomialMatrix& a) {
  std::vector<int> perm(a.dim);
  std::vector<PhaseExp> phases(a.dim);
  for (int c = 0; c < a.dim; ++c) {
    perm[a.perm[c]] = c;
    phases[a.perm[c]] = a.phases[c].inverse();
  }
  return MonomialMatrix(a.dim, std::move(perm), std::move(phases));
}

MonomialMatrix monomial_pow(const MonomialMatrix& a, long long k) {
  if (k < 0) return monomial_inverse(monomial_pow(a, -k));
  MonomialMatrix result = MonomialMatrix::identity(a.dim);
  MonomialMatrix base = a;
  while (k > 0) {
    if (k & 1) result = monomial_compose(result, base);
    base = monomial_compose(base, base);
    k >>= 1;
  }
  return result;
}

long long monomial_order(const MonomialMatrix& a, long long cap) {
  std::vector<char> visited(a.dim, 0);
  long long order = 1;
  for (int start = 0; start < a.dim; ++start) {
    if (visited[start]) continue;
    long long len = 0;
    Fraction sum(0, 1);
    int c = start;
    do {
      visited[c] = 1;
      sum = sum + a.phases[c].turn();
      c = a.perm[c];
      ++len;
    } while (c != start);
    PhaseExp cycle_phase(sum);
    if (cycle_phase.denominator() > cap / len) throw OrderOverflow("order exceeds cap");
    long long cycle_order = len * cycle_phase.denominator();
    order = checked_lcm(order, cycle_order, cap);
  }
  return order;
}

Eigen::MatrixXcd monomial_to_dense(const MonomialMatrix& a) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a.dim, a.dim);
  for (int c = 0; c < a.dim; ++c) m(a.perm[c], c) = a.phases[c].value();
  return m;
}

namespace {

// smallest-denominator fraction inside [lo, hi] (Stern-Brocot descent)
std::pair<long long, long long> simplest_in_interval(double lo, double hi) {
  double ic = std::ceil(lo);
  if (ic <= hi) return {static_cast<long long>(ic), 1};
  double fl = std::floor(lo);
  auto [n, d] = simplest_in_interval(1.0 / (hi - fl), 1.0 / (lo - fl));
  return {static_cast<long long>(fl) * n + d, n};
}

}  // namespace

PhaseExp snap_turn(double angle, double tol, long long max_denom) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = angle / two_pi;
  t -= std::floor(t);
  double half_width = tol / two_pi;
  auto [num, den] = simplest_in_interval(t - half_width, t + half_width);
  if (den <= max_denom) {
    double diff = std::abs(t - static_cast<double>(num) / static_cast<double>(den));
    if (diff * two_pi <= tol) return PhaseExp(num, den);
  }
  throw PhaseNotRecognized("angle " + std::to_string(angle) +
                           " is not near a rational turn with denominator <= " +
                           std::to_string(max_denom));
}

MonomialMatrix extract_monomial(const Eigen::MatrixXcd& m, double tol, long long max_denom) {
  if (m.rows() != m.cols()) throw std::invalid_argument("extract_monomial: matrix not square");
  int dim = static_cast<int>(m.rows());
  std::vector<int> perm(dim, -1);
  std::vector<PhaseExp> phases(dim);
  std::vector<char> row_used(dim, 0);
  for (int c = 0; c < dim; ++c) {
    int hit = -1;
    for (int r = 0; r < dim; ++r) {
      if (std::abs(m(r, c)) > tol) {
        if (hit >= 0)
          throw NotMonomial("column " + std::to_string(c) + " has more than one large entry");
        hit = r;
      }
    }
    if (hit < 0) throw NotMonomial("column " + std::to_string(c) + " has no large entry");
    if (row_used[hit]) throw NotMonomial("row " + std::to_string(hit) + " hit twice");
    row_used[hit] = 1;
    perm[c] = hit;
    phases[c] = snap_turn(std::arg(m(hit, c)), tol, max_denom);
  }
  return MonomialMatrix(dim, std::move(perm), std::move(phases));
}

MonomialMatrix canonical_projective(const MonomialMatrix& a) {
  PhaseExp inv = a.phases[0].inverse();
  std::vector<PhaseExp> phases(a.dim);
  for (int c = 0; c < a.dim; ++c) phases[c] = a.phases[c] * inv;
  return MonomialMatrix(a.dim, a.perm, std::move(phases));
}

bool lexicographic_less(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.perm != b.perm) return a.perm < b.perm;
  for (int c = 0; c < a.dim; ++c) {
    auto cmp = a.phases[c] <=> b.phases[c];
    if (cmp != 0) return cmp < 0;
  }
  return false;
}

std::string monomial_key(const MonomialMatrix& a) {
  std::string key;
  key.reserve(a.dim * 12);
  key += std::to_string(a.dim);
  for (int c = 0; c < a.dim; ++c) {
    key += ',';
    key += std::to_string(a.perm[c]);
    key += ':';
    key += std::to_string(a.phases[c].numerator());
    key += '/';
    key += std::to_string(a.phases[c].denominator());
  }
  return key;
}

Eigen::VectorXcd CycleEigenvector::dense(int dim) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
  for (std::size_t t = 0; t < support.size(); ++t) v(support[t]) = amp * phases[t].value();
  return v;
}

std::vector<CycleEigenvector> monomial_eigenvectors(const MonomialMatrix& a) {
  std::vector<CycleEigenvector> out;
  out.reserve(a.dim);
  std::vector<char> visited(a.dim, 0);
  for (int start = 0; start < a.dim; ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    Fraction sum(0, 1);
    int c = start;
    do {
      visited[c] = 1;
      cycle.push_back(c);
      sum = sum + a.phases[c].turn();
      c = a.perm[c];
    } while (c != start);
    long long len = static_cast<long long>(cycle.size());
    // Eigenvalues lambda with lambda^len = cycle phase product: turns
    // (sum.num + m*sum.den) / (len*sum.den). The eigenvector coefficient
    // along the cycle accumulates phases[c] - lambda per step.
    for (long long m = 0; m < len; ++m) {
      CycleEigenvector ev;
      ev.eigenvalue = PhaseExp(sum.num + m * sum.den, len * sum.den);
      ev.support = cycle;
      ev.phases.resize(cycle.size());
      Fraction acc(0, 1);
      Fraction lambda = ev.eigenvalue.turn();
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        ev.phases[t] = PhaseExp(acc);
        acc = acc + a.phases[cycle[t]].turn() - lambda;
      }
      out.push_back(std::move(ev));
    }
  }
  return out;
}

}  // namespace wh
