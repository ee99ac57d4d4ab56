#pragma once

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wh {

struct NotMonomial : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PhaseNotRecognized : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OrderOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational number, always stored reduced with positive denominator.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d);

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;
  Fraction operator-() const;
  bool operator==(const Fraction& o) const = default;
  std::strong_ordering operator<=>(const Fraction& o) const;

  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
};

// The root of unity e^{2*pi*i*num/den}, stored as a rational turn reduced mod 1:
// 0 <= num < den, gcd(num, den) = 1 (num = 0 forces den = 1).
class PhaseExp {
 public:
  PhaseExp() = default;
  PhaseExp(long long numerator, long long denominator);
  explicit PhaseExp(const Fraction& turn);

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }
  Fraction turn() const { return Fraction(num_, den_); }

  PhaseExp operator*(const PhaseExp& o) const;
  PhaseExp inverse() const;
  PhaseExp pow(long long k) const;
  bool operator==(const PhaseExp& o) const = default;
  std::strong_ordering operator<=>(const PhaseExp& o) const;

  bool is_one() const { return num_ == 0; }
  std::complex<double> value() const;
  std::string to_string() const;  // turn as "num/den"

 private:
  long long num_ = 0;
  long long den_ = 1;
};

// Exact phase-permutation matrix: the entry at (perm[c], c) is phases[c], all
// other entries are zero. perm is a bijection on {0, ..., dim-1}.
struct MonomialMatrix {
  int dim = 0;
  std::vector<int> perm;
  std::vector<PhaseExp> phases;

  MonomialMatrix() = default;
  MonomialMatrix(int dim, std::vector<int> perm, std::vector<PhaseExp> phases);

  static MonomialMatrix identity(int dim);
  bool is_identity() const;
  bool operator==(const MonomialMatrix& o) const = default;
};

MonomialMatrix monomial_compose(const MonomialMatrix& a, const MonomialMatrix& b);
MonomialMatrix monomial_inverse(const MonomialMatrix& a);
MonomialMatrix monomial_pow(const MonomialMatrix& a, long long k);

// Smallest k >= 1 with a^k equal to the exact identity. Computed from the
// cycle structure (per cycle: length times the denominator of the cycle's
// phase sum); throws OrderOverflow above the cap.
long long monomial_order(const MonomialMatrix& a, long long cap = 1000000);

Eigen::MatrixXcd monomial_to_dense(const MonomialMatrix& a);

// Snap an angle (radians) to a rational turn with denominator <= max_denom,
// within angular tolerance tol; smallest admissible denominator wins.
PhaseExp snap_turn(double angle, double tol, long long max_denom);

// If every column of m has exactly one entry of modulus > tol (and rows are
// hit exactly once), snap those entries' arguments to rational turns and
// return the exact monomial form. Throws NotMonomial / PhaseNotRecognized.
MonomialMatrix extract_monomial(const Eigen::MatrixXcd& m, double tol, long long max_denom);

// Projective canonical form: divide by the phase of the column-0 entry so
// that phases[0] becomes trivial.
MonomialMatrix canonical_projective(const MonomialMatrix& a);

// Total order on monomial matrices (dim, then perm, then phase turns);
// used to sort group listings deterministically.
bool lexicographic_less(const MonomialMatrix& a, const MonomialMatrix& b);

// Exact dedupe key (dim, perm, phases serialized).
std::string monomial_key(const MonomialMatrix& a);

// One exact eigenvector of a monomial matrix, supported on a single
// permutation cycle: entries e^{2*pi*i*phases[t]} / sqrt(L) at support[t].
struct CycleEigenvector {
  PhaseExp eigenvalue;
  std::vector<int> support;
  std::vector<PhaseExp> phases;

  Eigen::VectorXcd dense(int dim) const;
};

// Full exact eigendecomposition from the cycle structure; returns dim
// orthonormal eigenvectors.
std::vector<CycleEigenvector> monomial_eigenvectors(const MonomialMatrix& a);

}  // namespace wh
