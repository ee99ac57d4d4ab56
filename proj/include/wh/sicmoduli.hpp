#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "wh/heisenberg.hpp"

namespace wh {

// Component moduli p_a = |z_a|^2 of a fiducial, standard-basis indexed a in
// Z_N or PP-basis flat-indexed (r,s) -> r*n + s.
struct ModuliVector {
  int N = 0;
  std::vector<double> p;
};

struct FiducialComponents {
  int N = 0;
  Eigen::VectorXcd z;
};

// residual[0] = sum p_a^2 - 2/(N+1);
// residual[x] = sum_a p_a p_{a+x} - 1/(N+1)  (x = 1..N-1).
// residual[x] and residual[N-x] are computed with the same summation order,
// so the x <-> -x symmetry holds bit-identically.
std::vector<double> moduli_residuals_standard(const ModuliVector& p);

// Quartic sums sum_a conj(z_a) conj(z_{a+k-i}) z_{a+k} z_{a-i} for i,k != 0;
// all vanish on a standard-basis SIC fiducial.
std::map<std::pair<int, int>, std::complex<double>> phase_residuals(const FiducialComponents& z);

// PP-basis analogue over offsets (x,y) in Z_n x Z_n (flat index x*n + y).
std::vector<double> moduli_residuals_pp(const ModuliVector& p, int n);

struct DerivedIdentities {
  double s1 = 0;                 // (sum p_a)^2, equals 1 when normalized
  std::optional<double> s2;      // even N: (sum_even - sum_odd)^2, equals 1/(N+1)
};

DerivedIdentities derived_identities(const ModuliVector& p);

// Equation indices grouped by the x <-> -x (or (x,y) <-> (-x,-y)) symmetry;
// the first class {0} is the quadratic norm equation. Class count is k+1 in
// the standard basis and k+2 in the PP basis for N = 2k.
std::vector<std::vector<int>> independent_equation_set(int N, const RepBasis& basis);

// Element a + b*sqrt(5) of Q(sqrt 5) with exact rational a, b.
struct Q5 {
  Fraction a;
  Fraction b;

  Q5() = default;
  Q5(Fraction a_, Fraction b_) : a(a_), b(b_) {}
  explicit Q5(const Fraction& rational) : a(rational) {}

  Q5 operator+(const Q5& o) const;
  Q5 operator-(const Q5& o) const;
  Q5 operator*(const Q5& o) const;
  Q5 operator-() const;
  Q5 inverse() const;
  bool operator==(const Q5& o) const = default;

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  bool is_negative() const;
  double to_double() const;
  std::string to_string() const;  // canonical "(x+y√5)/d"
};

struct ModuliSolveBranch {
  int sign = 0;                  // sign of the fourth square-rooted equation
  std::array<Q5, 4> p;           // flat PP index at n = 2
  bool nonnegative = false;
};

struct ModuliSolveResult {
  std::vector<ModuliSolveBranch> branches;
  std::array<Q5, 4> p;           // the unique nonnegative survivor
};

// The four square-rooted moduli equations at N = 4 under the ordering
// p00 >= p01 >= p10 >= p11 >= 0, solved exactly over Q(sqrt 5); the
// surviving branch is p00 = (5+3√5)/20, p01 = p10 = p11 = (5-√5)/20.
ModuliSolveResult solve_moduli_n4();

// PP moduli residuals evaluated in exact arithmetic; identically zero on the
// solve_moduli_n4 output.
std::array<Q5, 4> moduli_residuals_pp_exact(const std::array<Q5, 4>& p);

}  // namespace wh
