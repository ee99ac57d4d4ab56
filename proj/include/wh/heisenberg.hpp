#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wh/exactcore.hpp"

namespace wh {

enum class BasisTag { Standard, PhasePermutation };

// Which representation of H(N) matrices and vectors live in. The
// phase-permutation basis exists only when N is a perfect square N = n^2;
// basis vectors |r,s> are flat-indexed as r*n + s throughout.
struct RepBasis {
  BasisTag tag = BasisTag::Standard;
  int N = 0;
  int n = 0;  // meaningful only for PhasePermutation

  static RepBasis standard(int N);
  static RepBasis phase_permutation(int n);
  bool operator==(const RepBasis& o) const = default;
};

// Label (i, j) of the group word X^i Z^j, reduced mod N where used.
struct DisplacementIndex {
  long long i = 0;
  long long j = 0;
  bool operator==(const DisplacementIndex& o) const = default;
};

// An order-N subgroup of Z_N x Z_N on which the symplectic form
// i*j' - j*i' vanishes identically.
struct StabilizerSubgroup {
  int N = 0;
  std::vector<DisplacementIndex> members;  // sorted lexicographically
};

// Z = diag(omega^k), X = cyclic shift |k> -> |k+1>, with ZX = omega XZ.
std::pair<MonomialMatrix, MonomialMatrix> standard_generators(int N);

// The N = n^2 representation in which the subgroup generated by X^n, Z^n is
// diagonal: X|r,s> = |r,s+1> (with X|r,n-1> = q^r |r,0>), Z|r,s> = omega^s |r-1,s>.
std::pair<MonomialMatrix, MonomialMatrix> pp_generators(int n);

MonomialMatrix displacement(const DisplacementIndex& p, const RepBasis& basis);

// Unitary V with V G_pp V^dagger = G_std for both generators; entry (0,0)
// real positive. Columns are the simultaneous eigenvectors of X_std^n and
// Z_std^n labeled (r,s), phase-locked along the X action.
Eigen::MatrixXcd change_of_basis(int n);

// All order-N isotropic subgroups of Z_N x Z_N (N <= 100).
std::vector<StabilizerSubgroup> stabilizer_subgroups(int N);

// The unique stabilizer subgroup {(n*a, n*b)} all of whose nonidentity
// member operators have order dividing n in the PP representation.
StabilizerSubgroup unique_order_n_stabilizer(int n);

struct KroneckerFactors {
  MonomialMatrix b;  // canonical: phases[0] trivial
  MonomialMatrix c;
};

// If a = b (x) c exactly for monomial factors of dimension n, return them
// (b canonicalized, residual phase absorbed into c); otherwise nullopt.
std::optional<KroneckerFactors> kronecker_factor_check(const MonomialMatrix& a, int n);

struct SchmidtReport {
  std::vector<double> spectrum;          // singular values, descending
  std::optional<double> concurrence;     // n = 2 only
};

// Singular values of the n x n reshaping of v (row r, column s).
SchmidtReport schmidt_spectrum(const Eigen::VectorXcd& v, int n);

}  // namespace wh
