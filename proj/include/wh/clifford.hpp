#pragma once

#include <cstddef>

#include "wh/heisenberg.hpp"

namespace wh {

struct NoIntertwiner : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 2x2 integer matrix (alpha, beta; gamma, delta) mod N with determinant 1,
// acting on displacement labels as column vectors.
struct SymplecticMatrix {
  int N = 0;
  long long alpha = 1, beta = 0, gamma = 0, delta = 1;

  SymplecticMatrix() = default;
  SymplecticMatrix(int N, long long a, long long b, long long c, long long d);

  bool is_symplectic() const;
  bool is_identity() const;
  SymplecticMatrix operator*(const SymplecticMatrix& o) const;
  DisplacementIndex apply(const DisplacementIndex& p) const;
  bool operator==(const SymplecticMatrix& o) const = default;
};

// F_Z = (0, -1; 1, -1) mod N; order 3 with determinant 1 for every N.
SymplecticMatrix symplectic_order3_zauner(int N);

struct CliffordElement {
  SymplecticMatrix F;
  DisplacementIndex shift;  // always (0,0) here: pure symplectic part
  Eigen::MatrixXcd U;
  RepBasis basis;
};

// A unitary U with U X U^dagger = c1 D_{F(1,0)} and U Z U^dagger = c2 D_{F(0,1)}
// (unimodular c1, c2, residual < 1e-10), built by chaining exact eigenvectors
// of D_{F(0,1)} under the action of D_{F(1,0)}. Global phase canonicalized:
// largest-modulus entry of column 0 made real positive.
CliffordElement metaplectic_unitary(const SymplecticMatrix& F, const RepBasis& basis);

// Rescale a projectively order-3 unitary by the cube root of unity that
// maximizes the eigenvalue-1 multiplicity, so the result cubes to identity.
Eigen::MatrixXcd fix_order3_phase(const Eigen::MatrixXcd& u);

// Same, in exact arithmetic: input must satisfy u^3 = gamma * identity.
MonomialMatrix fix_order3_phase(const MonomialMatrix& u);

// Canonicalize the global phase and delegate to extract_monomial with
// max_denom = 24 N. Throws NotMonomial when u is genuinely dense.
MonomialMatrix verify_monomiality(const Eigen::MatrixXcd& u, double tol);

// |SL(2, Z_N)| * N^2.
long long projective_clifford_order(long long N);

struct ClosureResult {
  // All projective group elements in canonical form, sorted; words[k] is a
  // generator-index word whose product reproduces elements[k] up to global
  // phase; generators/generator_dense are the exact and numeric seeds.
  std::vector<MonomialMatrix> elements;
  std::vector<std::vector<int>> words;
  std::vector<MonomialMatrix> generators;
  std::vector<Eigen::MatrixXcd> generator_dense;
};

// Breadth-first closure of {U_S, U_T, X, Z} under multiplication modulo
// global phase, everything in exact monomial arithmetic. PP basis only.
ClosureResult clifford_group_closure(int N, const RepBasis& basis, std::size_t max_elements);

// The canonical Zauner unitary (Gauss-sum construction) in the standard
// basis, phase-fixed so that U^3 = identity.
Eigen::MatrixXcd zauner_unitary_standard(int N);

// The same element conjugated to the PP basis, extracted to exact monomial
// form and phase-fixed exactly: U^3 = identity as exact algebra.
MonomialMatrix zauner_unitary(int n);

struct ZaunerBlockReport {
  int blocks = 0;
  std::vector<PhaseExp> diagonal;  // entries are cube roots of unity
};

// For an exactly order-3 monomial u: a monomial change of basis p with
// p u p^dagger = 3x3 cyclic blocks (0,0,1;1,0,0;0,1,0) followed by diagonal
// cube-root entries.
std::pair<MonomialMatrix, ZaunerBlockReport> zauner_block_diagonalize(const MonomialMatrix& u);

struct ZaunerSpectrum {
  int m_one = 0;
  int m_omega = 0;
  int m_omega_sq = 0;
};

// Eigenvalue multiplicities of an order-3 unitary, snapped to cube roots.
ZaunerSpectrum zauner_spectrum(const Eigen::MatrixXcd& u);

}  // namespace wh
