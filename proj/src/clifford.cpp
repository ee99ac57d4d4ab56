#include "wh/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace wh {

namespace {

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

// Vector with one common positive amplitude and exact phases on its support.
struct AmpTurnVec {
  double amp = 1.0;
  std::vector<std::optional<PhaseExp>> e;

  explicit AmpTurnVec(int dim) : e(dim) {}

  AmpTurnVec apply(const MonomialMatrix& m) const {
    AmpTurnVec out(static_cast<int>(e.size()));
    out.amp = amp;
    for (std::size_t c = 0; c < e.size(); ++c)
      if (e[c]) out.e[m.perm[c]] = m.phases[c] * *e[c];
    return out;
  }

  Eigen::VectorXcd dense() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(e.size()));
    for (std::size_t c = 0; c < e.size(); ++c)
      if (e[c]) v(static_cast<Eigen::Index>(c)) = amp * e[c]->value();
    return v;
  }
};

// Exact ratio other/self, defined when supports coincide and the ratio is
// constant across the support.
PhaseExp exact_ratio(const AmpTurnVec& self, const AmpTurnVec& other) {
  std::optional<PhaseExp> ratio;
  for (std::size_t c = 0; c < self.e.size(); ++c) {
    if (self.e[c].has_value() != other.e[c].has_value())
      throw NoIntertwiner("chain wraparound changed the support");
    if (!self.e[c]) continue;
    PhaseExp r = *other.e[c] * self.e[c]->inverse();
    if (!ratio) ratio = r;
    else if (!(*ratio == r))
      throw NoIntertwiner("chain wraparound phase is not constant");
  }
  if (!ratio) throw NoIntertwiner("chain vector has empty support");
  return *ratio;
}

// Columns w_k of the chain construction: w_0 is the eigenvector of q with
// the smallest eigenvalue turn, w_{k+1} = p w_k, and the wraparound phase is
// spread uniformly so that p w_k = c w_{k+1} with one fixed unimodular c.
Eigen::MatrixXcd chain_matrix(const MonomialMatrix& p, const MonomialMatrix& q) {
  int dim = p.dim;
  auto eigs = monomial_eigenvectors(q);
  std::sort(eigs.begin(), eigs.end(),
            [](const CycleEigenvector& a, const CycleEigenvector& b) {
              return a.eigenvalue < b.eigenvalue;
            });
  for (std::size_t i = 1; i < eigs.size(); ++i)
    if (eigs[i].eigenvalue == eigs[i - 1].eigenvalue)
      throw NoIntertwiner("chain base operator has a degenerate spectrum");

  AmpTurnVec v(dim);
  v.amp = 1.0 / std::sqrt(static_cast<double>(eigs[0].support.size()));
  for (std::size_t t = 0; t < eigs[0].support.size(); ++t)
    v.e[eigs[0].support[t]] = eigs[0].phases[t];

  std::vector<AmpTurnVec> cols;
  cols.reserve(dim);
  cols.push_back(v);
  for (int k = 1; k < dim; ++k) cols.push_back(cols.back().apply(p));
  PhaseExp lambda = exact_ratio(cols[0], cols.back().apply(p));
  Fraction neg = PhaseExp(lambda.inverse()).turn();
  PhaseExp mu(neg.num, neg.den * dim);

  Eigen::MatrixXcd w(dim, dim);
  PhaseExp scale;
  for (int k = 0; k < dim; ++k) {
    AmpTurnVec scaled = cols[k];
    for (auto& entry : scaled.e)
      if (entry) entry = *entry * scale;
    w.col(k) = scaled.dense();
    scale = scale * mu;
  }
  return w;
}

std::pair<MonomialMatrix, MonomialMatrix> basis_generators(const RepBasis& basis) {
  return basis.tag == BasisTag::Standard ? standard_generators(basis.N)
                                         : pp_generators(basis.n);
}

// Verify m1 m2 = omega^k m2 m1 exactly and return k's phase.
PhaseExp exact_commutation_phase(const MonomialMatrix& m1, const MonomialMatrix& m2) {
  MonomialMatrix lhs = monomial_compose(m1, m2);
  MonomialMatrix rhs = monomial_compose(m2, m1);
  if (lhs.perm != rhs.perm) throw NoIntertwiner("operators do not commute up to phase");
  PhaseExp ratio = lhs.phases[0] * rhs.phases[0].inverse();
  for (int c = 1; c < lhs.dim; ++c)
    if (!(lhs.phases[c] * rhs.phases[c].inverse() == ratio))
      throw NoIntertwiner("commutation phase is not constant");
  return ratio;
}

// Largest-modulus entry of column 0 made real positive.
Eigen::MatrixXcd canonicalize_global_phase(const Eigen::MatrixXcd& u) {
  Eigen::Index r0;
  u.col(0).cwiseAbs().maxCoeff(&r0);
  std::complex<double> ph = u(r0, 0) / std::abs(u(r0, 0));
  return u / ph;
}

// Residual of u d u^dagger = c e and the constant c.
std::pair<double, std::complex<double>> conjugation_residual(const Eigen::MatrixXcd& u,
                                                             const MonomialMatrix& d,
                                                             const MonomialMatrix& e) {
  Eigen::MatrixXcd m = u * monomial_to_dense(d) * u.adjoint();
  std::complex<double> c = m(e.perm[0], 0) / e.phases[0].value();
  Eigen::MatrixXcd diff = m - c * monomial_to_dense(e);
  return {diff.cwiseAbs().maxCoeff(), c};
}

Eigen::MatrixXcd zauner_gauss_sum_raw(int N) {
  // U[j,k] = e^{2 pi i (j^2 (N+1)/(2N) + j k / N)} / sqrt(N)
  Eigen::MatrixXcd u(N, N);
  double amp = 1.0 / std::sqrt(static_cast<double>(N));
  for (int j = 0; j < N; ++j) {
    for (int k = 0; k < N; ++k) {
      Fraction t = Fraction(static_cast<long long>(j) * j * (N + 1), 2LL * N) +
                   Fraction(static_cast<long long>(j) * k, N);
      u(j, k) = amp * PhaseExp(t).value();
    }
  }
  return u;
}

int count_unit_eigenvalues_exact(const MonomialMatrix& m) {
  int count = 0;
  for (const auto& ev : monomial_eigenvectors(m))
    if (ev.eigenvalue.is_one()) ++count;
  return count;
}

}  // namespace

SymplecticMatrix::SymplecticMatrix(int n, long long a, long long b, long long c, long long d)
    : N(n), alpha(mod(a, n)), beta(mod(b, n)), gamma(mod(c, n)), delta(mod(d, n)) {
  if (n < 2) throw std::invalid_argument("SymplecticMatrix: N must be >= 2");
}

bool SymplecticMatrix::is_symplectic() const {
  return mod(alpha * delta - beta * gamma, N) == 1;
}

bool SymplecticMatrix::is_identity() const {
  return alpha == 1 && beta == 0 && gamma == 0 && delta == 1;
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (N != o.N) throw std::invalid_argument("SymplecticMatrix: modulus mismatch");
  return SymplecticMatrix(N, alpha * o.alpha + beta * o.gamma, alpha * o.beta + beta * o.delta,
                          gamma * o.alpha + delta * o.gamma, gamma * o.beta + delta * o.delta);
}

DisplacementIndex SymplecticMatrix::apply(const DisplacementIndex& p) const {
  return {mod(alpha * p.i + beta * p.j, N), mod(gamma * p.i + delta * p.j, N)};
}

SymplecticMatrix symplectic_order3_zauner(int N) {
  SymplecticMatrix f(N, 0, -1, 1, -1);
  if (!f.is_symplectic()) throw std::logic_error("zauner symplectic: determinant is not 1");
  if (!(f * f * f).is_identity()) throw std::logic_error("zauner symplectic: cube is not identity");
  return f;
}

CliffordElement metaplectic_unitary(const SymplecticMatrix& f, const RepBasis& basis) {
  if (f.N != basis.N) throw std::invalid_argument("metaplectic_unitary: modulus mismatch");
  if (!f.is_symplectic()) throw NoIntertwiner("matrix is not symplectic mod N");
  auto [x, z] = basis_generators(basis);
  MonomialMatrix a = displacement(f.apply({1, 0}), basis);
  MonomialMatrix b = displacement(f.apply({0, 1}), basis);
  if (!(exact_commutation_phase(b, a) == PhaseExp(1, basis.N)))
    throw NoIntertwiner("image generators do not satisfy the Weyl relation");

  Eigen::MatrixXcd w1 = chain_matrix(x, z);
  Eigen::MatrixXcd w2 = chain_matrix(a, b);
  Eigen::MatrixXcd u = canonicalize_global_phase(w2 * w1.adjoint());

  auto [res_x, c1] = conjugation_residual(u, x, a);
  auto [res_z, c2] = conjugation_residual(u, z, b);
  if (res_x > 1e-10 || res_z > 1e-10 || std::abs(std::abs(c1) - 1.0) > 1e-10 ||
      std::abs(std::abs(c2) - 1.0) > 1e-10)
    throw NoIntertwiner("intertwining residual above tolerance");
  return CliffordElement{f, {0, 0}, std::move(u), basis};
}

Eigen::MatrixXcd fix_order3_phase(const Eigen::MatrixXcd& u) {
  int dim = static_cast<int>(u.rows());
  Eigen::MatrixXcd cube = u * u * u;
  std::complex<double> lambda = cube.trace() / static_cast<double>(dim);
  if (std::abs(std::abs(lambda) - 1.0) > 1e-9 ||
      (cube - lambda * Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("fix_order3_phase: input is not projectively order 3");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
  double base = -std::arg(lambda) / 3.0;
  int best_j = 0, best_count = -1;
  for (int j = 0; j < 3; ++j) {
    std::complex<double> mu = std::polar(1.0, base + 2.0 * std::numbers::pi * j / 3.0);
    int count = 0;
    for (int i = 0; i < dim; ++i)
      if (std::abs(mu * es.eigenvalues()(i) - 1.0) < 0.5) ++count;
    if (count > best_count) {
      best_count = count;
      best_j = j;
    }
  }
  std::complex<double> mu = std::polar(1.0, base + 2.0 * std::numbers::pi * best_j / 3.0);
  return mu * u;
}

MonomialMatrix fix_order3_phase(const MonomialMatrix& u) {
  MonomialMatrix cube = monomial_pow(u, 3);
  if (cube.perm != MonomialMatrix::identity(u.dim).perm)
    throw std::invalid_argument("fix_order3_phase: cube is not diagonal");
  PhaseExp gamma = cube.phases[0];
  for (int c = 1; c < u.dim; ++c)
    if (!(cube.phases[c] == gamma))
      throw std::invalid_argument("fix_order3_phase: cube is not a scalar");
  Fraction ginv = gamma.inverse().turn();
  MonomialMatrix best = u;
  int best_count = -1;
  for (int j = 0; j < 3; ++j) {
    PhaseExp mu(ginv.num + j * ginv.den, 3 * ginv.den);
    std::vector<PhaseExp> phases(u.dim);
    for (int c = 0; c < u.dim; ++c) phases[c] = u.phases[c] * mu;
    MonomialMatrix candidate(u.dim, u.perm, std::move(phases));
    int count = count_unit_eigenvalues_exact(candidate);
    if (count > best_count) {
      best_count = count;
      best = candidate;
    }
  }
  if (!monomial_pow(best, 3).is_identity())
    throw std::logic_error("fix_order3_phase: fixed matrix does not cube to identity");
  return best;
}

MonomialMatrix verify_monomiality(const Eigen::MatrixXcd& u, double tol) {
  int dim = static_cast<int>(u.rows());
  double unitarity =
      (u * u.adjoint() - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (unitarity > std::max(tol * 100.0, 1e-8))
    throw std::invalid_argument("verify_monomiality: input is not unitary");
  return extract_monomial(canonicalize_global_phase(u), tol, 24LL * dim);
}

long long projective_clifford_order(long long N) {
  long long sl2 = N * N * N;
  long long m = N;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    sl2 = sl2 / (p * p) * (p * p - 1);
  }
  if (m > 1) sl2 = sl2 / (m * m) * (m * m - 1);
  return sl2 * N * N;
}

ClosureResult clifford_group_closure(int N, const RepBasis& basis, std::size_t max_elements) {
  if (basis.tag != BasisTag::PhasePermutation || basis.N != N)
    throw std::invalid_argument("clifford_group_closure: phase-permutation basis required");
  int n = basis.n;
  Eigen::MatrixXcd v = change_of_basis(n);

  ClosureResult result;
  SymplecticMatrix s(N, 0, -1, 1, 0), t(N, 1, 0, 1, 1);
  for (const auto& f : {s, t}) {
    Eigen::MatrixXcd u_std = metaplectic_unitary(f, RepBasis::standard(N)).U;
    Eigen::MatrixXcd u_pp = v.adjoint() * u_std * v;
    MonomialMatrix m = canonical_projective(verify_monomiality(u_pp, 1e-9));
    result.generators.push_back(m);
    result.generator_dense.push_back(monomial_to_dense(m));
  }
  auto [x, z] = pp_generators(n);
  for (const auto& g : {x, z}) {
    MonomialMatrix m = canonical_projective(g);
    result.generators.push_back(m);
    result.generator_dense.push_back(monomial_to_dense(m));
  }

  struct Node {
    MonomialMatrix m;
    int parent;
    int gen;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  std::deque<int> queue;
  nodes.push_back({MonomialMatrix::identity(N), -1, -1});
  seen.insert(monomial_key(nodes[0].m));
  queue.push_back(0);
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int g = 0; g < static_cast<int>(result.generators.size()); ++g) {
      MonomialMatrix next =
          canonical_projective(monomial_compose(nodes[cur].m, result.generators[g]));
      std::string key = monomial_key(next);
      if (seen.contains(key)) continue;
      if (nodes.size() >= max_elements)
        throw BudgetExceeded("closure exceeded " + std::to_string(max_elements) + " elements");
      seen.insert(std::move(key));
      nodes.push_back({std::move(next), cur, g});
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }

  std::vector<int> idx(nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return lexicographic_less(nodes[a].m, nodes[b].m); });
  result.elements.reserve(nodes.size());
  result.words.reserve(nodes.size());
  for (int i : idx) {
    result.elements.push_back(nodes[i].m);
    std::vector<int> word;
    for (int cur = i; nodes[cur].parent >= 0; cur = nodes[cur].parent)
      word.push_back(nodes[cur].gen);
    std::reverse(word.begin(), word.end());
    result.words.push_back(std::move(word));
  }
  return result;
}

Eigen::MatrixXcd zauner_unitary_standard(int N) {
  Eigen::MatrixXcd u = zauner_gauss_sum_raw(N);
  SymplecticMatrix f = symplectic_order3_zauner(N);
  RepBasis std_basis = RepBasis::standard(N);
  auto [x, z] = standard_generators(N);
  auto [res_x, c1] = conjugation_residual(u, x, displacement(f.apply({1, 0}), std_basis));
  auto [res_z, c2] = conjugation_residual(u, z, displacement(f.apply({0, 1}), std_basis));
  if (res_x > 1e-10 || res_z > 1e-10)
    throw std::logic_error("zauner_unitary_standard: intertwining residual above tolerance");
  return fix_order3_phase(u);
}

MonomialMatrix zauner_unitary(int n) {
  int N = n * n;
  Eigen::MatrixXcd v = change_of_basis(n);
  Eigen::MatrixXcd u_pp = v.adjoint() * zauner_gauss_sum_raw(N) * v;
  MonomialMatrix m = verify_monomiality(u_pp, 1e-9);
  return fix_order3_phase(m);
}

std::pair<MonomialMatrix, ZaunerBlockReport> zauner_block_diagonalize(const MonomialMatrix& u) {
  if (!monomial_pow(u, 3).is_identity())
    throw std::invalid_argument("zauner_block_diagonalize: input is not exactly order 3");
  std::vector<std::vector<int>> cycles;
  std::vector<int> fixed;
  std::vector<char> visited(u.dim, 0);
  for (int start = 0; start < u.dim; ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    int c = start;
    do {
      visited[c] = 1;
      cycle.push_back(c);
      c = u.perm[c];
    } while (c != start);
    if (cycle.size() == 1) fixed.push_back(start);
    else if (cycle.size() == 3) cycles.push_back(std::move(cycle));
    else throw std::logic_error("zauner_block_diagonalize: cycle length is neither 1 nor 3");
  }

  std::vector<int> perm(u.dim);
  std::vector<PhaseExp> phases(u.dim);
  int next_index = 0;
  for (const auto& cycle : cycles) {
    // New basis g_j = u^j e_{c0}; in it, u acts as the bare 3-cycle.
    PhaseExp acc;
    for (int j = 0; j < 3; ++j) {
      int c = cycle[j];
      perm[c] = next_index++;
      phases[c] = acc.inverse();
      acc = u.phases[c] * acc;
    }
  }
  ZaunerBlockReport report;
  report.blocks = static_cast<int>(cycles.size());
  for (int c : fixed) {
    perm[c] = next_index++;
    if (u.phases[c].denominator() != 1 && u.phases[c].denominator() != 3)
      throw std::logic_error("zauner_block_diagonalize: fixed-point phase is not a cube root");
    report.diagonal.push_back(u.phases[c]);
  }
  MonomialMatrix p(u.dim, std::move(perm), std::move(phases));
  return {std::move(p), std::move(report)};
}

ZaunerSpectrum zauner_spectrum(const Eigen::MatrixXcd& u) {
  int dim = static_cast<int>(u.rows());
  if ((u * u * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("zauner_spectrum: cube is not identity");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
  ZaunerSpectrum spec;
  for (int i = 0; i < dim; ++i) {
    std::complex<double> ev = es.eigenvalues()(i);
    double best = 1e9;
    int best_k = 0;
    for (int k = 0; k < 3; ++k) {
      double d = std::abs(ev - std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0));
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    if (best > 1e-6)
      throw PhaseNotRecognized("eigenvalue is not near a cube root of unity");
    if (best_k == 0) ++spec.m_one;
    else if (best_k == 1) ++spec.m_omega;
    else ++spec.m_omega_sq;
  }
  return spec;
}

}  // namespace wh
