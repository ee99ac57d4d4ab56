#include "wh/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wh {

namespace {

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

int isqrt_exact(int N) {
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(N))));
  if (n * n != N) return -1;
  return n;
}

// A vector whose nonzero entries all share one positive amplitude and carry
// exact phases; used to build the change of basis without floating drift.
struct TurnVector {
  std::vector<std::optional<PhaseExp>> entry;

  explicit TurnVector(int dim) : entry(dim) {}

  TurnVector apply(const MonomialMatrix& m) const {
    TurnVector out(static_cast<int>(entry.size()));
    for (std::size_t c = 0; c < entry.size(); ++c)
      if (entry[c]) out.entry[m.perm[c]] = m.phases[c] * *entry[c];
    return out;
  }

  // True when other == phase * this exactly.
  bool equals_up_to(const TurnVector& other, const PhaseExp& phase) const {
    for (std::size_t c = 0; c < entry.size(); ++c) {
      if (entry[c].has_value() != other.entry[c].has_value()) return false;
      if (entry[c] && !(phase * *entry[c] == *other.entry[c])) return false;
    }
    return true;
  }
};

}  // namespace

RepBasis RepBasis::standard(int N) {
  if (N < 2) throw std::invalid_argument("RepBasis: N must be >= 2");
  return RepBasis{BasisTag::Standard, N, 0};
}

RepBasis RepBasis::phase_permutation(int n) {
  if (n < 2) throw std::invalid_argument("RepBasis: n must be >= 2");
  return RepBasis{BasisTag::PhasePermutation, n * n, n};
}

std::pair<MonomialMatrix, MonomialMatrix> standard_generators(int N) {
  if (N < 2) throw std::invalid_argument("standard_generators: N must be >= 2");
  std::vector<int> xperm(N), zperm(N);
  std::vector<PhaseExp> xph(N), zph(N);
  for (int k = 0; k < N; ++k) {
    xperm[k] = (k + 1) % N;
    zperm[k] = k;
    zph[k] = PhaseExp(k, N);
  }
  return {MonomialMatrix(N, std::move(xperm), std::move(xph)),
          MonomialMatrix(N, std::move(zperm), std::move(zph))};
}

std::pair<MonomialMatrix, MonomialMatrix> pp_generators(int n) {
  if (n < 2) throw std::invalid_argument("pp_generators: n must be >= 2");
  int N = n * n;
  std::vector<int> xperm(N), zperm(N);
  std::vector<PhaseExp> xph(N), zph(N);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      int c = r * n + s;
      if (s + 1 < n) {
        xperm[c] = r * n + s + 1;
      } else {
        xperm[c] = r * n;
        xph[c] = PhaseExp(r, n);
      }
      zperm[c] = static_cast<int>(mod(r - 1, n)) * n + s;
      zph[c] = PhaseExp(s, N);
    }
  }
  return {MonomialMatrix(N, std::move(xperm), std::move(xph)),
          MonomialMatrix(N, std::move(zperm), std::move(zph))};
}

MonomialMatrix displacement(const DisplacementIndex& p, const RepBasis& basis) {
  auto [X, Z] = basis.tag == BasisTag::Standard ? standard_generators(basis.N)
                                                : pp_generators(basis.n);
  long long i = mod(p.i, basis.N);
  long long j = mod(p.j, basis.N);
  return monomial_compose(monomial_pow(X, i), monomial_pow(Z, j));
}

Eigen::MatrixXcd change_of_basis(int n) {
  if (n < 2) throw std::invalid_argument("change_of_basis: n must be >= 2");
  int N = n * n;
  auto [X, Z] = standard_generators(N);
  double amp = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd V(N, N);
  V.setZero();
  for (int r = 0; r < n; ++r) {
    // Eigenvector of X^n (restricted to the s = 0 eigenspace of Z^n) with
    // eigenvalue q^r: entries q^{-r t} at standard index t*n.
    TurnVector v(N);
    for (int t = 0; t < n; ++t) v.entry[t * n] = PhaseExp(mod(-static_cast<long long>(r) * t, n), n);
    for (int s = 0; s < n; ++s) {
      int col = r * n + s;
      for (int u = 0; u < N; ++u)
        if (v.entry[u]) V(u, col) = amp * v.entry[u]->value();
      TurnVector next = v.apply(X);
      if (s + 1 == n) {
        // Wraparound must reproduce q^r exactly, locking the phase convention.
        TurnVector first(N);
        for (int t = 0; t < n; ++t)
          first.entry[t * n] = PhaseExp(mod(-static_cast<long long>(r) * t, n), n);
        if (!first.equals_up_to(next, PhaseExp(r, n)))
          throw std::logic_error("change_of_basis: wraparound phase mismatch");
      }
      v = std::move(next);
    }
  }
  return V;
}

std::vector<StabilizerSubgroup> stabilizer_subgroups(int N) {
  if (N < 2 || N > 100) throw std::invalid_argument("stabilizer_subgroups: need 2 <= N <= 100");
  std::vector<StabilizerSubgroup> out;
  for (int a = 1; a <= N; ++a) {
    if (N % a != 0) continue;
    int d = N / a;
    for (int b = 0; b < d; ++b) {
      // Subgroup generated by (a, b) and (0, d); order (N/a)*(N/d) = N.
      StabilizerSubgroup s;
      s.N = N;
      for (int x = 0; x < N / a; ++x)
        for (int y = 0; y < a; ++y)
          s.members.push_back({mod(static_cast<long long>(x) * a, N),
                               mod(static_cast<long long>(x) * b + static_cast<long long>(y) * d, N)});
      std::sort(s.members.begin(), s.members.end(), [](const auto& u, const auto& v) {
        return std::pair(u.i, u.j) < std::pair(v.i, v.j);
      });
      for (const auto& u : s.members)
        for (const auto& v : s.members)
          if (mod(u.i * v.j - u.j * v.i, N) != 0)
            throw std::logic_error("stabilizer_subgroups: symplectic form does not vanish");
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& s1, const auto& s2) {
    return std::lexicographical_compare(
        s1.members.begin(), s1.members.end(), s2.members.begin(), s2.members.end(),
        [](const auto& u, const auto& v) { return std::pair(u.i, u.j) < std::pair(v.i, v.j); });
  });
  return out;
}

StabilizerSubgroup unique_order_n_stabilizer(int n) {
  if (n < 2) throw std::invalid_argument("unique_order_n_stabilizer: n must be >= 2");
  int N = n * n;
  RepBasis pp = RepBasis::phase_permutation(n);
  auto order_divides_n = [&](const StabilizerSubgroup& s) {
    for (const auto& p : s.members) {
      if (p.i == 0 && p.j == 0) continue;
      if (n % monomial_order(displacement(p, pp)) != 0) return false;
    }
    return true;
  };
  StabilizerSubgroup expected;
  expected.N = N;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      expected.members.push_back({static_cast<long long>(n) * a, static_cast<long long>(n) * b});
  std::sort(expected.members.begin(), expected.members.end(), [](const auto& u, const auto& v) {
    return std::pair(u.i, u.j) < std::pair(v.i, v.j);
  });
  if (!order_divides_n(expected))
    throw std::logic_error("unique_order_n_stabilizer: expected subgroup has a high-order member");
  int matches = 0;
  for (const auto& s : stabilizer_subgroups(N))
    if (order_divides_n(s)) ++matches;
  if (matches != 1)
    throw std::logic_error("unique_order_n_stabilizer: uniqueness violated (" +
                           std::to_string(matches) + " candidates)");
  return expected;
}

std::optional<KroneckerFactors> kronecker_factor_check(const MonomialMatrix& a, int n) {
  if (a.dim != n * n) throw std::invalid_argument("kronecker_factor_check: dim must be n^2");
  std::vector<int> rowB(n, -1), rowC(n, -1);
  for (int rp = 0; rp < n; ++rp) {
    for (int sp = 0; sp < n; ++sp) {
      int target = a.perm[rp * n + sp];
      int R = target / n, S = target % n;
      if (rowB[rp] < 0) rowB[rp] = R;
      else if (rowB[rp] != R) return std::nullopt;
      if (rowC[sp] < 0) rowC[sp] = S;
      else if (rowC[sp] != S) return std::nullopt;
    }
  }
  // Phases must split as phi(rp, sp) = beta(rp) + gamma(sp) with beta(0) = 0.
  std::vector<PhaseExp> beta(n), gamma(n);
  for (int sp = 0; sp < n; ++sp) gamma[sp] = a.phases[sp];
  for (int rp = 0; rp < n; ++rp) beta[rp] = a.phases[rp * n] * gamma[0].inverse();
  for (int rp = 0; rp < n; ++rp)
    for (int sp = 0; sp < n; ++sp)
      if (!(a.phases[rp * n + sp] == beta[rp] * gamma[sp])) return std::nullopt;
  return KroneckerFactors{MonomialMatrix(n, rowB, std::move(beta)),
                          MonomialMatrix(n, rowC, std::move(gamma))};
}

SchmidtReport schmidt_spectrum(const Eigen::VectorXcd& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n)
    throw std::invalid_argument("schmidt_spectrum: vector size must be n^2");
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("schmidt_spectrum: vector is not unit norm");
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) m(r, s) = v(r * n + s);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  SchmidtReport rep;
  rep.spectrum.assign(svd.singularValues().data(), svd.singularValues().data() + n);
  if (n == 2) rep.concurrence = 2.0 * std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  return rep;
}

}  // namespace wh
