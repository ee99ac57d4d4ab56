#include "wh/sicsearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <thread>

#include "wh/heisenberg.hpp"

namespace wh {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct DisplacementTable {
  int N;
  // flat p = i*N + j; entry holds the permutation and dense phases of D_p
  std::vector<std::vector<int>> perm;
  std::vector<std::vector<std::complex<double>>> phase;
};

DisplacementTable displacement_table(const RepBasis& basis) {
  DisplacementTable t;
  t.N = basis.N;
  t.perm.reserve(static_cast<std::size_t>(t.N) * t.N);
  t.phase.reserve(static_cast<std::size_t>(t.N) * t.N);
  for (int i = 0; i < t.N; ++i) {
    for (int j = 0; j < t.N; ++j) {
      MonomialMatrix d = displacement({i, j}, basis);
      std::vector<std::complex<double>> ph(d.dim);
      for (int c = 0; c < d.dim; ++c) ph[c] = d.phases[c].value();
      t.perm.push_back(std::move(d.perm));
      t.phase.push_back(std::move(ph));
    }
  }
  return t;
}

std::complex<double> overlap(const DisplacementTable& t, std::size_t p,
                             const Eigen::VectorXcd& v) {
  const auto& perm = t.perm[p];
  const auto& ph = t.phase[p];
  std::complex<double> acc = 0.0;
  for (int c = 0; c < t.N; ++c) acc += std::conj(v[perm[c]]) * ph[c] * v[c];
  return acc;
}

// weights w_p multiply the per-label terms: w_p = |g_p|^2 gives the frame
// potential gradient, w_p = |g_p|^2 - 1/(N+1) the excess gradient
Eigen::VectorXcd weighted_gradient(const DisplacementTable& t,
                                   const Eigen::VectorXcd& v,
                                   bool excess_weights) {
  const int N = t.N;
  const double target = 1.0 / (N + 1);
  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(N);
  for (std::size_t p = 1; p < t.perm.size(); ++p) {
    std::complex<double> g = overlap(t, p, v);
    double w = std::norm(g);
    if (excess_weights) w -= target;
    const auto& perm = t.perm[p];
    const auto& ph = t.phase[p];
    for (int c = 0; c < N; ++c) {
      // D_p v contribution and its adjoint
      grad[perm[c]] += 2.0 * w * std::conj(g) * ph[c] * v[c];
      grad[c] += 2.0 * w * g * std::conj(ph[c]) * v[perm[c]];
    }
  }
  return grad;
}

double excess_value(const DisplacementTable& t, const Eigen::VectorXcd& v) {
  const double target = 1.0 / (t.N + 1);
  double acc = 0.0;
  for (std::size_t p = 1; p < t.perm.size(); ++p) {
    double d = std::norm(overlap(t, p, v)) - target;
    acc += d * d;
  }
  return acc;
}

struct RestartOutcome {
  double excess = 0.0;
  Eigen::VectorXcd x;  // subspace coordinates (or full vector)
};

// Nonmonotone Barzilai-Borwein descent on the unit sphere in x-coordinates.
RestartOutcome run_restart(const DisplacementTable& t,
                           const std::optional<Eigen::MatrixXcd>& Q,
                           std::uint64_t seed, int max_iters) {
  const int dim = Q ? static_cast<int>(Q->cols()) : t.N;
  Eigen::VectorXcd x = random_unit_vector(dim, seed);

  auto lift = [&](const Eigen::VectorXcd& xc) -> Eigen::VectorXcd {
    return Q ? Eigen::VectorXcd((*Q) * xc) : xc;
  };
  auto grad_at = [&](const Eigen::VectorXcd& xc) -> Eigen::VectorXcd {
    Eigen::VectorXcd g = weighted_gradient(t, lift(xc), true);
    if (Q) g = Q->adjoint() * g;
    // project onto the tangent space of the sphere
    g -= std::complex<double>(g.dot(xc).real() / xc.squaredNorm(), 0.0) * xc;
    return g;
  };

  double f = excess_value(t, lift(x));
  Eigen::VectorXcd g = grad_at(x);
  double step = 1e-2;
  std::deque<double> recent = {f};
  Eigen::VectorXcd x_prev, g_prev;
  bool have_prev = false;

  for (int it = 0; it < max_iters; ++it) {
    double gn = g.norm();
    if (gn < 1e-18 || f < 1e-30) break;
    if (have_prev) {
      Eigen::VectorXcd dx = x - x_prev;
      Eigen::VectorXcd dg = g - g_prev;
      double num = dx.dot(dx).real();
      double den = dx.dot(dg).real();
      if (den > 0.0 && num > 0.0) step = num / den;
      step = std::clamp(step, 1e-14, 1e4);
    }
    double fref = *std::max_element(recent.begin(), recent.end());
    double s = step;
    Eigen::VectorXcd xn;
    double fn = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      xn = x - s * g;
      xn /= xn.norm();
      fn = excess_value(t, lift(xn));
      if (fn < fref) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    x_prev = x;
    g_prev = g;
    have_prev = true;
    x = xn;
    f = fn;
    g = grad_at(x);
    recent.push_back(f);
    if (recent.size() > 12) recent.pop_front();
  }
  return {f, x};
}

}  // namespace

Eigen::VectorXcd random_unit_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&](bool open_at_zero) {
    std::uint64_t bits = rng() >> 11;
    if (open_at_zero) bits += 1;  // (0,1], safe for log
    return static_cast<double>(bits) * 0x1.0p-53;
  };
  Eigen::VectorXcd x(dim);
  for (int i = 0; i < dim; ++i) {
    double r = std::sqrt(-2.0 * std::log(unit(true)));
    double a = kTwoPi * unit(false);
    x[i] = std::complex<double>(r * std::cos(a), r * std::sin(a));
  }
  x /= x.norm();
  return x;
}

std::vector<double> overlap_profile(const Fiducial& f) {
  if (std::abs(f.v.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("fiducial must be unit norm");
  DisplacementTable t = displacement_table(f.basis);
  std::vector<double> out;
  out.reserve(t.perm.size());
  for (std::size_t p = 0; p < t.perm.size(); ++p)
    out.push_back(std::norm(overlap(t, p, f.v)));
  return out;
}

double frame_potential(const Fiducial& f) {
  if (std::abs(f.v.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("fiducial must be unit norm");
  DisplacementTable t = displacement_table(f.basis);
  double acc = 0.0;
  for (std::size_t p = 1; p < t.perm.size(); ++p) {
    double m = std::norm(overlap(t, p, f.v));
    acc += m * m;
  }
  return acc;
}

Eigen::VectorXcd frame_potential_gradient(const Fiducial& f) {
  DisplacementTable t = displacement_table(f.basis);
  return weighted_gradient(t, f.v, false);
}

Eigen::MatrixXcd zauner_invariant_parametrization(int N) {
  int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(N))));
  if (n * n != N) throw std::invalid_argument("N must be a perfect square");
  MonomialMatrix z = zauner_unitary(n);
  std::vector<CycleEigenvector> eigs = monomial_eigenvectors(z);
  std::vector<const CycleEigenvector*> unit;
  for (const auto& e : eigs)
    if (e.eigenvalue.is_one()) unit.push_back(&e);
  std::sort(unit.begin(), unit.end(),
            [](const CycleEigenvector* a, const CycleEigenvector* b) {
              return a->support[0] < b->support[0];
            });
  int l = (N % 3 == 0) ? N / 3 : (N - 1) / 3;
  if (static_cast<int>(unit.size()) != l + 1)
    throw std::logic_error("unexpected fixed-space dimension");
  Eigen::MatrixXcd Q(N, unit.size());
  for (std::size_t k = 0; k < unit.size(); ++k) Q.col(k) = unit[k]->dense(N);
  Eigen::MatrixXcd gram = Q.adjoint() * Q;
  if ((gram - Eigen::MatrixXcd::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff() > 1e-12)
    throw std::logic_error("eigenvector columns are not orthonormal");
  return Q;
}

SearchResult search_fiducial(const SearchConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw std::invalid_argument("restarts and max_iters must be positive");
  if (cfg.subspace) {
    if (cfg.subspace->rows() != cfg.basis.N)
      throw std::invalid_argument("subspace row count must match N");
    Eigen::MatrixXcd gram = cfg.subspace->adjoint() * (*cfg.subspace);
    if ((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
            .cwiseAbs()
            .maxCoeff() > 1e-10)
      throw std::invalid_argument("subspace columns must be orthonormal");
  }
  DisplacementTable t = displacement_table(cfg.basis);

  constexpr double kDeep = 1e-24;
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::vector<char> done(cfg.restarts, 0);

  auto run_one = [&](int r) {
    outcomes[r] = run_restart(t, cfg.subspace, cfg.seed + static_cast<std::uint64_t>(r),
                              cfg.max_iters);
    done[r] = 1;
  };

  int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    // sequential mode can stop as soon as a deep minimum appears; the
    // selection rule below picks the same winner either way
    for (int r = 0; r < cfg.restarts; ++r) {
      run_one(r);
      if (outcomes[r].excess <= kDeep) break;
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int k = 0; k < threads; ++k) {
      pool.emplace_back([&] {
        for (;;) {
          int r = next.fetch_add(1);
          if (r >= cfg.restarts) return;
          run_one(r);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // earliest deep restart wins; otherwise the best excess (ties to the
  // earliest index) over everything that ran
  int winner = -1;
  int used = 0;
  for (int r = 0; r < cfg.restarts && done[r]; ++r) {
    used = r + 1;
    if (outcomes[r].excess <= kDeep) {
      winner = r;
      break;
    }
  }
  if (winner < 0) {
    used = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
      if (!done[r]) continue;
      used = r + 1;
      if (winner < 0 || outcomes[r].excess < outcomes[winner].excess) winner = r;
    }
  }

  const RestartOutcome& best = outcomes[winner];
  Eigen::VectorXcd v = cfg.subspace ? Eigen::VectorXcd((*cfg.subspace) * best.x) : best.x;
  v /= v.norm();

  SearchResult res;
  res.fiducial = Fiducial{cfg.basis, v};
  res.excess = excess_value(t, v);
  double fp = 0.0;
  for (std::size_t p = 1; p < t.perm.size(); ++p) {
    double m = std::norm(overlap(t, p, v));
    fp += m * m;
  }
  res.attained = fp;
  res.restarts_used = used;
  res.converged = res.excess <= cfg.tol;
  return res;
}

std::vector<Eigen::VectorXcd> orbit(const Fiducial& f) {
  DisplacementTable t = displacement_table(f.basis);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(t.perm.size());
  for (std::size_t p = 0; p < t.perm.size(); ++p) {
    Eigen::VectorXcd w(t.N);
    for (int c = 0; c < t.N; ++c) w[t.perm[p][c]] = t.phase[p][c] * f.v[c];
    out.push_back(std::move(w));
  }
  return out;
}

MultipletReport multiplet_report(const Fiducial& f) {
  if (f.basis.tag != BasisTag::PhasePermutation)
    throw std::invalid_argument("multiplet report needs the PP basis");
  const int n = f.basis.n;
  const int N = f.basis.N;
  std::vector<Eigen::VectorXcd> vecs = orbit(f);

  MultipletReport rep;
  rep.spectra.reserve(vecs.size());
  rep.coset.reserve(vecs.size());
  if (n == 2) rep.concurrences.emplace();
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      SchmidtReport s = schmidt_spectrum(vecs[static_cast<std::size_t>(i) * N + j], n);
      rep.spectra.push_back(s.spectrum);
      rep.coset.push_back(i % n);
      if (rep.concurrences) rep.concurrences->push_back(*s.concurrence);
    }
  }

  std::vector<std::vector<double>> rep_spec(n);
  double spread = 0.0;
  for (std::size_t k = 0; k < rep.spectra.size(); ++k) {
    auto& head = rep_spec[rep.coset[k]];
    if (head.empty()) {
      head = rep.spectra[k];
      continue;
    }
    for (std::size_t q = 0; q < head.size(); ++q)
      spread = std::max(spread, std::abs(head[q] - rep.spectra[k][q]));
  }
  rep.max_intra_coset_spread = spread;
  if (spread > 1e-8)
    throw std::logic_error("Schmidt spectra vary within a coset");

  // count distinct coset spectra at coarse resolution
  std::vector<int> cls(n, -1);
  int classes = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < a; ++b) {
      double d = 0.0;
      for (std::size_t q = 0; q < rep_spec[a].size(); ++q)
        d = std::max(d, std::abs(rep_spec[a][q] - rep_spec[b][q]));
      if (d <= 1e-6) {
        cls[a] = cls[b];
        break;
      }
    }
    if (cls[a] < 0) cls[a] = classes++;
  }
  rep.distinct_across_cosets = classes;
  return rep;
}

}  // namespace wh
