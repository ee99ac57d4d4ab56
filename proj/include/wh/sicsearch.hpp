#pragma once

#include <cstdint>
#include <optional>

#include "wh/clifford.hpp"

namespace wh {

// Unit vector whose Heisenberg orbit is tested for SIC-ness.
struct Fiducial {
  RepBasis basis;
  Eigen::VectorXcd v;

  int N() const { return basis.N; }
};

struct SearchConfig {
  RepBasis basis = RepBasis::standard(2);
  int restarts = 60;
  int max_iters = 6000;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::optional<Eigen::MatrixXcd> subspace;  // orthonormal columns
  int threads = 1;
};

struct SearchResult {
  Fiducial fiducial;
  double attained = 0.0;   // frame potential at the result
  double excess = 0.0;     // attained minus (N-1)/(N+1), accumulated stably
  int restarts_used = 0;
  bool converged = false;
};

// |<v|D_p|v>|^2 for all N^2 displacement labels, flat order p = i*N + j.
std::vector<double> overlap_profile(const Fiducial& f);

// sum_{p != 0} |<v|D_p|v>|^4; minimum (N-1)/(N+1), attained by SIC fiducials.
double frame_potential(const Fiducial& f);

// Derivative with respect to conj(v): directional derivatives are
// 2 Re(g_i) along real coordinate steps and 2 Im(g_i) along imaginary ones.
Eigen::VectorXcd frame_potential_gradient(const Fiducial& f);

// Orthonormal basis (N x (l+1)) of the eigenvalue-1 eigenspace of the
// phase-fixed Zauner unitary in the PP basis; N = n^2, l+1 asserted.
Eigen::MatrixXcd zauner_invariant_parametrization(int N);

// Seeded per-restart minimization of the frame potential (through its
// cancellation-free excess form) on the unit sphere, optionally restricted
// to a subspace. Deterministic for fixed (seed, config), any thread count.
SearchResult search_fiducial(const SearchConfig& cfg);

// D_p v for all N^2 labels, flat order.
std::vector<Eigen::VectorXcd> orbit(const Fiducial& f);

struct MultipletReport {
  std::vector<std::vector<double>> spectra;        // Schmidt spectra per orbit entry
  std::vector<int> coset;                          // i mod n per orbit entry
  double max_intra_coset_spread = 0.0;
  int distinct_across_cosets = 0;
  std::optional<std::vector<double>> concurrences; // n = 2 only
};

// Schmidt spectra of the orbit grouped by the cosets X^m <Z, X^n>; spectra
// must be constant within each coset (local unitary invariance).
MultipletReport multiplet_report(const Fiducial& f);

// Deterministic complex-Gaussian unit vector (shared by search restarts and
// reproducibility checks).
Eigen::VectorXcd random_unit_vector(int dim, std::uint64_t seed);

}  // namespace wh
