#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wh/clifford.hpp"
#include "wh/fiducial_io.hpp"
#include "wh/heisenberg.hpp"
#include "wh/sicmoduli.hpp"
#include "wh/sicsearch.hpp"
#include "wh/theta.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json complex_json(const std::complex<double>& z) {
  return json::array({fmt17(z.real()), fmt17(z.imag())});
}

json dense_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json monomial_json(const wh::MonomialMatrix& m) {
  json perm = json::array();
  json turns = json::array();
  for (int c = 0; c < m.dim; ++c) {
    perm.push_back(m.perm[c]);
    turns.push_back(m.phases[c].to_string());
  }
  return json{{"dim", m.dim}, {"perm", perm}, {"phase_turns", turns}};
}

json fiducial_json(const wh::FiducialFile& ff) {
  json comps = json::array();
  for (const auto& z : ff.vector) comps.push_back(complex_json(z));
  return json{{"N", ff.N}, {"basis", ff.basis}, {"vector", comps}};
}

int emit_report(const std::string& command, json params, json results, bool pass,
                int fail_code = kExitFail) {
  json rep{{"command", command},
           {"params", std::move(params)},
           {"results", std::move(results)},
           {"pass", pass}};
  std::cout << rep.dump(2) << "\n";
  return pass ? kExitPass : fail_code;
}

int perfect_square_root(int N) {
  int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(N))));
  if (n < 1 || n * n != N)
    throw CLI::ValidationError("--N", std::to_string(N) + " is not a perfect square");
  return n;
}

wh::RepBasis basis_from_flags(int N, const std::string& basis) {
  if (basis == "std") return wh::RepBasis::standard(N);
  if (basis == "pp") return wh::RepBasis::phase_permutation(perfect_square_root(N));
  throw CLI::ValidationError("--basis", "must be std or pp");
}

int cmd_rep_show(int N, const std::string& basis_name) {
  wh::RepBasis basis = basis_from_flags(N, basis_name);
  auto [X, Z] = basis.tag == wh::BasisTag::Standard
                    ? wh::standard_generators(N)
                    : wh::pp_generators(basis.n);
  auto describe = [&](const char* name, const wh::MonomialMatrix& m) {
    std::cerr << name << " (" << basis_name << ", N=" << N << "), phase turns per column:\n";
    for (int c = 0; c < m.dim; ++c)
      std::cerr << "  col " << c << " -> row " << m.perm[c] << ", turn "
                << m.phases[c].to_string() << "\n";
  };
  describe("X", X);
  describe("Z", Z);
  json results{{"X", monomial_json(X)},
               {"Z", monomial_json(Z)},
               {"X_dense", dense_json(wh::monomial_to_dense(X))},
               {"Z_dense", dense_json(wh::monomial_to_dense(Z))}};
  return emit_report("rep show", json{{"N", N}, {"basis", basis_name}},
                     std::move(results), true);
}

int cmd_clifford_verify(int N, bool full_group, long long budget) {
  int n = perfect_square_root(N);
  wh::RepBasis pp = wh::RepBasis::phase_permutation(n);
  json params{{"N", N}, {"full_group", full_group}, {"budget", budget}};
  try {
    std::size_t count = 0;
    double max_snap = 0.0;
    long long expected = wh::projective_clifford_order(N);
    if (full_group) {
      std::size_t cap = budget > 0 ? static_cast<std::size_t>(budget)
                                   : static_cast<std::size_t>(expected);
      wh::ClosureResult closure = wh::clifford_group_closure(N, pp, cap);
      count = closure.elements.size();
      for (std::size_t k = 0; k < closure.generators.size(); ++k) {
        Eigen::MatrixXcd diff =
            wh::monomial_to_dense(closure.generators[k]) - closure.generator_dense[k];
        max_snap = std::max(max_snap, diff.cwiseAbs().maxCoeff());
      }
    } else {
      Eigen::MatrixXcd V = wh::change_of_basis(n);
      wh::RepBasis std_basis = wh::RepBasis::standard(N);
      for (const auto& F : {wh::SymplecticMatrix(N, 0, -1, 1, 0),
                            wh::SymplecticMatrix(N, 1, 0, 1, 1)}) {
        wh::CliffordElement el = wh::metaplectic_unitary(F, std_basis);
        Eigen::MatrixXcd u_pp = V.adjoint() * el.U * V;
        wh::MonomialMatrix m = wh::verify_monomiality(u_pp, 1e-9);
        max_snap = std::max(
            max_snap, (wh::monomial_to_dense(m) - u_pp).cwiseAbs().maxCoeff());
      }
    }
    bool pass = !full_group || count == static_cast<std::size_t>(expected);
    std::cerr << (full_group
                      ? "closure size " + std::to_string(count) + " (expected " +
                            std::to_string(expected) + ")"
                      : std::string("generators verified monomial"))
              << ", max snap error " << max_snap << "\n";
    json results{{"monomial", true},
                 {"max_snap_error", max_snap},
                 {"expected_projective_order", expected}};
    if (full_group) results["elements"] = count;
    return emit_report("clifford verify", std::move(params), std::move(results), pass);
  } catch (const wh::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    json results{{"error", std::string("budget exceeded: ") + e.what()}};
    emit_report("clifford verify", std::move(params), std::move(results), false,
                kExitBudget);
    return kExitBudget;
  } catch (const wh::NotMonomial& e) {
    std::cerr << "monomiality violated: " << e.what() << "\n";
    json results{{"error", std::string("not monomial: ") + e.what()}};
    return emit_report("clifford verify", std::move(params), std::move(results), false);
  }
}

int cmd_zauner(int N) {
  int n = perfect_square_root(N);
  wh::MonomialMatrix z = wh::zauner_unitary(n);
  auto [conj, report] = wh::zauner_block_diagonalize(z);
  wh::ZaunerSpectrum spec = wh::zauner_spectrum(wh::monomial_to_dense(z));
  int l = (N % 3 == 0) ? N / 3 : (N - 1) / 3;
  json diag = json::array();
  for (const auto& ph : report.diagonal) diag.push_back(ph.to_string());
  bool pass = spec.m_one == l + 1;
  std::cerr << "blocks " << report.blocks << ", diagonals " << report.diagonal.size()
            << ", invariant dim " << spec.m_one << " (l+1 = " << (l + 1) << ")\n";
  json results{{"blocks", report.blocks},
               {"diagonals", static_cast<int>(report.diagonal.size())},
               {"diagonal_turns", diag},
               {"invariant_dim", spec.m_one},
               {"multiplicities", json::array({spec.m_one, spec.m_omega, spec.m_omega_sq})},
               {"expected_invariant_dim", l + 1}};
  return emit_report("zauner", json{{"N", N}}, std::move(results), pass);
}

int cmd_sic_solve_n4() {
  wh::ModuliSolveResult res = wh::solve_moduli_n4();
  json branches = json::array();
  for (const auto& br : res.branches) {
    json vals = json::array();
    for (const auto& q : br.p)
      vals.push_back(json{{"symbolic", q.to_string()}, {"decimal", fmt17(q.to_double())}});
    branches.push_back(json{{"sign", br.sign}, {"p", vals}, {"nonnegative", br.nonnegative}});
  }
  std::array<wh::Q5, 4> residuals = wh::moduli_residuals_pp_exact(res.p);
  bool zero_residual = true;
  json resid = json::array();
  for (const auto& r : residuals) {
    zero_residual = zero_residual && r.is_zero();
    resid.push_back(r.to_string());
  }
  json accepted = json::array();
  for (const auto& q : res.p)
    accepted.push_back(json{{"symbolic", q.to_string()}, {"decimal", fmt17(q.to_double())}});
  int rejected = 0;
  for (const auto& br : res.branches)
    if (!br.nonnegative) ++rejected;
  bool pass = zero_residual && rejected == 1;
  for (const auto& q : res.p) std::cerr << q.to_string() << " = " << q.to_double() << "\n";
  json results{{"branches", branches},
               {"moduli", accepted},
               {"exact_residuals", resid},
               {"rejected_branches", rejected}};
  return emit_report("sic solve-n4", json::object(), std::move(results), pass);
}

int cmd_sic_search(int N, const std::string& basis_name, std::uint64_t seed,
                   int restarts, int iters, double tol, bool zauner, int threads,
                   const std::string& out_path) {
  wh::SearchConfig cfg;
  if (zauner) {
    if (basis_name == "std")
      throw CLI::ValidationError("--zauner", "needs the pp basis");
    cfg.basis = wh::RepBasis::phase_permutation(perfect_square_root(N));
    cfg.subspace = wh::zauner_invariant_parametrization(N);
  } else {
    cfg.basis = basis_from_flags(N, basis_name);
  }
  cfg.seed = seed;
  cfg.restarts = restarts;
  cfg.max_iters = iters;
  cfg.tol = tol;
  cfg.threads = threads;
  wh::SearchResult res = wh::search_fiducial(cfg);
  wh::FiducialFile ff = wh::fiducial_to_file(res.fiducial);
  if (!out_path.empty()) wh::save_fiducial_file(out_path, ff);
  double target = static_cast<double>(N - 1) / (N + 1);
  std::cerr << "frame potential " << fmt17(res.attained) << " (target " << fmt17(target)
            << "), excess " << res.excess << ", restarts used " << res.restarts_used
            << (res.converged ? "" : ", NOT converged") << "\n";
  json params{{"N", N},
              {"basis", zauner ? "pp" : basis_name},
              {"seed", seed},
              {"restarts", restarts},
              {"iters", iters},
              {"tol", tol},
              {"zauner", zauner},
              {"threads", threads}};
  json results{{"attained", fmt17(res.attained)},
               {"target", fmt17(target)},
               {"excess", fmt17(res.excess)},
               {"restarts_used", res.restarts_used},
               {"converged", res.converged},
               {"fiducial", fiducial_json(ff)}};
  return emit_report("sic search", std::move(params), std::move(results), res.converged,
                     kExitBudget);
}

int cmd_sic_check(const std::string& path) {
  wh::FiducialFile ff = wh::load_fiducial_file(path);
  wh::Fiducial f = wh::fiducial_from_file(ff);
  std::vector<double> prof = wh::overlap_profile(f);
  double target = 1.0 / (f.N() + 1);
  double worst = 0.0;
  for (std::size_t p = 1; p < prof.size(); ++p)
    worst = std::max(worst, std::abs(prof[p] - target));
  bool pass = worst < 1e-7;
  std::cerr << "max overlap deviation " << worst << "\n";
  json results{{"max_overlap_deviation", worst}, {"target", fmt17(target)}};
  return emit_report("sic check", json{{"file", path}}, std::move(results), pass);
}

int cmd_theta(const std::string& tau_text, int trunc, int n) {
  std::complex<double> tau = wh::parse_complex(tau_text);
  if (!(tau.imag() > 0.0))
    throw CLI::ValidationError("--tau", "imaginary part must be positive");
  wh::LatticeParams lp(tau, trunc);
  std::vector<std::complex<double>> samples = wh::default_sample_points();
  wh::Fraction shift(1, n);
  double law_worst = 0.0;
  double tail_worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      wh::ThetaCharacteristic c(wh::Fraction(i, n), wh::Fraction(j, n), n);
      law_worst = std::max(law_worst, wh::action_check(c, shift, shift, lp, samples));
      law_worst =
          std::max(law_worst, wh::quasi_periodicity_check(c, 1, 1, lp, samples));
      for (const auto& z : samples)
        tail_worst = std::max(tail_worst, wh::theta_char(z, c, lp).tail_bound);
    }
  }
  double induced = wh::induced_action_residual(n, lp, samples);
  bool pass = law_worst < 1e-10 && induced < 1e-9;
  std::cerr << "max law residual " << law_worst << ", induced action residual "
            << induced << ", max tail bound " << tail_worst << "\n";
  json results{{"max_law_residual", law_worst},
               {"induced_action_residual", induced},
               {"max_tail_bound", tail_worst}};
  return emit_report("theta",
                     json{{"tau", tau_text}, {"trunc", trunc}, {"n", n}},
                     std::move(results), pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite Weyl-Heisenberg and SIC workbench"};
  app.require_subcommand(1);

  int rep_N = 4;
  std::string rep_basis = "std";
  auto* rep = app.add_subcommand("rep", "representation matrices");
  auto* rep_show = rep->add_subcommand("show", "print X and Z");
  rep_show->add_option("--N", rep_N, "dimension")->required();
  rep_show->add_option("--basis", rep_basis, "std or pp")
      ->check(CLI::IsMember({"std", "pp"}));

  int cv_N = 4;
  bool cv_full = false;
  long long cv_budget = 0;
  auto* clifford = app.add_subcommand("clifford", "Clifford group checks");
  auto* cv = clifford->add_subcommand("verify", "verify monomiality in the pp basis");
  cv->add_option("--N", cv_N, "dimension (perfect square)")->required();
  cv->add_flag("--full-group", cv_full, "close the whole projective group");
  cv->add_option("--budget", cv_budget, "max closure elements");

  int z_N = 4;
  auto* zauner = app.add_subcommand("zauner", "Zauner unitary block structure");
  zauner->add_option("--N", z_N, "dimension (perfect square)")->required();

  auto* sic = app.add_subcommand("sic", "SIC fiducial tools");
  auto* solve = sic->add_subcommand("solve-n4", "exact N=4 moduli");
  (void)solve;
  int s_N = 4;
  std::string s_basis = "std";
  std::uint64_t s_seed = 1;
  int s_restarts = 60;
  int s_iters = 6000;
  double s_tol = 1e-9;
  bool s_zauner = false;
  int s_threads = 1;
  std::string s_out;
  auto* search = sic->add_subcommand("search", "numerical fiducial search");
  search->add_option("--N", s_N, "dimension")->required();
  search->add_option("--basis", s_basis, "std or pp")
      ->check(CLI::IsMember({"std", "pp"}));
  search->add_option("--seed", s_seed, "rng seed");
  search->add_option("--restarts", s_restarts, "restart count");
  search->add_option("--iters", s_iters, "iterations per restart");
  search->add_option("--tol", s_tol, "convergence tolerance on the excess");
  search->add_flag("--zauner", s_zauner, "restrict to the Zauner fixed space (pp)");
  search->add_option("--threads", s_threads, "worker threads");
  search->add_option("--out", s_out, "write the fiducial JSON here");
  std::string c_file;
  auto* check = sic->add_subcommand("check", "verify a fiducial file");
  check->add_option("--file", c_file, "fiducial JSON path")->required();

  std::string t_tau = "0+1i";
  int t_trunc = 40;
  int t_n = 2;
  auto* theta = app.add_subcommand("theta", "theta-function law checks");
  theta->add_option("--tau", t_tau, "lattice parameter, e.g. 0+1i");
  theta->add_option("--trunc", t_trunc, "series truncation");
  theta->add_option("--n", t_n, "characteristic order");

  try {
    app.parse(argc, argv);
    if (rep_show->parsed()) return cmd_rep_show(rep_N, rep_basis);
    if (cv->parsed()) return cmd_clifford_verify(cv_N, cv_full, cv_budget);
    if (zauner->parsed()) return cmd_zauner(z_N);
    if (sic->parsed()) {
      if (sic->get_subcommand("solve-n4")->parsed()) return cmd_sic_solve_n4();
      if (search->parsed()) {
        if (s_zauner && search->count("--basis") == 0) s_basis = "pp";
        return cmd_sic_search(s_N, s_basis, s_seed, s_restarts, s_iters, s_tol,
                              s_zauner, s_threads, s_out);
      }
      if (check->parsed()) return cmd_sic_check(c_file);
      throw CLI::ValidationError("sic", "needs a subcommand");
    }
    if (theta->parsed()) return cmd_theta(t_tau, t_trunc, t_n);
    throw CLI::ValidationError("whbench", "no subcommand given");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const wh::TailBound& e) {
    std::cerr << "tail bound: " << e.what() << "\n";
    return kExitBudget;
  } catch (const wh::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
