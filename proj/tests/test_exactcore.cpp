#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <set>

#include "wh/exactcore.hpp"

using namespace wh;

namespace {

MonomialMatrix random_monomial(int dim, std::mt19937_64& rng, long long max_den = 12) {
  std::vector<int> perm(dim);
  for (int i = 0; i < dim; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<PhaseExp> ph(dim);
  for (int i = 0; i < dim; ++i) {
    long long d = 1 + static_cast<long long>(rng() % max_den);
    ph[i] = PhaseExp(static_cast<long long>(rng() % (2 * d)), d);
  }
  return MonomialMatrix(dim, std::move(perm), std::move(ph));
}

}  // namespace

TEST_CASE("fractions reduce and order correctly") {
  CHECK(Fraction(2, 4) == Fraction(1, 2));
  CHECK(Fraction(-3, -6) == Fraction(1, 2));
  CHECK(Fraction(3, -6) == Fraction(-1, 2));
  CHECK(Fraction(0, 7) == Fraction());
  CHECK(Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2));
  CHECK(Fraction(1, 3) - Fraction(1, 2) == Fraction(-1, 6));
  CHECK(Fraction(2, 3) * Fraction(3, 4) == Fraction(1, 2));
  CHECK(Fraction(1, 3) / Fraction(2, 9) == Fraction(3, 2));
  CHECK(Fraction(1, 3) < Fraction(1, 2));
  CHECK(Fraction(-1, 2) < Fraction(1, 3));
  CHECK_THROWS(Fraction(1, 0));
}

TEST_CASE("phases live on the unit circle mod one turn") {
  CHECK(PhaseExp(3, 6) == PhaseExp(1, 2));
  CHECK(PhaseExp(5, 4) == PhaseExp(1, 4));
  CHECK(PhaseExp(-1, 4) == PhaseExp(3, 4));
  CHECK(PhaseExp(4, 4) == PhaseExp());
  CHECK(PhaseExp().is_one());
  CHECK(PhaseExp(0, 9).denominator() == 1);

  CHECK(PhaseExp(1, 3) * PhaseExp(1, 2) == PhaseExp(5, 6));
  CHECK(PhaseExp(1, 3) * PhaseExp(2, 3) == PhaseExp());
  CHECK(PhaseExp(1, 5).inverse() == PhaseExp(4, 5));
  CHECK(PhaseExp(1, 5).pow(3) == PhaseExp(3, 5));
  CHECK(PhaseExp(1, 5).pow(-1) == PhaseExp(4, 5));
  CHECK(PhaseExp(1, 5).pow(0) == PhaseExp());

  CHECK(PhaseExp(1, 4).value().real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(PhaseExp(1, 4).value().imag() == doctest::Approx(1.0));
  CHECK(PhaseExp(1, 2).value().real() == doctest::Approx(-1.0));
}

TEST_CASE("monomial constructor rejects non-bijective column maps") {
  CHECK_THROWS_AS(MonomialMatrix(2, {0, 0}, {PhaseExp(), PhaseExp()}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialMatrix(2, {0}, {PhaseExp()}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialMatrix(2, {0, 2}, {PhaseExp(), PhaseExp()}), std::invalid_argument);
}

TEST_CASE("composition matches dense matrix multiplication") {
  std::mt19937_64 rng(7);
  for (int dim : {2, 3, 5, 8}) {
    for (int rep = 0; rep < 25; ++rep) {
      MonomialMatrix a = random_monomial(dim, rng);
      MonomialMatrix b = random_monomial(dim, rng);
      Eigen::MatrixXcd lhs = monomial_to_dense(monomial_compose(a, b));
      Eigen::MatrixXcd rhs = monomial_to_dense(a) * monomial_to_dense(b);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("inverse composes to the exact identity") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    MonomialMatrix a = random_monomial(2 + rep % 6, rng);
    CHECK(monomial_compose(a, monomial_inverse(a)).is_identity());
    CHECK(monomial_compose(monomial_inverse(a), a).is_identity());
  }
}

TEST_CASE("powers match repeated composition") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 12; ++rep) {
    MonomialMatrix a = random_monomial(2 + rep % 5, rng);
    MonomialMatrix acc = MonomialMatrix::identity(a.dim);
    for (int k = 0; k <= 7; ++k) {
      CHECK(monomial_pow(a, k) == acc);
      acc = monomial_compose(acc, a);
    }
    CHECK(monomial_pow(a, -3) == monomial_inverse(monomial_pow(a, 3)));
  }
}

TEST_CASE("order agrees with brute-force repeated composition") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    MonomialMatrix a = random_monomial(2 + rep % 4, rng, 6);
    long long ord = monomial_order(a);
    CHECK(monomial_pow(a, ord).is_identity());
    MonomialMatrix acc = a;
    long long brute = 1;
    while (!acc.is_identity()) {
      acc = monomial_compose(acc, a);
      ++brute;
      REQUIRE(brute <= ord);
    }
    CHECK(brute == ord);
  }
}

TEST_CASE("order computation respects its overflow cap") {
  MonomialMatrix a(1, {0}, {PhaseExp(1, 101)});
  CHECK(monomial_order(a) == 101);
  CHECK_THROWS_AS(monomial_order(a, 100), OrderOverflow);
}

TEST_CASE("angle snapping prefers the smallest denominator") {
  CHECK(snap_turn(3.14159265358979, 1e-6, 24) == PhaseExp(1, 2));
  CHECK(snap_turn(-1.5707963267949, 1e-6, 24) == PhaseExp(3, 4));
  CHECK(snap_turn(2.0 * 3.14159265358979 / 3.0 + 1e-9, 1e-6, 24) == PhaseExp(1, 3));
  CHECK(snap_turn(0.0, 1e-9, 24) == PhaseExp());
  // 1/24 turn is close to 1/23 of a turn only at loose tolerance; the snap
  // must not accept a nearby fraction outside tolerance
  CHECK_THROWS_AS(snap_turn(0.1, 1e-12, 24), PhaseNotRecognized);
}

TEST_CASE("dense round trip recovers the exact monomial form") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 30; ++rep) {
    MonomialMatrix a = random_monomial(2 + rep % 7, rng);
    Eigen::MatrixXcd d = monomial_to_dense(a);
    Eigen::MatrixXcd noise = Eigen::MatrixXcd::Random(a.dim, a.dim) * 1e-12;
    CHECK(extract_monomial(d + noise, 1e-9, 24) == a);
  }
}

TEST_CASE("extraction rejects dense matrices with spread-out support") {
  Eigen::MatrixXcd h(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  CHECK_THROWS_AS(extract_monomial(h, 1e-9, 24), NotMonomial);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
  CHECK_THROWS_AS(extract_monomial(z, 1e-9, 24), NotMonomial);
}

TEST_CASE("extraction rejects entries off the rational-turn lattice") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = std::polar(1.0, 0.1);
  m(1, 1) = 1.0;
  CHECK_THROWS_AS(extract_monomial(m, 1e-9, 24), PhaseNotRecognized);
}

TEST_CASE("projective canonical form strips the leading phase") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    MonomialMatrix a = random_monomial(3, rng);
    MonomialMatrix c = canonical_projective(a);
    CHECK(c.phases[0].is_one());
    // same element up to a global phase
    PhaseExp g = a.phases[0];
    for (int k = 0; k < a.dim; ++k) {
      CHECK(c.perm[k] == a.perm[k]);
      CHECK(c.phases[k] * g == a.phases[k]);
    }
    CHECK(canonical_projective(c) == c);
  }
}

TEST_CASE("lexicographic order and keys separate distinct matrices") {
  std::mt19937_64 rng(29);
  std::vector<MonomialMatrix> mats;
  std::set<std::string> keys;
  for (int rep = 0; rep < 40; ++rep) mats.push_back(random_monomial(4, rng));
  for (const auto& m : mats) keys.insert(monomial_key(m));
  std::set<std::string> again;
  for (const auto& m : mats) again.insert(monomial_key(m));
  CHECK(keys == again);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = 0; j < mats.size(); ++j) {
      bool same_key = monomial_key(mats[i]) == monomial_key(mats[j]);
      CHECK(same_key == (mats[i] == mats[j]));
      if (lexicographic_less(mats[i], mats[j])) CHECK(!lexicographic_less(mats[j], mats[i]));
    }
  }
}

TEST_CASE("cycle eigenvectors diagonalize the matrix exactly") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    int dim = 2 + rep % 5;
    MonomialMatrix a = random_monomial(dim, rng, 8);
    Eigen::MatrixXcd d = monomial_to_dense(a);
    auto eigs = monomial_eigenvectors(a);
    REQUIRE(static_cast<int>(eigs.size()) == dim);
    Eigen::MatrixXcd basis(dim, dim);
    for (int k = 0; k < dim; ++k) {
      Eigen::VectorXcd v = eigs[k].dense(dim);
      CHECK((d * v - eigs[k].eigenvalue.value() * v).cwiseAbs().maxCoeff() < 1e-13);
      basis.col(k) = v;
    }
    Eigen::MatrixXcd gram = basis.adjoint() * basis;
    CHECK((gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("eigenvalue multisets agree with a dense eigensolver") {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    int dim = 3 + rep % 4;
    MonomialMatrix a = random_monomial(dim, rng, 6);
    auto eigs = monomial_eigenvectors(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(monomial_to_dense(a));
    std::vector<bool> used(dim, false);
    for (const auto& e : eigs) {
      std::complex<double> lambda = e.eigenvalue.value();
      int best = -1;
      double best_dist = 1e9;
      for (int k = 0; k < dim; ++k) {
        if (used[k]) continue;
        double dist = std::abs(es.eigenvalues()[k] - lambda);
        if (dist < best_dist) {
          best_dist = dist;
          best = k;
        }
      }
      REQUIRE(best >= 0);
      used[best] = true;
      CHECK(best_dist < 1e-10);
    }
  }
}
