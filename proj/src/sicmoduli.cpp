#include "wh/sicmoduli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wh {

namespace {

int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

int isqrt_exact(int N) {
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(N))));
  return n * n == N ? n : -1;
}

}  // namespace

std::vector<double> moduli_residuals_standard(const ModuliVector& p) {
  int N = p.N;
  if (static_cast<int>(p.p.size()) != N)
    throw std::invalid_argument("moduli_residuals_standard: size mismatch");
  std::vector<double> res(N);
  double sq = 0.0;
  for (int a = 0; a < N; ++a) sq += p.p[a] * p.p[a];
  res[0] = sq - 2.0 / (N + 1);
  for (int x = 1; x < N; ++x) {
    int xc = std::min(x, N - x);
    double sum = 0.0;
    for (int a = 0; a < N; ++a) sum += p.p[a] * p.p[(a + xc) % N];
    res[x] = sum - 1.0 / (N + 1);
  }
  return res;
}

std::map<std::pair<int, int>, std::complex<double>> phase_residuals(const FiducialComponents& f) {
  int N = f.N;
  if (f.z.size() != N) throw std::invalid_argument("phase_residuals: size mismatch");
  std::map<std::pair<int, int>, std::complex<double>> out;
  for (int i = 1; i < N; ++i) {
    for (int k = 1; k < N; ++k) {
      std::complex<double> sum = 0.0;
      for (int a = 0; a < N; ++a)
        sum += std::conj(f.z(a)) * std::conj(f.z(mod(a + k - i, N))) * f.z(mod(a + k, N)) *
               f.z(mod(a - i, N));
      out[{i, k}] = sum;
    }
  }
  return out;
}

std::vector<double> moduli_residuals_pp(const ModuliVector& p, int n) {
  int N = n * n;
  if (p.N != N || static_cast<int>(p.p.size()) != N)
    throw std::invalid_argument("moduli_residuals_pp: dimension is not n^2");
  std::vector<double> res(N);
  double sq = 0.0;
  for (int a = 0; a < N; ++a) sq += p.p[a] * p.p[a];
  res[0] = sq - 2.0 / (N + 1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == 0 && y == 0) continue;
      // Canonical offset (same summation order for (x,y) and (-x,-y)).
      auto [xc, yc] = std::min(std::pair(x, y), std::pair(mod(-x, n), mod(-y, n)));
      double sum = 0.0;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          sum += p.p[r * n + s] * p.p[mod(r + xc, n) * n + mod(s + yc, n)];
      res[x * n + y] = sum - 1.0 / (N + 1);
    }
  }
  return res;
}

DerivedIdentities derived_identities(const ModuliVector& p) {
  DerivedIdentities out;
  double sum = std::accumulate(p.p.begin(), p.p.end(), 0.0);
  out.s1 = sum * sum;
  if (p.N % 2 == 0) {
    double alt = 0.0;
    for (int a = 0; a < p.N; ++a) alt += (a % 2 == 0) ? p.p[a] : -p.p[a];
    out.s2 = alt * alt;
  }
  return out;
}

std::vector<std::vector<int>> independent_equation_set(int N, const RepBasis& basis) {
  std::vector<std::vector<int>> classes;
  classes.push_back({0});
  if (basis.tag == BasisTag::Standard) {
    for (int x = 1; x <= N / 2; ++x) {
      if (x == N - x) classes.push_back({x});
      else classes.push_back({x, N - x});
    }
  } else {
    int n = basis.n;
    if (n * n != N) throw std::invalid_argument("independent_equation_set: N is not n^2");
    std::vector<char> used(N, 0);
    used[0] = 1;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        int f = x * n + y;
        if (used[f]) continue;
        int g = mod(-x, n) * n + mod(-y, n);
        used[f] = used[g] = 1;
        if (f == g) classes.push_back({f});
        else classes.push_back({f, g});
      }
    }
  }
  return classes;
}

Q5 Q5::operator+(const Q5& o) const { return Q5(a + o.a, b + o.b); }
Q5 Q5::operator-(const Q5& o) const { return Q5(a - o.a, b - o.b); }
Q5 Q5::operator-() const { return Q5(-a, -b); }

Q5 Q5::operator*(const Q5& o) const {
  return Q5(a * o.a + Fraction(5, 1) * b * o.b, a * o.b + b * o.a);
}

Q5 Q5::inverse() const {
  // 1/(a + b√5) = (a - b√5) / (a^2 - 5 b^2)
  Fraction norm = a * a - Fraction(5, 1) * b * b;
  if (norm.is_zero()) throw std::invalid_argument("Q5: division by zero");
  return Q5(a / norm, -b / norm);
}

bool Q5::is_negative() const {
  bool a_neg = a.num < 0, b_neg = b.num < 0;
  if (!a_neg && !b_neg) return false;
  if (a_neg && b.num <= 0) return !(a.is_zero() && b.is_zero());
  // Mixed signs: compare a^2 with 5 b^2.
  Fraction lhs = a * a, rhs = Fraction(5, 1) * b * b;
  return a_neg ? lhs > rhs : lhs < rhs;
}

double Q5::to_double() const { return a.to_double() + b.to_double() * std::sqrt(5.0); }

std::string Q5::to_string() const {
  long long d = std::lcm(a.den, b.den);
  long long x = a.num * (d / a.den);
  long long y = b.num * (d / b.den);
  std::string s;
  if (y == 0) return d == 1 ? std::to_string(x) : std::to_string(x) + "/" + std::to_string(d);
  s += "(" + std::to_string(x);
  if (y == 1) s += "+√5";
  else if (y == -1) s += "-√5";
  else if (y > 0) s += "+" + std::to_string(y) + "√5";
  else s += "-" + std::to_string(-y) + "√5";
  s += ")";
  if (d != 1) s += "/" + std::to_string(d);
  return s;
}

ModuliSolveResult solve_moduli_n4() {
  // Square-rooting the four moduli equations at N = 4 yields, under the
  // ordering p00 >= p01 >= p10 >= p11 >= 0, the linear system
  //   p00 + p01 + p10 + p11 = 1
  //   p00 + p01 - p10 - p11 = u
  //   p00 - p01 + p10 - p11 = u          with u = 1/sqrt(5) = sqrt(5)/5;
  //   p00 - p01 - p10 + p11 = sign * u   the ordering leaves only this sign free.
  Q5 one(Fraction(1, 1), Fraction(0, 1));
  Q5 u(Fraction(0, 1), Fraction(1, 5));
  ModuliSolveResult result;
  bool found = false;
  for (int sign : {+1, -1}) {
    std::array<std::array<Q5, 4>, 4> m = {{
        {one, one, one, one},
        {one, one, -one, -one},
        {one, -one, one, -one},
        {one, -one, -one, one},
    }};
    std::array<Q5, 4> rhs = {one, u, u, sign > 0 ? u : -u};
    // Gaussian elimination over Q(sqrt 5).
    for (int col = 0; col < 4; ++col) {
      int pivot = -1;
      for (int row = col; row < 4; ++row)
        if (!m[row][col].is_zero()) {
          pivot = row;
          break;
        }
      if (pivot < 0) throw std::logic_error("solve_moduli_n4: singular system");
      std::swap(m[col], m[pivot]);
      std::swap(rhs[col], rhs[pivot]);
      Q5 inv = m[col][col].inverse();
      for (int c = col; c < 4; ++c) m[col][c] = m[col][c] * inv;
      rhs[col] = rhs[col] * inv;
      for (int row = 0; row < 4; ++row) {
        if (row == col || m[row][col].is_zero()) continue;
        Q5 factor = m[row][col];
        for (int c = col; c < 4; ++c) m[row][c] = m[row][c] - factor * m[col][c];
        rhs[row] = rhs[row] - factor * rhs[col];
      }
    }
    ModuliSolveBranch branch;
    branch.sign = sign;
    branch.p = rhs;
    branch.nonnegative = std::none_of(rhs.begin(), rhs.end(), [](const Q5& q) { return q.is_negative(); });
    if (branch.nonnegative) {
      if (found) throw std::logic_error("solve_moduli_n4: survivor is not unique");
      found = true;
      result.p = branch.p;
    }
    result.branches.push_back(std::move(branch));
  }
  if (!found) throw std::logic_error("solve_moduli_n4: no nonnegative solution");
  return result;
}

std::array<Q5, 4> moduli_residuals_pp_exact(const std::array<Q5, 4>& p) {
  const int n = 2;
  std::array<Q5, 4> res;
  Q5 sq;
  for (const auto& q : p) sq = sq + q * q;
  res[0] = sq - Q5(Fraction(2, 5), Fraction(0, 1));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == 0 && y == 0) continue;
      Q5 sum;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          sum = sum + p[r * n + s] * p[((r + x) % n) * n + (s + y) % n];
      res[x * n + y] = sum - Q5(Fraction(1, 5), Fraction(0, 1));
    }
  }
  return res;
}

}  // namespace wh
