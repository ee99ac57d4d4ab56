#include "wh/fiducial_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace wh {

namespace {

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double_strict(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number: " + s);
  }
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

int sqrt_or_throw(int N) {
  int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(N))));
  if (n * n != N)
    throw std::invalid_argument("pp basis needs a perfect-square dimension");
  return n;
}

}  // namespace

FiducialFile fiducial_to_file(const Fiducial& f) {
  FiducialFile ff;
  ff.N = f.N();
  ff.basis = f.basis.tag == BasisTag::Standard ? "std" : "pp";
  ff.vector.assign(f.v.data(), f.v.data() + f.v.size());
  return ff;
}

Fiducial fiducial_from_file(const FiducialFile& ff) {
  RepBasis basis = ff.basis == "std" ? RepBasis::standard(ff.N)
                                     : RepBasis::phase_permutation(sqrt_or_throw(ff.N));
  Eigen::VectorXcd v(ff.N);
  for (int i = 0; i < ff.N; ++i) v[i] = ff.vector[i];
  return {basis, v};
}

std::string fiducial_file_to_json(const FiducialFile& ff) {
  nlohmann::json j;
  j["N"] = ff.N;
  j["basis"] = ff.basis;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& z : ff.vector)
    comps.push_back({format17(z.real()), format17(z.imag())});
  j["vector"] = std::move(comps);
  return j.dump(2) + "\n";
}

FiducialFile fiducial_file_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("fiducial JSON parse error: ") + e.what());
  }
  FiducialFile ff;
  try {
    ff.N = j.at("N").get<int>();
    ff.basis = j.at("basis").get<std::string>();
    for (const auto& pair : j.at("vector")) {
      if (!pair.is_array() || pair.size() != 2)
        throw std::runtime_error("vector entries must be [re, im] pairs");
      ff.vector.emplace_back(parse_double_strict(pair[0].get<std::string>()),
                             parse_double_strict(pair[1].get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("fiducial JSON field error: ") + e.what());
  }
  if (ff.basis != "std" && ff.basis != "pp")
    throw std::runtime_error("basis must be \"std\" or \"pp\"");
  if (ff.N < 1 || static_cast<std::size_t>(ff.N) != ff.vector.size())
    throw std::runtime_error("vector length does not match N");
  double norm2 = 0.0;
  for (const auto& z : ff.vector) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9)
    throw std::runtime_error("fiducial is not unit norm");
  return ff;
}

void save_fiducial_file(const std::string& path, const FiducialFile& ff) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << fiducial_file_to_json(ff);
  if (!out) throw std::runtime_error("write failed: " + path);
}

FiducialFile load_fiducial_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return fiducial_file_from_json(text);
}

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return {parse_double_strict(s), 0.0};
  s.pop_back();
  // split real and imaginary at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto imag_value = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double_strict(t);
  };
  if (split == std::string::npos) return {0.0, imag_value(s)};
  return {parse_double_strict(s.substr(0, split)), imag_value(s.substr(split))};
}

}  // namespace wh
