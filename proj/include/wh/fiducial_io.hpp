#pragma once

#include <complex>
#include <string>
#include <vector>

#include "wh/sicsearch.hpp"

namespace wh {

// On-disk fiducial: components as [re, im] decimal-string pairs with 17
// significant digits, which round-trip doubles exactly.
struct FiducialFile {
  int N = 0;
  std::string basis;  // "std" or "pp"
  std::vector<std::complex<double>> vector;
};

FiducialFile fiducial_to_file(const Fiducial& f);
Fiducial fiducial_from_file(const FiducialFile& ff);

std::string fiducial_file_to_json(const FiducialFile& ff);
// validates length against N and unit norm within 1e-9
FiducialFile fiducial_file_from_json(const std::string& text);

void save_fiducial_file(const std::string& path, const FiducialFile& ff);
FiducialFile load_fiducial_file(const std::string& path);

// accepts "0.3", "1i", "0+1i", "0.5-0.25i", "-i", "2.5e-3+1e-2i"
std::complex<double> parse_complex(const std::string& text);

}  // namespace wh
