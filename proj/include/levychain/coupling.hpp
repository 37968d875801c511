#ifndef LEVYCHAIN_COUPLING_HPP
#define LEVYCHAIN_COUPLING_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "levychain/common.hpp"

namespace levychain {

// Symmetric spin-exchange matrix J_ij in rad/s, zero diagonal.
struct CouplingMatrix {
  int size = 0;
  Eigen::MatrixXd entries;
  double nominal_J = 0.0;                 // rad/s
  std::optional<double> nominal_alpha;    // set when built from a power law

  void validate() const {
    if (size < 2 || entries.rows() != size || entries.cols() != size)
      throw std::invalid_argument("CouplingMatrix: bad dimensions");
    for (int i = 0; i < size; ++i) {
      if (entries(i, i) != 0.0)
        throw std::invalid_argument("CouplingMatrix: nonzero diagonal");
      for (int j = 0; j < size; ++j) {
        if (!std::isfinite(entries(i, j)))
          throw std::invalid_argument("CouplingMatrix: non-finite entry");
        if (std::abs(entries(i, j) - entries(j, i)) >
            1e-12 * std::max(1.0, std::abs(entries(i, j))))
          throw std::invalid_argument("CouplingMatrix: not symmetric");
      }
    }
  }
};

inline CouplingMatrix build_power_law(int L, double J, double alpha) {
  if (L < 2) throw std::invalid_argument("build_power_law: L must be >= 2");
  if (!(J > 0.0)) throw std::invalid_argument("build_power_law: J must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("build_power_law: alpha must be > 0");
  CouplingMatrix m;
  m.size = L;
  m.nominal_J = J;
  m.nominal_alpha = alpha;
  m.entries = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (i != j) m.entries(i, j) = J / std::pow(std::abs(i - j), alpha);
  return m;
}

struct PowerLawFit {
  double J_fit = 0.0;
  double alpha_fit = 0.0;
  double rms_log_residual = 0.0;
};

// Unweighted least squares of log J_ij vs log|i-j| over all i<j pairs.
inline PowerLawFit fit_power_law(const CouplingMatrix& m) {
  const int L = m.size;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      if (!(m.entries(i, j) > 0.0))
        throw std::invalid_argument("fit_power_law: non-positive off-diagonal entry");
      const double x = std::log(static_cast<double>(j - i));
      const double y = std::log(m.entries(i, j));
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++n;
    }
  // y = b - a*x
  const double det = n * sxx - sx * sx;
  const double a = -(n * sxy - sx * sy) / det;
  const double b = (sy + a * sx) / n;
  double ss = 0;
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      const double r = std::log(m.entries(i, j)) - b + a * std::log(static_cast<double>(j - i));
      ss += r * r;
    }
  return {std::exp(b), a, std::sqrt(ss / n)};
}

// CSV format: header "# L=<n>", then L rows of L comma-separated values (rad/s).
inline void save_coupling_csv(const CouplingMatrix& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << "# L=" << m.size << "\n";
  char buf[32];
  for (int i = 0; i < m.size; ++i) {
    for (int j = 0; j < m.size; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.entries(i, j));
      os << buf << (j + 1 < m.size ? "," : "");
    }
    os << "\n";
  }
  if (!os) throw io_error("write failed: " + path);
}

inline CouplingMatrix load_coupling_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("# L=", 0) != 0)
    throw io_error(path + ": missing '# L=<n>' header");
  const int L = std::stoi(line.substr(4));
  CouplingMatrix m;
  m.size = L;
  m.entries = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    if (!std::getline(is, line)) throw io_error(path + ": truncated matrix");
    std::stringstream ss(line);
    std::string cell;
    for (int j = 0; j < L; ++j) {
      if (!std::getline(ss, cell, ',')) throw io_error(path + ": short row");
      m.entries(i, j) = std::stod(cell);
    }
  }
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (std::abs(m.entries(i, j) - m.entries(j, i)) > 1e-9)
        throw io_error(path + ": matrix not symmetric within 1e-9");
  return m;
}

}  // namespace levychain

#endif
