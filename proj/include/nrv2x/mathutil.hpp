#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nrv2x {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Zeroth-order Bessel function of the first kind, by power series.
// Converges to < 1e-12 absolute error for |x| < 12, which covers the
// Doppler regime of interest (x = 2*pi*f_d*T stays near 1 at vehicular
// speeds; x = 12 corresponds to ~590 km/h at 28 GHz with T = 0.125 ms).
inline double bessel_j0(double x) {
  x = std::fabs(x);
  if (x >= 12.0) throw std::domain_error("bessel_j0: argument outside series regime |x| < 12");
  const double q = x * x / 4.0;  // (x/2)^2
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-16) break;
  }
  return sum;
}

// Dense row-major matrix of doubles; small helper shared by the matching
// kernels and the scheduler weight tables.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  bool square() const { return rows_ == cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace nrv2x
