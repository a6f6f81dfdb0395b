#pragma once

#include <functional>
#include <vector>

#include "asymap/jet.hpp"

namespace asymap {

// Least squares fit: minimizes ||sum_j x_j cols[j] - rhs||_2 over x.
// Solved via normal equations with partial pivoting; intended for the
// 2-4 column designs used by the asymptotic fits.
std::vector<double> lstsq(const std::vector<std::vector<double>>& cols,
                          const std::vector<double>& rhs);
std::vector<Complex> lstsq(const std::vector<std::vector<double>>& cols,
                           const std::vector<Complex>& rhs);

// Neville extrapolation of samples (h_k, y_k) to h = 0.
Complex richardson_zero(const std::vector<double>& h, const std::vector<Complex>& y);

// Max absolute deviation of the fitted model sum_j x_j cols[j] from rhs.
double fit_residual(const std::vector<std::vector<double>>& cols,
                    const std::vector<Complex>& x, const std::vector<Complex>& rhs);

// Scalar root of f on [lo, hi] by bisection followed by Newton polish with
// derivative df; f(lo) and f(hi) must bracket.
double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& df, double lo, double hi);

}  // namespace asymap
