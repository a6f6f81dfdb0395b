#include "asymap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asymap {

namespace {

// Solve the square system M x = b by Gaussian elimination with partial
// pivoting.  M is tiny here (<= 4x4).
template <class Scalar>
std::vector<Scalar> solve_square(std::vector<std::vector<double>> M,
                                 std::vector<Scalar> b) {
  const size_t n = M.size();
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::abs(M[i][k]) > std::abs(M[piv][k])) piv = i;
    if (M[piv][k] == 0.0) throw std::invalid_argument("lstsq: singular normal equations");
    std::swap(M[piv], M[k]);
    std::swap(b[piv], b[k]);
    for (size_t i = k + 1; i < n; ++i) {
      const double f = M[i][k] / M[k][k];
      if (f == 0.0) continue;
      for (size_t j = k; j < n; ++j) M[i][j] -= f * M[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Scalar> x(n);
  for (size_t k = n; k-- > 0;) {
    Scalar acc = b[k];
    for (size_t j = k + 1; j < n; ++j) acc -= M[k][j] * x[j];
    x[k] = acc / M[k][k];
  }
  return x;
}

template <class Scalar>
std::vector<Scalar> lstsq_impl(const std::vector<std::vector<double>>& cols,
                               const std::vector<Scalar>& rhs) {
  const size_t p = cols.size();
  if (p == 0) throw std::invalid_argument("lstsq: no columns");
  const size_t n = rhs.size();
  for (const auto& c : cols)
    if (c.size() != n) throw std::invalid_argument("lstsq: column size mismatch");
  std::vector<std::vector<double>> M(p, std::vector<double>(p, 0.0));
  std::vector<Scalar> b(p, Scalar(0));
  for (size_t i = 0; i < p; ++i) {
    for (size_t j = 0; j < p; ++j)
      for (size_t k = 0; k < n; ++k) M[i][j] += cols[i][k] * cols[j][k];
    for (size_t k = 0; k < n; ++k) b[i] += cols[i][k] * rhs[k];
  }
  return solve_square(std::move(M), std::move(b));
}

}  // namespace

std::vector<double> lstsq(const std::vector<std::vector<double>>& cols,
                          const std::vector<double>& rhs) {
  return lstsq_impl(cols, rhs);
}

std::vector<Complex> lstsq(const std::vector<std::vector<double>>& cols,
                           const std::vector<Complex>& rhs) {
  return lstsq_impl(cols, rhs);
}

Complex richardson_zero(const std::vector<double>& h, const std::vector<Complex>& y) {
  if (h.size() != y.size() || h.empty())
    throw std::invalid_argument("richardson_zero: bad sample set");
  std::vector<Complex> t = y;
  const size_t n = h.size();
  for (size_t k = 1; k < n; ++k)
    for (size_t i = 0; i + k < n; ++i)
      t[i] = t[i + 1] + (t[i + 1] - t[i]) * (h[i + k] / (h[i] - h[i + k]));
  return t[0];
}

double fit_residual(const std::vector<std::vector<double>>& cols,
                    const std::vector<Complex>& x, const std::vector<Complex>& rhs) {
  double worst = 0.0;
  for (size_t k = 0; k < rhs.size(); ++k) {
    Complex model(0);
    for (size_t j = 0; j < cols.size(); ++j) model += x[j] * cols[j][k];
    worst = std::max(worst, std::abs(rhs[k] - model));
  }
  return worst;
}

double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& df, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("find_root: endpoints do not bracket");
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (fhi > 0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double d = df(x);
    if (d == 0.0) break;
    const double step = f(x) / d;
    x -= step;
    if (x < lo || x > hi) {
      x = std::clamp(x, lo, hi);
      break;
    }
    if (std::abs(step) < 1e-17 * std::abs(x)) break;
  }
  return x;
}

}  // namespace asymap
