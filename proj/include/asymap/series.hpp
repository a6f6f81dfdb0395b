#pragma once

#include <vector>

#include "asymap/jet.hpp"

namespace asymap {

// Truncated univariate power series in one of two shapes:
//
//   plain       b_0 + b_1 w + ... + b_N w^N
//   normalized  w (b_0 + b_1 w + ... + b_N w^N),  b_0 != 0
//
// The normalized shape carries maps fixing the origin with nonzero
// derivative (univalent germs); it is the natural carrier for Riemann map
// coefficient sequences.
class Series1 {
 public:
  Series1() : normalized_(false), coeffs_(1, Complex(0)) {}

  static Series1 plain(std::vector<Complex> coeffs);
  static Series1 normalized(std::vector<Complex> coeffs);  // requires b_0 != 0
  // The identity map w, as a normalized series of the given order.
  static Series1 identity(int order = 0);

  bool normalized() const { return normalized_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Complex(0);
  }

  Complex eval(Complex w) const;
  Series1 truncated(int order) const;
  // Plain polynomial coefficients up to the given degree (shape-independent).
  std::vector<Complex> plain_coeffs(int degree) const;

 private:
  Series1(std::vector<Complex> coeffs, bool normalized);
  bool normalized_;
  std::vector<Complex> coeffs_;
};

// Truncated composition f(g(w)) to output order N.  g must fix the origin
// (zero constant term); the result is normalized iff both inputs are.
Series1 compose(const Series1& f, const Series1& g, int N);

// Compositional inverse of a normalized series: returns g with
// f(g(w)) = w + O(w^{N+2}).  Newton doubling, with a direct recurrence for
// small orders.
Series1 revert(const Series1& f, int N);

namespace detail {
Series1 revert_recurrence(const Series1& f, int N);
Series1 revert_newton(const Series1& f, int N);
}  // namespace detail

}  // namespace asymap
