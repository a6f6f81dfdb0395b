#include "asymap/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace asymap {

namespace {

using Poly = std::vector<Complex>;  // plain coefficients, index = degree

Poly trunc_mul(const Poly& a, const Poly& b, int degree) {
  Poly out(static_cast<size_t>(degree) + 1, Complex(0));
  for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(degree); ++i) {
    if (a[i] == Complex(0)) continue;
    const size_t jmax = std::min(b.size(), static_cast<size_t>(degree) + 1 - i);
    for (size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// f(g) mod w^{degree+1} by Horner; assumes g[0] == 0.
Poly compose_plain(const Poly& f, const Poly& g, int degree) {
  Poly out(static_cast<size_t>(degree) + 1, Complex(0));
  const int kmax = std::min<int>(static_cast<int>(f.size()) - 1, degree);
  if (kmax < 0) return out;
  out[0] = f[kmax];
  for (int k = kmax - 1; k >= 0; --k) {
    out = trunc_mul(out, g, degree);
    out[0] += f[k];
  }
  return out;
}

Poly derivative(const Poly& f) {
  if (f.size() <= 1) return Poly(1, Complex(0));
  Poly out(f.size() - 1);
  for (size_t k = 1; k < f.size(); ++k) out[k - 1] = static_cast<double>(k) * f[k];
  return out;
}

// num/den mod w^{degree+1}; requires den[0] != 0.
Poly divide(const Poly& num, const Poly& den, int degree) {
  Poly out(static_cast<size_t>(degree) + 1, Complex(0));
  for (int j = 0; j <= degree; ++j) {
    Complex acc = j < static_cast<int>(num.size()) ? num[j] : Complex(0);
    for (int i = 0; i < j; ++i) {
      const int d = j - i;
      if (d < static_cast<int>(den.size())) acc -= out[i] * den[d];
    }
    out[j] = acc / den[0];
  }
  return out;
}

}  // namespace

Series1::Series1(std::vector<Complex> coeffs, bool normalized)
    : normalized_(normalized), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0));
  if (normalized_ && coeffs_[0] == Complex(0))
    throw std::invalid_argument("Series1: normalized shape requires b_0 != 0");
}

Series1 Series1::plain(std::vector<Complex> coeffs) {
  return Series1(std::move(coeffs), false);
}

Series1 Series1::normalized(std::vector<Complex> coeffs) {
  return Series1(std::move(coeffs), true);
}

Series1 Series1::identity(int order) {
  std::vector<Complex> c(static_cast<size_t>(order) + 1, Complex(0));
  c[0] = Complex(1);
  return Series1(std::move(c), true);
}

Complex Series1::eval(Complex w) const {
  Complex acc(0);
  for (int k = order(); k >= 0; --k) acc = acc * w + coeffs_[k];
  return normalized_ ? w * acc : acc;
}

Series1 Series1::truncated(int order) const {
  std::vector<Complex> c(static_cast<size_t>(order) + 1, Complex(0));
  for (int k = 0; k <= order; ++k) c[k] = coeff(k);
  return Series1(std::move(c), normalized_);
}

std::vector<Complex> Series1::plain_coeffs(int degree) const {
  Poly p(static_cast<size_t>(degree) + 1, Complex(0));
  const int shift = normalized_ ? 1 : 0;
  for (int k = 0; k <= order(); ++k)
    if (k + shift <= degree) p[k + shift] = coeffs_[k];
  return p;
}

Series1 compose(const Series1& f, const Series1& g, int N) {
  if (N < 0) throw std::invalid_argument("compose: negative order");
  if (!g.normalized() && g.coeff(0) != Complex(0))
    throw std::invalid_argument("compose: inner series must have zero constant term");
  const bool norm_out = f.normalized() && g.normalized();
  const int degree = norm_out ? N + 1 : N;
  const Poly fp = f.plain_coeffs(degree);
  const Poly gp = g.plain_coeffs(degree);
  Poly res = compose_plain(fp, gp, degree);
  if (norm_out)
    return Series1::normalized(std::vector<Complex>(res.begin() + 1, res.end()));
  return Series1::plain(std::move(res));
}

namespace detail {

Series1 revert_recurrence(const Series1& f, int N) {
  const Complex b0 = f.coeff(0);
  std::vector<Complex> a(static_cast<size_t>(N) + 1, Complex(0));
  a[0] = Complex(1) / b0;
  for (int n = 1; n <= N; ++n) {
    // Coefficient of w^{n+1} in sum_k b_k g^{k+1} must vanish; only the k=0
    // term involves a_n, everything else uses a_0..a_{n-1}.
    Poly gp(static_cast<size_t>(n) + 2, Complex(0));
    for (int j = 0; j < n; ++j) gp[j + 1] = a[j];
    Complex c(0);
    Poly gpow = gp;  // g^1
    for (int k = 1; k <= std::min(n, f.order()); ++k) {
      gpow = trunc_mul(gpow, gp, n + 1);  // g^{k+1}
      c += f.coeff(k) * gpow[n + 1];
    }
    a[n] = -c / b0;
  }
  return Series1::normalized(std::move(a));
}

Series1 revert_newton(const Series1& f, int N) {
  const int target = N + 2;  // plain coefficients 0..N+1
  Poly g{Complex(0), Complex(1) / f.coeff(0)};
  int prec = 2;
  while (prec < target) {
    prec = std::min(2 * prec, target);
    const int d = prec - 1;
    const Poly fp = f.plain_coeffs(d);
    Poly fg = compose_plain(fp, g, d);
    fg[1] -= Complex(1);  // f(g) - w
    const Poly dfg = compose_plain(derivative(fp), g, d);
    const Poly q = divide(fg, dfg, d);
    g.resize(static_cast<size_t>(d) + 1, Complex(0));
    for (int k = 0; k <= d; ++k) g[k] -= q[k];
  }
  return Series1::normalized(std::vector<Complex>(g.begin() + 1, g.end()));
}

}  // namespace detail

Series1 revert(const Series1& f, int N) {
  if (!f.normalized())
    throw std::invalid_argument("revert: input must be univalent-normalized");
  if (N < 0) throw std::invalid_argument("revert: negative order");
  return N <= 8 ? detail::revert_recurrence(f, N) : detail::revert_newton(f, N);
}

}  // namespace asymap
