#pragma once

#include <complex>
#include <vector>

namespace asymap {

using Complex = std::complex<double>;

// Truncated Taylor expansion of a smooth germ g(z, zbar) at the origin:
//
//   g(z, zbar) = sum_{0 <= r,s <= N} g_{r,s} z^r zbar^s
//
// stored as a dense (N+1) x (N+1) table.  A jet flagged real-valued is
// expected to satisfy the Hermitian symmetry g_{s,r} = conj(g_{r,s}); the
// flag is propagated through arithmetic and can be checked with
// is_hermitian().
class Jet2 {
 public:
  Jet2() : order_(0), real_(false), c_(1, Complex(0)) {}
  explicit Jet2(int order, bool real_valued = false);

  static Jet2 constant(Complex value, int order = 0);
  // c * z^r zbar^s, with order defaulting to max(r, s).
  static Jet2 monomial(int r, int s, Complex c, int order = -1);

  int order() const { return order_; }
  bool real_valued() const { return real_; }
  void set_real_valued(bool v) { real_ = v; }

  // Coefficient access; reads outside the table return 0.
  Complex at(int r, int s) const;
  void set(int r, int s, Complex v);
  void add(int r, int s, Complex v);

  bool is_zero() const;
  // Copy into a table of a different order (coefficients beyond are dropped).
  Jet2 resized(int order) const;

 private:
  int order_;
  bool real_;
  std::vector<Complex> c_;  // row-major, (order_+1)^2
};

// Coefficientwise convolution truncated to indices <= order_out.
Jet2 jet_mul(const Jet2& a, const Jet2& b, int order_out);
// Exact product (order_out = a.order() + b.order()).
Jet2 jet_mul(const Jet2& a, const Jet2& b);

Jet2 jet_add(const Jet2& a, const Jet2& b);
Jet2 jet_scale(const Jet2& a, Complex c);

// Holomorphic partial derivative: sum r g_{r,s} z^{r-1} zbar^s.
Jet2 jet_dz(const Jet2& g);
// Antiholomorphic partial derivative.
Jet2 jet_dzbar(const Jet2& g);
// conj(g): coefficients conj(g_{s,r}).
Jet2 jet_conj(const Jet2& g);
// exp(g) truncated at order_out; exact on the table since g - g(0) is
// nilpotent there.
Jet2 jet_exp(const Jet2& g, int order_out);

// Horner-style evaluation of the truncated sum at (z, conj z).
Complex jet_eval(const Jet2& g, Complex z);

// Hermitian coefficient symmetry g_{s,r} = conj(g_{r,s}) within tol.
bool is_hermitian(const Jet2& g, double tol = 1e-12);

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return jet_add(a, b); }
inline Jet2 operator*(const Jet2& a, const Jet2& b) { return jet_mul(a, b); }
inline Jet2 operator*(Complex c, const Jet2& a) { return jet_scale(a, c); }
inline Jet2 operator*(double c, const Jet2& a) { return jet_scale(a, Complex(c)); }

}  // namespace asymap
