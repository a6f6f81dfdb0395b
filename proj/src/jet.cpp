#include "asymap/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace asymap {

Jet2::Jet2(int order, bool real_valued) : order_(order), real_(real_valued) {
  if (order < 0) throw std::invalid_argument("Jet2: negative order");
  c_.assign(static_cast<size_t>(order + 1) * (order + 1), Complex(0));
}

Jet2 Jet2::constant(Complex value, int order) {
  Jet2 g(order, value.imag() == 0.0);
  g.set(0, 0, value);
  return g;
}

Jet2 Jet2::monomial(int r, int s, Complex c, int order) {
  if (r < 0 || s < 0) throw std::invalid_argument("Jet2::monomial: negative index");
  if (order < 0) order = std::max(r, s);
  Jet2 g(order);
  g.set(r, s, c);
  return g;
}

Complex Jet2::at(int r, int s) const {
  if (r < 0 || s < 0 || r > order_ || s > order_) return Complex(0);
  return c_[static_cast<size_t>(r) * (order_ + 1) + s];
}

void Jet2::set(int r, int s, Complex v) {
  if (r < 0 || s < 0 || r > order_ || s > order_)
    throw std::out_of_range("Jet2::set: index outside table");
  c_[static_cast<size_t>(r) * (order_ + 1) + s] = v;
}

void Jet2::add(int r, int s, Complex v) { set(r, s, at(r, s) + v); }

bool Jet2::is_zero() const {
  for (const auto& v : c_)
    if (v != Complex(0)) return false;
  return true;
}

Jet2 Jet2::resized(int order) const {
  Jet2 out(order, real_);
  const int n = std::min(order, order_);
  for (int r = 0; r <= n; ++r)
    for (int s = 0; s <= n; ++s) out.set(r, s, at(r, s));
  return out;
}

Jet2 jet_mul(const Jet2& a, const Jet2& b, int order_out) {
  Jet2 out(order_out, a.real_valued() && b.real_valued());
  for (int ra = 0; ra <= std::min(a.order(), order_out); ++ra)
    for (int sa = 0; sa <= std::min(a.order(), order_out); ++sa) {
      const Complex ca = a.at(ra, sa);
      if (ca == Complex(0)) continue;
      for (int rb = 0; rb + ra <= order_out && rb <= b.order(); ++rb)
        for (int sb = 0; sb + sa <= order_out && sb <= b.order(); ++sb) {
          const Complex cb = b.at(rb, sb);
          if (cb == Complex(0)) continue;
          out.add(ra + rb, sa + sb, ca * cb);
        }
    }
  return out;
}

Jet2 jet_mul(const Jet2& a, const Jet2& b) {
  return jet_mul(a, b, a.order() + b.order());
}

Jet2 jet_add(const Jet2& a, const Jet2& b) {
  Jet2 out(std::max(a.order(), b.order()), a.real_valued() && b.real_valued());
  for (int r = 0; r <= out.order(); ++r)
    for (int s = 0; s <= out.order(); ++s) out.set(r, s, a.at(r, s) + b.at(r, s));
  return out;
}

Jet2 jet_scale(const Jet2& a, Complex c) {
  Jet2 out(a.order(), a.real_valued() && c.imag() == 0.0);
  for (int r = 0; r <= a.order(); ++r)
    for (int s = 0; s <= a.order(); ++s) out.set(r, s, c * a.at(r, s));
  return out;
}

Jet2 jet_dz(const Jet2& g) {
  Jet2 out(g.order());
  for (int r = 1; r <= g.order(); ++r)
    for (int s = 0; s <= g.order(); ++s)
      out.set(r - 1, s, static_cast<double>(r) * g.at(r, s));
  return out;
}

Jet2 jet_dzbar(const Jet2& g) {
  Jet2 out(g.order());
  for (int r = 0; r <= g.order(); ++r)
    for (int s = 1; s <= g.order(); ++s)
      out.set(r, s - 1, static_cast<double>(s) * g.at(r, s));
  return out;
}

Jet2 jet_conj(const Jet2& g) {
  Jet2 out(g.order(), g.real_valued());
  for (int r = 0; r <= g.order(); ++r)
    for (int s = 0; s <= g.order(); ++s) out.set(r, s, std::conj(g.at(s, r)));
  return out;
}

Jet2 jet_exp(const Jet2& g, int order_out) {
  const Complex g0 = g.at(0, 0);
  Jet2 u = g.resized(order_out);
  u.set(0, 0, Complex(0));
  Jet2 sum = Jet2::constant(Complex(1), order_out);
  Jet2 power = Jet2::constant(Complex(1), order_out);
  double kfact = 1.0;
  // u has no constant term, so u^k vanishes on the table for k > 2*order_out.
  for (int k = 1; k <= 2 * order_out; ++k) {
    power = jet_mul(power, u, order_out);
    if (power.is_zero()) break;
    kfact *= k;
    sum = jet_add(sum, jet_scale(power, Complex(1.0 / kfact)));
  }
  Jet2 out = jet_scale(sum, std::exp(g0));
  out.set_real_valued(g.real_valued() && g0.imag() == 0.0);
  return out;
}

Complex jet_eval(const Jet2& g, Complex z) {
  const Complex zb = std::conj(z);
  Complex acc(0);
  for (int r = g.order(); r >= 0; --r) {
    Complex row(0);
    for (int s = g.order(); s >= 0; --s) row = row * zb + g.at(r, s);
    acc = acc * z + row;
  }
  return acc;
}

bool is_hermitian(const Jet2& g, double tol) {
  for (int r = 0; r <= g.order(); ++r)
    for (int s = r; s <= g.order(); ++s)
      if (std::abs(g.at(s, r) - std::conj(g.at(r, s))) > tol) return false;
  return true;
}

}  // namespace asymap
