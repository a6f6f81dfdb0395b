#include "asymap/residue.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "asymap/quadrature.hpp"

namespace asymap {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double bump_deriv(double x) {
  if (x <= 0.0) return 0.0;
  return std::exp(-1.0 / x) / (x * x);
}

// Multiply by z^j: shift the r index.
Jet2 jet_shift_z(const Jet2& g, int j) {
  if (j == 0) return g;
  Jet2 out(g.order() + j);
  for (int r = 0; r <= g.order(); ++r)
    for (int s = 0; s <= g.order(); ++s) out.set(r + j, s, g.at(r, s));
  return out;
}

// d_z with the result divided by j, arranged so the coefficient at r == j
// transfers exactly: out_{r-1,s} = (r/j) g_{r,s}.
Jet2 jet_dz_over(const Jet2& g, int j) {
  Jet2 out(g.order());
  for (int r = 1; r <= g.order(); ++r) {
    const double f = static_cast<double>(r) / static_cast<double>(j);
    for (int s = 0; s <= g.order(); ++s) out.set(r - 1, s, f * g.at(r, s));
  }
  return out;
}

}  // namespace

double window(double t) {
  if (t <= 0.25) return 1.0;
  if (t >= 1.0) return 0.0;
  const double u = (t - 0.25) / 0.75;
  const double a = bump(1.0 - u);
  const double b = bump(u);
  return a / (a + b);
}

double window_deriv(double t) {
  if (t <= 0.25 || t >= 1.0) return 0.0;
  const double u = (t - 0.25) / 0.75;
  const double a = bump(1.0 - u), b = bump(u);
  const double da = bump_deriv(1.0 - u), db = bump_deriv(u);
  const double num = -da * b - a * db;
  return num / ((a + b) * (a + b)) / 0.75;
}

Form1D::Form1D(int m_, Jet2 P_, double rho_) : m(m_), P(std::move(P_)), rho(rho_) {
  if (m < 0) throw std::invalid_argument("Form1D: pole order must be >= 0");
  if (rho <= 0.0) throw std::invalid_argument("Form1D: rho must be positive");
}

Complex Form1D::numerator(Complex z) const {
  return jet_eval(P, z) * window(std::norm(z) / (rho * rho));
}

HoloForm::HoloForm(Series1 b_) : b(std::move(b_)) {
  if (b.normalized())
    throw std::invalid_argument("HoloForm: b must be a plain polynomial");
}

FunctionWithPole::FunctionWithPole(std::vector<PoleTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.pole < 0) throw std::invalid_argument("FunctionWithPole: negative pole order");
}

FunctionWithPole FunctionWithPole::single(Jet2 sigma, int pole) {
  return FunctionWithPole({PoleTerm{std::move(sigma), pole}});
}

int FunctionWithPole::max_pole() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.pole);
  return m;
}

Complex FunctionWithPole::eval(Complex z) const {
  Complex acc(0);
  for (const auto& t : terms_) acc += jet_eval(t.sigma, z) / std::pow(z, t.pole);
  return acc;
}

FunctionWithPole FunctionWithPole::partial_z() const {
  std::vector<PoleTerm> out;
  for (const auto& t : terms_) {
    Jet2 d = jet_dz(t.sigma);
    if (!d.is_zero()) out.push_back({std::move(d), t.pole});
    if (t.pole > 0)
      out.push_back({jet_scale(t.sigma, Complex(-t.pole)), t.pole + 1});
  }
  return FunctionWithPole(std::move(out));
}

Form1D FunctionWithPole::to_form(double rho) const {
  const int m = max_pole();
  Jet2 num(0);
  for (const auto& t : terms_) num = jet_add(num, jet_shift_z(t.sigma, m - t.pole));
  return Form1D(m, std::move(num), rho);
}

ResidueValue res_dolbeault(const Form1D& alpha) {
  if (alpha.m == 0) return {Complex(0), true};
  Jet2 d = alpha.P;
  double fact = 1.0;
  for (int j = 1; j < alpha.m; ++j) {
    d = jet_dz(d);
    fact *= j;
  }
  const Complex via_derivative = d.at(0, 0) / fact;
  const Complex direct = alpha.P.at(alpha.m - 1, 0);
  if (std::abs(via_derivative - direct) > 1e-12 * std::max(1.0, std::abs(direct)))
    throw std::logic_error("res_dolbeault: derivative route disagrees with coefficient read");
  // The coefficient read is the exact value; the derivative route above is
  // the uniformity cross-check (it can differ by rounding in the factorials).
  return {direct, false};
}

Complex res_classical(const Form1D& alpha, double r, int K) {
  if (alpha.m != 1)
    throw std::invalid_argument("res_classical: defined only for simple poles (m = 1)");
  if (r <= 0.0) r = alpha.rho / 4.0;
  auto f = [&](Complex z) { return alpha.numerator(z) / z; };
  const Complex integral = circle_integrate(f, r, K, CircleMode::Dz);
  return integral / (Complex(0, 2) * std::numbers::pi);
}

PoleReduction pole_reduce(const Form1D& alpha) {
  Form1D cur = alpha;
  std::vector<PoleTerm> potential;
  while (cur.m >= 2) {
    const int j = cur.m - 1;
    // g dz/z^{j+1} = (d_z g) dz/(j z^j) - d_z(g/(j z^j)) dz, so the potential
    // accumulates -g/(j z^j) to keep alpha - reduced = d_z(gamma) dz.
    potential.push_back({jet_scale(cur.P, Complex(-1.0 / j)), j});
    cur = Form1D(j, jet_dz_over(cur.P, j), cur.rho);
  }
  if (!potential.empty() && cur.P.is_zero()) cur = Form1D(0, cur.P, cur.rho);
  return {std::move(cur), FunctionWithPole(std::move(potential))};
}

Complex res_log_pairing(const FunctionWithPole& gamma, const CutoffSpec& lam) {
  const Jet2& etaz = lam.eta_dz_jet();
  const bool flat = etaz.is_zero();
  std::vector<PoleTerm> terms;
  for (const auto& t : gamma.terms()) {
    terms.push_back({jet_scale(t.sigma, Complex(0.5)), t.pole + 1});
    if (!flat) terms.push_back({jet_mul(t.sigma, etaz), t.pole});
  }
  if (terms.empty()) return Complex(0);
  return res_dolbeault(FunctionWithPole(std::move(terms)).to_form(1.0)).value;
}

}  // namespace asymap
