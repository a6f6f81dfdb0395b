#include <doctest.h>

#include <cmath>
#include <functional>

#include "asymap/errors.hpp"
#include "asymap/pairing.hpp"

using namespace asymap;

namespace {

CutoffSpec tilted(double slope) {
  Jet2 eta(1, true);
  eta.set(1, 0, Complex(0.5 * slope));
  eta.set(0, 1, Complex(0.5 * slope));
  return CutoffSpec(eta);
}

Form1D log_form() { return Form1D(1, Jet2::constant(1), 1.0); }

HoloForm unit_beta() { return HoloForm(Series1::plain({Complex(1)})); }

Form1D one_plus_z_over_z2() {
  Jet2 P(1);
  P.set(0, 0, 1);
  P.set(1, 0, 1);
  return Form1D(2, P, 1.0);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fb, double fm, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, fm, flm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, 0.5 * tol, depth - 1);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol) {
  return adaptive_simpson(f, a, b, f(a), f(b), f(0.5 * (a + b)), tol, 40);
}

// Closed-form radial oracle for alpha = chi dz/z, beta = dz/z, lambda = |z|:
// value(eps) = -2 * integral_eps^1 chi(r^2)/r dr.
double radial_log_oracle(double eps) {
  const double tail =
      integrate_1d([](double r) { return window(r * r) / r; }, 0.5, 1.0, 1e-13);
  return -2.0 * (std::log(0.5 / eps) + tail);
}

std::vector<double> short_grid() { return {0.02, 0.01, 0.005, 0.0025}; }

}  // namespace

TEST_CASE("regularized_pairing against the radial closed form") {
  const double eps = 1e-3;
  const Complex value =
      regularized_pairing(log_form(), unit_beta(), CutoffSpec::radial(), eps);
  CHECK(std::abs(value - radial_log_oracle(eps)) < 1e-8);
}

TEST_CASE("regularized_pairing kills the zbar mode") {
  const Form1D alpha(1, Jet2::monomial(0, 1, 1), 1.0);
  const Complex value =
      regularized_pairing(alpha, unit_beta(), CutoffSpec::radial(), 1e-3);
  CHECK(std::abs(value) < 1e-6);
}

TEST_CASE("annulus difference between two eps values is the exact log") {
  const double e1 = 2e-3, e2 = 1e-3;
  const Complex v1 = regularized_pairing(log_form(), unit_beta(), CutoffSpec::radial(), e1);
  const Complex v2 = regularized_pairing(log_form(), unit_beta(), CutoffSpec::radial(), e2);
  CHECK(std::abs((v2 - v1) - 2.0 * std::log(e2 / e1)) < 1e-8);
}

TEST_CASE("divergence_fit extracts I0 = 2 for the log form") {
  const PairingFit fit =
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), short_grid());
  CHECK(std::abs(fit.I0 - Complex(2)) / 2.0 < 1e-5);
  CHECK(std::abs(fit.I0_predicted - Complex(2)) < 1e-14);
  // For the radial cutoff the asymptotics are exactly affine; the intercept
  // has a closed form.
  const double tail =
      integrate_1d([](double r) { return window(r * r) / r; }, 0.5, 1.0, 1e-13);
  const double I1_expected = 2.0 * std::log(2.0) - 2.0 * tail;
  CHECK(std::abs(fit.I1 - I1_expected) < 1e-6);
  CHECK(fit.fit_residual < 1e-7);
}

TEST_CASE("divergence_fit on the second-order pole") {
  const PairingFit fit =
      divergence_fit(one_plus_z_over_z2(), unit_beta(), CutoffSpec::radial(), short_grid());
  CHECK(std::abs(fit.I0 - Complex(2)) / 2.0 < 1e-4);
}

TEST_CASE("divergence_fit vanishes for the zbar numerator") {
  const Form1D alpha(1, Jet2::monomial(0, 1, 1), 1.0);
  const PairingFit fit =
      divergence_fit(alpha, unit_beta(), CutoffSpec::radial(), short_grid());
  CHECK(std::abs(fit.I0) < 1e-5);
  CHECK(std::abs(fit.I0_predicted) == 0.0);
}

TEST_CASE("divergence_fit on exact forms has no log term") {
  Jet2 sigma(1);
  sigma.set(0, 0, 1);
  sigma.set(0, 1, 1);  // 1 + zbar
  const FunctionWithPole gamma = FunctionWithPole::single(sigma, 1);
  const Form1D alpha = gamma.partial_z().to_form(1.0);
  const PairingFit fit =
      divergence_fit(alpha, unit_beta(), CutoffSpec::radial(), short_grid());
  CHECK(std::abs(fit.I0) < 1e-5);
  CHECK(std::abs(fit.I0_predicted) < 1e-14);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), {0.02, 0.01}),
      FitIllConditioned);
  CHECK_THROWS_AS(
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), {0.02, 0.019, 0.018}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), {0.02, 0.01, 0.001}),
      std::invalid_argument);
}

TEST_CASE("variation with constant phi matches the closed form") {
  const Jet2 phi = Jet2::constant(Complex(0.25));
  const VariationResult v =
      variation(log_form(), unit_beta(), CutoffSpec::radial(), phi, short_grid());
  CHECK(std::abs(v.predicted - Complex(-0.5)) < 1e-14);
  CHECK(std::abs(v.measured - Complex(-0.5)) < 1e-4);
  CHECK(std::abs(v.base.I0 - v.shifted.I0) < 2e-5);
}

TEST_CASE("variation with phi = Re z on the simple pole is flat") {
  Jet2 phi(1, true);
  phi.set(1, 0, Complex(0.5));
  phi.set(0, 1, Complex(0.5));
  const VariationResult v =
      variation(log_form(), unit_beta(), CutoffSpec::radial(), phi, short_grid());
  CHECK(std::abs(v.predicted) == 0.0);
  // The intercept difference carries an eps^2 remainder the fitted model
  // does not represent; it bounds the measurement at the 1e-3 scale on this
  // grid rather than at quadrature accuracy.
  CHECK(std::abs(v.measured) < 2e-3);
}

TEST_CASE("base-point independence of the variation") {
  const Jet2 phi = Jet2::constant(Complex(0.2));
  const VariationResult from_flat =
      variation(log_form(), unit_beta(), CutoffSpec::radial(), phi, short_grid());
  const VariationResult from_tilted =
      variation(log_form(), unit_beta(), tilted(0.05), phi, short_grid());
  CHECK(std::abs(from_flat.measured - from_tilted.measured) < 2e-5);
}

TEST_CASE("fit residual shrinks when the largest eps is halved") {
  const Form1D alpha = one_plus_z_over_z2();
  const CutoffSpec lam = tilted(0.3);
  PairingOptions opts;
  opts.fit_remainder = false;  // measure the raw affine-model residual
  const PairingFit coarse =
      divergence_fit(alpha, unit_beta(), lam, {0.02, 0.01, 0.005, 0.0025}, opts);
  const PairingFit fine =
      divergence_fit(alpha, unit_beta(), lam, {0.01, 0.005, 0.0025, 0.00125}, opts);
  CHECK(fine.fit_residual < coarse.fit_residual);
}

TEST_CASE("boundary_pairing limits") {
  const HoloForm beta = unit_beta();

  // Smooth gamma = 1: the circle integral is exactly 1 at every eps.
  const FunctionWithPole one = FunctionWithPole::single(Jet2::constant(1), 0);
  for (double eps : {2e-3, 1e-3}) {
    CHECK(std::abs(boundary_pairing(one, beta, CutoffSpec::radial(), eps) - Complex(1)) <
          1e-10);
  }
  CHECK(std::abs(2.0 * res_log_pairing(one, CutoffSpec::radial()) - Complex(1)) < 1e-14);

  // gamma = 1/z: sigma_{1,0} = 0, so the limit (and the value) is 0.
  const FunctionWithPole inv = FunctionWithPole::single(Jet2::constant(1), 1);
  CHECK(std::abs(boundary_pairing(inv, beta, CutoffSpec::radial(), 1e-3)) < 1e-10);
  CHECK(std::abs(res_log_pairing(inv, CutoffSpec::radial())) == 0.0);

  // Smooth gamma vanishing at 0.
  const FunctionWithPole z_jet = FunctionWithPole::single(Jet2::monomial(1, 0, 1), 0);
  const Complex v1 = boundary_pairing(z_jet, beta, CutoffSpec::radial(), 2e-3);
  const Complex v2 = boundary_pairing(z_jet, beta, CutoffSpec::radial(), 1e-3);
  CHECK(std::abs(2.0 * v2 - v1) < 1e-6);

  // Non-radial cutoff picks up the d_z eta contribution: limit 0.1.
  const CutoffSpec lam = tilted(0.1);
  const Complex predicted = 2.0 * res_log_pairing(inv, lam);
  CHECK(std::abs(predicted - Complex(0.1)) < 1e-14);
  const Complex w1 = boundary_pairing(inv, beta, lam, 2e-3);
  const Complex w2 = boundary_pairing(inv, beta, lam, 1e-3);
  CHECK(std::abs((2.0 * w2 - w1) - predicted) < 1e-6);
}

TEST_CASE("nontrivial beta residues enter through conjugation") {
  // b(0) = 2 - i: predictions scale by conj(b(0)).
  const HoloForm beta(Series1::plain({Complex(2.0, -1.0), Complex(3.0, 0.0)}));
  const Complex b0_conj(2.0, 1.0);

  const PairingFit fit =
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), short_grid());
  const PairingFit scaled =
      divergence_fit(log_form(), beta, CutoffSpec::radial(), short_grid());
  CHECK(std::abs(scaled.I0_predicted - 2.0 * b0_conj) < 1e-14);
  CHECK(std::abs(scaled.I0 - 2.0 * b0_conj) < 2e-4);
  CHECK(std::abs(fit.I0 - Complex(2)) < 1e-4);

  const FunctionWithPole one = FunctionWithPole::single(Jet2::constant(1), 0);
  const Complex predicted = 2.0 * res_log_pairing(one, CutoffSpec::radial()) * b0_conj;
  const Complex v1 = boundary_pairing(one, beta, CutoffSpec::radial(), 2e-3);
  const Complex v2 = boundary_pairing(one, beta, CutoffSpec::radial(), 1e-3);
  CHECK(std::abs((2.0 * v2 - v1) - predicted) < 1e-5);
}

TEST_CASE("grid sweeps are deterministic across thread counts") {
  PairingOptions seq;
  PairingOptions par;
  par.threads = 2;
  const PairingFit a =
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), short_grid(), seq);
  const PairingFit b =
      divergence_fit(log_form(), unit_beta(), CutoffSpec::radial(), short_grid(), par);
  for (size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
  CHECK(a.I0 == b.I0);
  CHECK(a.I1 == b.I1);
}

TEST_CASE("eps beyond the window core is rejected") {
  // rho = 1: the level set must stay inside |z| <= 1/2.
  CHECK_THROWS_AS(
      regularized_pairing(log_form(), unit_beta(), CutoffSpec::radial(), 0.6),
      LevelSetNotBracketed);
  CHECK(std::abs(regularized_pairing(log_form(), unit_beta(), CutoffSpec::radial(), 0.3)) >
        0.0);
}

TEST_CASE("stokes_consistency on the three reference configurations") {
  const HoloForm beta = unit_beta();

  const FunctionWithPole inv = FunctionWithPole::single(Jet2::constant(1), 1);
  const StokesResult a = stokes_consistency(inv, beta, CutoffSpec::radial(), 0.01);
  CHECK(std::abs(a.interior - a.boundary) < 1e-8);

  Jet2 smooth(1);
  smooth.set(0, 0, 1);
  smooth.set(1, 0, Complex(0.5));
  smooth.set(0, 1, Complex(0.25));
  const FunctionWithPole sg = FunctionWithPole::single(smooth, 0);
  std::vector<Complex> boundaries;
  for (double eps : {0.02, 0.01}) {
    const StokesResult b = stokes_consistency(sg, beta, CutoffSpec::radial(), eps);
    CHECK(std::abs(b.interior - b.boundary) < 1e-6);
    boundaries.push_back(b.boundary);
  }
  // For this gamma the circle integral is exactly gamma(0) at every radius.
  CHECK(std::abs(boundaries[0] - boundaries[1]) < 1e-9);
  CHECK(std::abs(boundaries[0] - Complex(1)) < 1e-9);

  Jet2 num(1);
  num.set(0, 0, 1);
  num.set(0, 1, 1);  // (1 + zbar)/z
  const FunctionWithPole gz = FunctionWithPole::single(num, 1);
  const StokesResult c = stokes_consistency(gz, beta, tilted(0.1), 0.01);
  CHECK(std::abs(c.interior - c.boundary) < 1e-6);
}
