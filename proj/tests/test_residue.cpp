#include <doctest.h>

#include <cmath>
#include <random>

#include "asymap/residue.hpp"

using namespace asymap;

namespace {

Jet2 random_jet(std::mt19937& rng, int order) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Jet2 g(order);
  for (int r = 0; r <= order; ++r)
    for (int s = 0; s <= order; ++s) g.set(r, s, Complex(unif(rng), unif(rng)));
  return g;
}

// d_z by central differences of the full (windowed) numerator.
Complex fd_dz(const Form1D& alpha, Complex z0, double h) {
  const Complex fx = (alpha.numerator(z0 + h) - alpha.numerator(z0 - h)) / (2.0 * h);
  const Complex fy =
      (alpha.numerator(z0 + Complex(0, h)) - alpha.numerator(z0 - Complex(0, h))) /
      (2.0 * h);
  return 0.5 * (fx - Complex(0, 1) * fy);
}

// d_z^2 at the origin by a 2-d central stencil.
Complex fd_dz2(const Form1D& alpha, double h) {
  auto g = [&](double x, double y) { return alpha.numerator(Complex(x, y)); };
  const Complex gxx = (g(h, 0) - 2.0 * g(0, 0) + g(-h, 0)) / (h * h);
  const Complex gyy = (g(0, h) - 2.0 * g(0, 0) + g(0, -h)) / (h * h);
  const Complex gxy =
      (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4.0 * h * h);
  return 0.25 * (gxx - gyy - Complex(0, 2) * gxy);
}

}  // namespace

TEST_CASE("window profile") {
  CHECK(window(0.0) == 1.0);
  CHECK(window(0.25) == 1.0);
  CHECK(window(1.0) == 0.0);
  CHECK(window(2.0) == 0.0);
  double prev = 1.0;
  for (double t = 0.3; t < 1.0; t += 0.05) {
    const double v = window(t);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
  // derivative vs finite differences
  for (double t : {0.3, 0.5, 0.7, 0.9}) {
    const double h = 1e-6;
    const double fd = (window(t + h) - window(t - h)) / (2.0 * h);
    CHECK(std::abs(fd - window_deriv(t)) < 1e-7);
  }
  CHECK(window_deriv(0.1) == 0.0);
  CHECK(window_deriv(1.2) == 0.0);
}

TEST_CASE("res_dolbeault closed forms") {
  const Form1D simple(1, Jet2::constant(1), 1.0);
  CHECK(res_dolbeault(simple).value == Complex(1));
  CHECK_FALSE(res_dolbeault(simple).pole_free);

  Jet2 P(1);
  P.set(0, 0, 1);
  P.set(1, 0, 1);
  const Form1D order2(2, P, 1.0);
  CHECK(res_dolbeault(order2).value == Complex(1));
  // Finite-difference oracle on the full numerator (window included).
  CHECK(std::abs(fd_dz(order2, Complex(0), 1e-5) - res_dolbeault(order2).value) < 1e-8);

  Jet2 Q(2);
  Q.set(0, 1, 1);  // zbar
  Q.set(2, 0, 4);  // 4 z^2
  const Form1D order3(3, Q, 1.0);
  CHECK(res_dolbeault(order3).value == Complex(4));
  CHECK(std::abs(0.5 * fd_dz2(order3, 1e-4) - Complex(4)) < 1e-6);

  const Form1D smooth(0, Jet2::constant(7), 1.0);
  const ResidueValue rv = res_dolbeault(smooth);
  CHECK(rv.value == Complex(0));
  CHECK(rv.pole_free);
}

TEST_CASE("res_classical against simple poles") {
  const Form1D simple(1, Jet2::constant(1), 1.0);
  CHECK(std::abs(res_classical(simple) - Complex(1)) < 1e-13);

  Jet2 P(1);
  P.set(0, 0, 1);
  P.set(1, 0, 2);  // 1 + 2z
  const Form1D holo(1, P, 1.0);
  CHECK(std::abs(res_classical(holo) - res_dolbeault(holo).value) < 1e-12);

  const Form1D zbar(1, Jet2::monomial(0, 1, 1), 1.0);
  for (double r : {0.05, 0.1}) {
    CHECK(std::abs(res_classical(zbar, r)) < 1e-13);
  }
  CHECK(res_dolbeault(zbar).value == Complex(0));

  Jet2 Q(1);
  Q.set(0, 0, 1);
  CHECK_THROWS_AS(res_classical(Form1D(2, Q, 1.0)), std::invalid_argument);
}

TEST_CASE("pole_reduce basics") {
  const Form1D simple(1, Jet2::constant(2), 1.0);
  const PoleReduction same = pole_reduce(simple);
  CHECK(same.reduced.m == 1);
  CHECK(same.reduced.P.at(0, 0) == Complex(2));
  CHECK(same.potential.empty());

  Jet2 P(1);
  P.set(0, 0, 1);
  P.set(1, 0, 1);
  const Form1D order2(2, P, 1.0);
  const PoleReduction red = pole_reduce(order2);
  CHECK(red.reduced.m == 1);
  CHECK(res_dolbeault(red.reduced).value == res_dolbeault(order2).value);
  CHECK(res_dolbeault(order2).value == Complex(1));

  // Residue data that vanishes identically collapses to a smooth form.
  const Form1D zbar2(2, Jet2::monomial(0, 1, 1), 1.0);
  const PoleReduction gone = pole_reduce(zbar2);
  CHECK(gone.reduced.m == 0);
}

TEST_CASE("pole_reduce numeric identity on the jet data") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = 2 + trial % 3;
    const Jet2 P = random_jet(rng, 3);
    const Form1D alpha(m, P, 1.0);
    const PoleReduction red = pole_reduce(alpha);
    const FunctionWithPole dgamma = red.potential.partial_z();
    for (int pt = 0; pt < 20; ++pt) {
      // Sample points with 1/4 <= |z|^2/rho^2 <= 1/2.
      const double r = std::sqrt(0.25 + 0.25 * unif(rng));
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * unif(rng));
      const Complex lhs = jet_eval(alpha.P, z) / std::pow(z, alpha.m);
      const Complex rhs = jet_eval(red.reduced.P, z) / std::pow(z, red.reduced.m);
      CHECK(std::abs(lhs - rhs - dgamma.eval(z)) < 1e-9);
    }
  }
}

TEST_CASE("res_log_pairing coefficient rules") {
  std::mt19937 rng(81);
  // gamma = sigma / z^m with lambda = |z|: residue is sigma_{m,0} / 2.
  for (int m : {0, 1, 2, 3}) {
    const Jet2 sigma = random_jet(rng, 3);
    const FunctionWithPole gamma = FunctionWithPole::single(sigma, m);
    const Complex expected = 0.5 * sigma.at(m, 0);
    CHECK(std::abs(res_log_pairing(gamma, CutoffSpec::radial()) - expected) < 1e-14);
  }

  // eta = Re z, gamma = 1/z: the d_z eta term contributes 1/2 in total.
  Jet2 eta(1, true);
  eta.set(1, 0, Complex(0.5));
  eta.set(0, 1, Complex(0.5));
  const CutoffSpec lam(eta);
  const FunctionWithPole gamma = FunctionWithPole::single(Jet2::constant(1), 1);
  CHECK(std::abs(res_log_pairing(gamma, lam) - Complex(0.5)) < 1e-14);
}

TEST_CASE("residue of exact forms vanishes") {
  std::mt19937 rng(91);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PoleTerm> terms;
    const int nterms = 1 + trial % 3;
    for (int i = 0; i < nterms; ++i)
      terms.push_back({random_jet(rng, 3), static_cast<int>(rng() % 4)});
    const FunctionWithPole gamma(terms);
    const Form1D exact = gamma.partial_z().to_form(1.0);
    CHECK(std::abs(res_dolbeault(exact).value) <= 1e-12);
  }
}

TEST_CASE("pole reduction preserves the residue exactly") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 3;
    const Form1D alpha(m, random_jet(rng, 4), 1.0);
    const Complex before = res_dolbeault(alpha).value;
    const Complex after = res_dolbeault(pole_reduce(alpha).reduced).value;
    CHECK(before == after);
  }
}

TEST_CASE("classical and dolbeault residues agree on meromorphic forms") {
  std::mt19937 rng(111);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Jet2 P(3);
    for (int r = 0; r <= 3; ++r) P.set(r, 0, Complex(unif(rng), unif(rng)));
    const Form1D alpha(1, P, 1.0);
    CHECK(std::abs(res_classical(alpha) - res_dolbeault(alpha).value) < 1e-10);
  }
}

TEST_CASE("res_dolbeault is linear") {
  std::mt19937 rng(121);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3;
    const Jet2 P1 = random_jet(rng, 3), P2 = random_jet(rng, 3);
    const Complex c1(unif(rng), unif(rng)), c2(unif(rng), unif(rng));
    const Jet2 comb = jet_add(jet_scale(P1, c1), jet_scale(P2, c2));
    const Complex lhs = res_dolbeault(Form1D(m, comb, 1.0)).value;
    const Complex rhs = c1 * res_dolbeault(Form1D(m, P1, 1.0)).value +
                        c2 * res_dolbeault(Form1D(m, P2, 1.0)).value;
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}
