#include "asymap/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "asymap/numerics.hpp"
#include "asymap/pairing.hpp"
#include "asymap/quadrature.hpp"
#include "asymap/residue.hpp"
#include "asymap/riemann.hpp"
#include "asymap/series.hpp"

namespace asymap::verify {

namespace {

struct Check {
  double worst = 0.0;
  std::ostringstream detail;

  // Track the largest deviation; the criterion passes when every recorded
  // deviation stayed within its bound.
  bool ok = true;
  void record(const std::string& what, double dev, double bound) {
    worst = std::max(worst, dev);
    if (!(dev <= bound)) {
      ok = false;
      detail << what << " deviation " << dev << " exceeds " << bound << "; ";
    }
  }
};

CheckResult run_check(const std::string& name, double time_limit,
                      const std::function<void(Check&)>& body) {
  CheckResult result;
  result.name = name;
  const auto start = std::chrono::steady_clock::now();
  Check check;
  try {
    body(check);
    result.pass = check.ok;
    std::ostringstream os;
    os << check.detail.str();
    if (check.ok) os << "max deviation " << check.worst;
    result.detail = os.str();
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.pass && result.seconds > time_limit) {
    result.pass = false;
    result.detail += " [runtime " + std::to_string(result.seconds) + "s over limit " +
                     std::to_string(time_limit) + "s]";
  }
  return result;
}

double coeff_dev(const CoeffSeq& a, const Series1& b) {
  double worst = 0.0;
  for (int n = 0; n <= std::max(a.order(), b.order()); ++n) {
    const Complex av = n <= a.order() ? a.a[n] : Complex(0);
    worst = std::max(worst, std::abs(av - b.coeff(n)));
  }
  return worst;
}

AnalyticWeight square_map_weight() {
  return AnalyticWeight::from_holomorphic(Series1::normalized({1.0, 0.3}));
}

AnalyticWeight cubic_tilt_weight() {
  // |z|^2 + (z^2 zbar + z zbar^2) / 2
  return AnalyticWeight::from_coeffs(
      1, {{0, 0, Complex(1)}, {1, 0, Complex(0.5)}, {0, 1, Complex(0.5)}});
}

Jet2 re_z_jet() {
  Jet2 phi(1, true);
  phi.set(1, 0, Complex(0.5));
  phi.set(0, 1, Complex(0.5));
  return phi;
}

CutoffSpec tilted_cutoff(double slope) {
  // lambda = |z| e^{slope Re z}
  Jet2 eta(1, true);
  eta.set(1, 0, Complex(0.5 * slope));
  eta.set(0, 1, Complex(0.5 * slope));
  return CutoffSpec(eta);
}

// ---- criteria -------------------------------------------------------------

CheckResult criterion1() {
  return run_check("holomorphic-square-weight", 1.0, [](Check& c) {
    const AnalyticWeight mu = square_map_weight();
    const Series1 expected = revert(Series1::normalized({1.0, 0.3}), 16);
    std::vector<CoeffSeq> runs;
    for (double eps : {0.02, 0.05, 0.1}) {
      const SolveResult res = solve(mu, eps);
      c.record("coefficients vs reversion", coeff_dev(res.a, expected), 1e-10);
      runs.push_back(res.a);
    }
    for (size_t k = 1; k < runs.size(); ++k)
      c.record("eps independence", runs[k].distance(runs[0]), 1e-10);
  });
}

CheckResult criterion2() {
  return run_check("radial-profile-dilation", 1.0, [](Check& c) {
    const AnalyticWeight mu = AnalyticWeight::from_radial_profile({1.0, 1.0});
    for (double eps : {0.05, 0.1}) {
      const double e2 = eps * eps;
      const double t = find_root([&](double x) { return x + x * x - e2; },
                                 [&](double x) { return 1.0 + 2.0 * x; }, 0.0, e2);
      const double a0_expected = std::sqrt(t) / eps;
      const SolveResult res = solve(mu, eps);
      c.record("a0 vs psi-inverse oracle", std::abs(res.a.a[0] - a0_expected), 1e-10);
      for (int n = 1; n <= res.a.order(); ++n)
        c.record("higher coefficients vanish", std::abs(res.a.a[n]), 1e-10);
    }
  });
}

CheckResult criterion3() {
  return run_check("limit-map-extrapolation", 2.0, [](Check& c) {
    const AnalyticWeight mu = cubic_tilt_weight();
    const Series1 lm = limit_map(mu);
    c.record("limit map coeff 0", std::abs(lm.coeff(0) - Complex(1)), 0.0);
    c.record("limit map coeff 1", std::abs(lm.coeff(1) - Complex(0.5)), 0.0);
    const Series1 expected = revert(Series1::normalized({1.0, 0.5}), 16);
    std::vector<double> h;
    std::vector<std::vector<Complex>> samples;
    for (double eps : {0.04, 0.02, 0.01, 0.005}) {
      const SolveResult res = solve(mu, eps);
      h.push_back(eps * eps);
      samples.push_back(res.a.a);
    }
    for (int n = 0; n <= 16; ++n) {
      std::vector<Complex> y;
      for (const auto& s : samples) y.push_back(s[n]);
      const Complex ext = richardson_zero(h, y);
      c.record("extrapolated coefficient", std::abs(ext - expected.coeff(n)), 1e-6);
    }
  });
}

CheckResult criterion4() {
  return run_check("boundary-residual", 2.0, [](Check& c) {
    const std::vector<std::pair<AnalyticWeight, double>> cases = {
        {AnalyticWeight(0), 0.1},
        {square_map_weight(), 0.05},
        {square_map_weight(), 0.1},
        {AnalyticWeight::from_radial_profile({1.0, 1.0}), 0.1},
        {cubic_tilt_weight(), 0.04},
    };
    for (const auto& [mu, eps] : cases) {
      const SolveResult res = solve(mu, eps);
      c.record("boundary residual", boundary_residual(mu, eps, res.a), 1e-7);
    }
  });
}

CheckResult criterion5() {
  return run_check("evenness-and-analyticity", 2.0, [](Check& c) {
    const AnalyticWeight mu = cubic_tilt_weight();
    for (double eps : {0.02, 0.04}) {
      const SolveResult plus = solve(mu, eps);
      const SolveResult minus = solve(mu, -eps);
      c.record("evenness", plus.a.distance(minus.a), 1e-10);
    }
    // Six eps samples; each coefficient fits a degree-2 polynomial in eps^2.
    std::vector<double> eps_grid;
    for (int k = 0; k < 6; ++k) eps_grid.push_back(0.04 / std::pow(std::sqrt(2.0), k));
    std::vector<double> x0(6, 1.0), x1(6), x2(6);
    std::vector<std::vector<Complex>> samples;
    for (double eps : eps_grid) samples.push_back(solve(mu, eps).a.a);
    for (size_t k = 0; k < eps_grid.size(); ++k) {
      x1[k] = eps_grid[k] * eps_grid[k];
      x2[k] = x1[k] * x1[k];
    }
    for (int n = 0; n <= 4; ++n) {
      std::vector<Complex> y;
      for (const auto& s : samples) y.push_back(s[n]);
      const auto fitted = lstsq({x0, x1, x2}, y);
      c.record("eps^2 polynomial residual", fit_residual({x0, x1, x2}, fitted, y), 1e-6);
    }
  });
}

CheckResult criterion6() {
  return run_check("divergent-coefficient", 30.0, [](Check& c) {
    const Form1D alpha(1, Jet2::constant(Complex(1)), 1.0);
    const HoloForm beta(Series1::plain({Complex(1)}));
    const auto grid = default_eps_grid();
    const PairingFit flat = divergence_fit(alpha, beta, CutoffSpec::radial(), grid);
    c.record("I0 (radial cutoff)", std::abs(flat.I0 - Complex(2)) / 2.0, 1e-5);
    const PairingFit tilted = divergence_fit(alpha, beta, tilted_cutoff(0.1), grid);
    c.record("I0 (tilted cutoff)", std::abs(tilted.I0 - Complex(2)) / 2.0, 2e-5);
  });
}

CheckResult criterion7() {
  return run_check("higher-order-pole", 60.0, [](Check& c) {
    const HoloForm beta(Series1::plain({Complex(1)}));
    const auto grid = default_eps_grid();
    Jet2 P(1);
    P.set(0, 0, Complex(1));
    P.set(1, 0, Complex(1));
    const Form1D alpha2(2, P, 1.0);
    const PairingFit fit2 = divergence_fit(alpha2, beta, CutoffSpec::radial(), grid);
    c.record("I0 for (1+z)/z^2", std::abs(fit2.I0 - Complex(2)) / 2.0, 1e-4);
    const Form1D zbar(1, Jet2::monomial(0, 1, Complex(1)), 1.0);
    const PairingFit fit0 = divergence_fit(zbar, beta, CutoffSpec::radial(), grid);
    c.record("I0 for zbar/z", std::abs(fit0.I0), 1e-5);
  });
}

CheckResult criterion8() {
  return run_check("variation-formula", 90.0, [](Check& c) {
    const HoloForm beta(Series1::plain({Complex(1)}));
    const auto grid = default_eps_grid();

    const Form1D alpha1(1, Jet2::constant(Complex(1)), 1.0);
    const Jet2 phi_const = Jet2::constant(Complex(0.3));
    const VariationResult vc =
        variation(alpha1, beta, CutoffSpec::radial(), phi_const, grid);
    c.record("constant phi variation", std::abs(vc.measured - Complex(-0.6)), 1e-4);

    Jet2 P(1);
    P.set(0, 0, Complex(1));
    P.set(1, 0, Complex(1));
    const Form1D alpha2(2, P, 1.0);
    const Jet2 phi = re_z_jet();
    const VariationResult v1 = variation(alpha2, beta, CutoffSpec::radial(), phi, grid);
    c.record("Re z variation", std::abs(v1.measured - Complex(-1)), 1e-3);
    c.record("Re z prediction", std::abs(v1.predicted - Complex(-1)), 1e-12);

    const VariationResult v2 =
        variation(alpha2, beta, CutoffSpec::radial(), jet_scale(phi, Complex(2)), grid);
    c.record("linearity in phi", std::abs(v2.measured / v1.measured - 2.0) / 2.0, 1e-3);
  });
}

CheckResult criterion9() {
  return run_check("stokes-and-boundary-limit", 30.0, [](Check& c) {
    const HoloForm beta(Series1::plain({Complex(1)}));

    struct StokesCase {
      FunctionWithPole gamma;
      CutoffSpec lam;
    };
    Jet2 smooth(1);
    smooth.set(0, 0, Complex(1));
    smooth.set(1, 0, Complex(0.5));
    smooth.set(0, 1, Complex(0.25));
    Jet2 one_plus_zbar(1);
    one_plus_zbar.set(0, 0, Complex(1));
    one_plus_zbar.set(0, 1, Complex(1));
    const std::vector<StokesCase> cases = {
        {FunctionWithPole::single(Jet2::constant(Complex(1)), 1), CutoffSpec::radial()},
        {FunctionWithPole::single(smooth, 0), CutoffSpec::radial()},
        {FunctionWithPole::single(one_plus_zbar, 1), tilted_cutoff(0.1)},
    };
    for (const auto& sc : cases) {
      const StokesResult sr = stokes_consistency(sc.gamma, beta, sc.lam, 0.01);
      c.record("stokes interior vs boundary", std::abs(sr.interior - sr.boundary), 1e-6);
    }

    struct LimitCase {
      FunctionWithPole gamma;
      CutoffSpec lam;
    };
    Jet2 one_plus_z(1);
    one_plus_z.set(0, 0, Complex(1));
    one_plus_z.set(1, 0, Complex(1));
    const std::vector<LimitCase> limits = {
        {FunctionWithPole::single(Jet2::constant(Complex(1)), 0), CutoffSpec::radial()},
        {FunctionWithPole::single(one_plus_z, 1), CutoffSpec::radial()},
        {FunctionWithPole::single(Jet2::constant(Complex(1)), 1), tilted_cutoff(0.1)},
    };
    for (const auto& lc : limits) {
      const Complex predicted =
          2.0 * res_log_pairing(lc.gamma, lc.lam) * std::conj(beta.residue());
      const Complex v1 = boundary_pairing(lc.gamma, beta, lc.lam, 2e-3);
      const Complex v2 = boundary_pairing(lc.gamma, beta, lc.lam, 1e-3);
      const Complex extrapolated = 2.0 * v2 - v1;  // removes the O(eps) term
      c.record("boundary pairing limit", std::abs(extrapolated - predicted), 1e-5);
    }
  });
}

CheckResult criterion10() {
  return run_check("residue-properties", 5.0, [](Check& c) {
    std::mt19937 rng(20260811);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_jet = [&](int order) {
      Jet2 g(order);
      for (int r = 0; r <= order; ++r)
        for (int s = 0; s <= order; ++s) g.set(r, s, Complex(unif(rng), unif(rng)));
      return g;
    };

    for (int trial = 0; trial < 100; ++trial) {
      std::vector<PoleTerm> terms;
      const int nterms = 1 + trial % 3;
      for (int i = 0; i < nterms; ++i)
        terms.push_back({random_jet(3), static_cast<int>(rng() % 4)});
      const FunctionWithPole gamma(terms);
      const Form1D exact = gamma.partial_z().to_form(1.0);
      c.record("residue of exact form", std::abs(res_dolbeault(exact).value), 1e-12);
    }

    for (int trial = 0; trial < 40; ++trial) {
      const int m = 2 + trial % 3;
      const Form1D alpha(m, random_jet(4), 1.0);
      const Complex before = res_dolbeault(alpha).value;
      const PoleReduction red = pole_reduce(alpha);
      const Complex after = res_dolbeault(red.reduced).value;
      c.record("pole reduction preserves residue", std::abs(after - before), 0.0);
    }

    for (int trial = 0; trial < 20; ++trial) {
      Jet2 P(3);
      for (int r = 0; r <= 3; ++r) P.set(r, 0, Complex(unif(rng), unif(rng)));
      const Form1D alpha(1, P, 1.0);
      c.record("classical vs dolbeault residue",
               std::abs(res_classical(alpha) - res_dolbeault(alpha).value), 1e-10);
    }
  });
}

// ---- series spot checks ---------------------------------------------------

std::vector<CheckResult> series_suite() {
  std::vector<CheckResult> out;
  out.push_back(run_check("series-ring-identities", 5.0, [](Check& c) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_jet = [&](int order) {
      Jet2 g(order);
      for (int r = 0; r <= order; ++r)
        for (int s = 0; s <= order; ++s) g.set(r, s, Complex(unif(rng), unif(rng)));
      return g;
    };
    for (int trial = 0; trial < 50; ++trial) {
      const Jet2 f = random_jet(4), g = random_jet(4), h = random_jet(4);
      const int N = 4;
      double dev = 0.0;
      const Jet2 fg = jet_mul(f, g, N), gf = jet_mul(g, f, N);
      const Jet2 fg_h = jet_mul(jet_mul(f, g, N), h, N);
      const Jet2 f_gh = jet_mul(f, jet_mul(g, h, N), N);
      const Jet2 leib_l = jet_dz(jet_mul(f, g, N));
      const Jet2 leib_r =
          jet_add(jet_mul(jet_dz(f), g, N - 1), jet_mul(f, jet_dz(g), N - 1));
      for (int r = 0; r <= N; ++r)
        for (int s = 0; s <= N; ++s) {
          dev = std::max(dev, std::abs(fg.at(r, s) - gf.at(r, s)));
          dev = std::max(dev, std::abs(fg_h.at(r, s) - f_gh.at(r, s)));
          if (r < N && s < N)
            dev = std::max(dev, std::abs(leib_l.at(r, s) - leib_r.at(r, s)));
        }
      c.record("commutativity/associativity/Leibniz", dev, 1e-12);
    }
  }));
  out.push_back(run_check("series-reversion-identity", 5.0, [](Check& c) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(-0.4, 0.4);
    for (int trial = 0; trial < 30; ++trial) {
      const int N = 4 + trial % 12;
      std::vector<Complex> b(static_cast<size_t>(N) + 1);
      b[0] = Complex(1) + Complex(unif(rng), unif(rng));
      for (int k = 1; k <= N; ++k) b[k] = Complex(unif(rng), unif(rng));
      const Series1 f = Series1::normalized(b);
      const Series1 g = revert(f, N);
      const Series1 id = compose(f, g, N);
      double scale = 1.0;
      for (int k = 0; k <= N; ++k) scale = std::max(scale, std::abs(g.coeff(k)));
      double dev = std::abs(id.coeff(0) - Complex(1));
      for (int k = 1; k <= N; ++k) dev = std::max(dev, std::abs(id.coeff(k)));
      c.record("compose-back identity", dev / scale, 1e-12);
    }
  }));
  out.push_back(run_check("series-exp-jet-oracle", 5.0, [](Check& c) {
    Jet2 lin(8, true);
    lin.set(1, 0, Complex(0.5));
    lin.set(0, 1, Complex(0.5));
    const Jet2 e = jet_exp(lin, 8);
    c.record("exp jet evaluation", std::abs(jet_eval(e, Complex(0.1)) - std::exp(0.1)),
             1e-10);
  }));
  return out;
}

}  // namespace

std::vector<CheckResult> acceptance_criteria() {
  std::vector<CheckResult> out;
  out.push_back(criterion1());
  out.push_back(criterion2());
  out.push_back(criterion3());
  out.push_back(criterion4());
  out.push_back(criterion5());
  out.push_back(criterion6());
  out.push_back(criterion7());
  out.push_back(criterion8());
  out.push_back(criterion9());
  out.push_back(criterion10());
  return out;
}

std::vector<CheckResult> run_suite(const std::string& suite) {
  if (suite == "series") return series_suite();
  if (suite == "riemann")
    return {criterion1(), criterion2(), criterion3(), criterion4(), criterion5()};
  if (suite == "residue") return {criterion10()};
  if (suite == "pairing")
    return {criterion6(), criterion7(), criterion8(), criterion9()};
  if (suite == "all") {
    auto out = series_suite();
    for (auto& r : acceptance_criteria()) out.push_back(std::move(r));
    return out;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace asymap::verify
