#include "asymap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "asymap/errors.hpp"
#include "asymap/numerics.hpp"

namespace asymap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes by Newton iteration on the Legendre recurrence.
GaussRule make_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss(n)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int n) { return gauss_rule(n).nodes; }
const std::vector<double>& gauss_legendre_weights(int n) { return gauss_rule(n).weights; }

double levelset_radius(const CutoffSpec& lam, double theta, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("levelset_radius: eps must be positive");
  const Complex dir = std::polar(1.0, theta);
  auto value = [&](double r) { return lam.eval(r * dir) - eps; };
  // lambda(r) ~ r e^{eta(0)} near 0, so eps itself is a good starting scale.
  double lo = eps, hi = eps;
  int guard = 0;
  while (value(lo) > 0.0) {
    lo *= 0.5;
    if (++guard > 80) throw LevelSetNotBracketed("levelset_radius: no lower bracket");
  }
  guard = 0;
  while (value(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 80) throw LevelSetNotBracketed("levelset_radius: no upper bracket");
  }
  auto deriv = [&](double r) {
    const Complex z = r * dir;
    // d/dr of r e^{eta} = e^{eta} (1 + 2 Re(z eta_z)).
    return std::exp(lam.eval_eta(z)) * (1.0 + 2.0 * (z * lam.eta_dz(z)).real());
  };
  return find_root(value, deriv, lo, hi);
}

LevelCurve level_curve(const CutoffSpec& lam, double eps, int K) {
  if (K < 64 || !power_of_two(K))
    throw std::invalid_argument("level_curve: K must be a power of two >= 64");
  LevelCurve curve;
  curve.eps = eps;
  curve.theta.resize(K);
  curve.radius.resize(K);
  for (int j = 0; j < K; ++j) {
    const double th = kTwoPi * j / K;
    const double r = levelset_radius(lam, th, eps);
    if (std::abs(lam.eval(std::polar(r, th)) - eps) > 1e-13 * eps)
      throw NumericalError("level_curve: residual target not met");
    curve.theta[j] = th;
    curve.radius[j] = r;
  }
  return curve;
}

Complex circle_sum(const std::function<Complex(Complex)>& f, double r, int K,
                   CircleMode mode) {
  Complex acc(0);
  for (int j = 0; j < K; ++j) {
    const Complex z = std::polar(r, kTwoPi * j / K);
    Complex term = f(z);
    if (mode == CircleMode::Dz) term *= Complex(0, 1) * z;
    acc += term;
  }
  return acc * (kTwoPi / K);
}

Complex circle_integrate(const std::function<Complex(Complex)>& f, double r, int K,
                         CircleMode mode) {
  if (!power_of_two(K)) throw std::invalid_argument("circle_integrate: K must be a power of two");
  constexpr int kMax = 1 << 16;
  Complex v = circle_sum(f, r, K, mode);
  while (2 * K <= kMax) {
    K *= 2;
    const Complex v2 = circle_sum(f, r, K, mode);
    if (std::abs(v2 - v) < 1e-12) return v2;
    v = v2;
  }
  throw QuadratureBudgetExceeded("circle_integrate: no convergence within budget");
}

namespace {

// Radial integral of f(r e^{i theta}) r dr over [r_in, rho], panels split at
// the forced knots, log-uniform within each section, everything subdivided
// 2^level times.
Complex radial_integral(const std::function<Complex(Complex)>& f, double theta,
                        double r_in, double rho, const AnnulusOptions& opts,
                        int level) {
  std::vector<double> cuts{r_in};
  for (double k : opts.radial_knots)
    if (k > r_in * (1.0 + 1e-14) && k < rho * (1.0 - 1e-14)) cuts.push_back(k);
  cuts.push_back(rho);
  std::sort(cuts.begin(), cuts.end());

  const auto& xs = gauss_legendre_nodes(opts.radial_points);
  const auto& ws = gauss_legendre_weights(opts.radial_points);
  const Complex dir = std::polar(1.0, theta);

  Complex acc(0);
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    const double ratio = b / a;
    const int panels = std::max(2, static_cast<int>(std::ceil(std::log2(ratio))))
                       << level;
    const double g = std::log(ratio) / panels;
    for (int p = 0; p < panels; ++p) {
      const double pa = a * std::exp(g * p);
      const double pb = (p + 1 == panels) ? b : a * std::exp(g * (p + 1));
      const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
      for (int q = 0; q < opts.radial_points; ++q) {
        const double r = mid + half * xs[q];
        acc += ws[q] * half * r * f(r * dir);
      }
    }
  }
  return acc;
}

Complex annulus_pass(const std::function<Complex(Complex)>& f, const LevelCurve& inner,
                     double outer_rho, const AnnulusOptions& opts, int level) {
  const int K = inner.count();
  Complex acc(0);
  for (int j = 0; j < K; ++j)
    acc += radial_integral(f, inner.theta[j], inner.radius[j], outer_rho, opts, level);
  return acc * (kTwoPi / K);
}

}  // namespace

Complex annulus_integrate(const std::function<Complex(Complex)>& f,
                          const LevelCurve& inner, double outer_rho,
                          const AnnulusOptions& opts) {
  if (inner.count() == 0) throw std::invalid_argument("annulus_integrate: empty level curve");
  for (double r : inner.radius)
    if (r >= outer_rho) throw std::invalid_argument("annulus_integrate: level curve outside outer radius");

  Complex v = annulus_pass(f, inner, outer_rho, opts, opts.base_level);
  if (opts.max_refine == 0) return v;
  for (int step = 1; step <= opts.max_refine; ++step) {
    const Complex v2 = annulus_pass(f, inner, outer_rho, opts, opts.base_level + step);
    if (std::abs(v2 - v) <= opts.abs_target) return v2;
    v = v2;
  }
  throw QuadratureBudgetExceeded("annulus_integrate: refinement budget exhausted");
}

}  // namespace asymap
