#include "asymap/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "asymap/errors.hpp"

namespace asymap {

namespace {

size_t table_index(int r, int s, int order) {
  return static_cast<size_t>(r) * (order + 1) + s;
}

// Full (untruncated) convolution a * b.
std::vector<Complex> conv(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, Complex(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Complex(0)) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

struct WeightTerm {
  int r, s;
  Complex c;
};

}  // namespace

AnalyticWeight::AnalyticWeight(int order) : order_(order), scale_(1.0) {
  if (order < 0) throw std::invalid_argument("AnalyticWeight: negative order");
  c_.assign(static_cast<size_t>(order + 1) * (order + 1), Complex(0));
  c_[0] = Complex(1);
}

AnalyticWeight AnalyticWeight::from_coeffs(
    int order, const std::vector<std::tuple<int, int, Complex>>& coeffs) {
  AnalyticWeight w(order);
  std::fill(w.c_.begin(), w.c_.end(), Complex(0));
  for (const auto& [r, s, v] : coeffs) {
    if (r < 0 || s < 0 || r > order || s > order)
      throw std::invalid_argument("AnalyticWeight: coefficient index outside table");
    w.c_[table_index(r, s, order)] = v;
  }
  for (int r = 0; r <= order; ++r)
    for (int s = r; s <= order; ++s) {
      const Complex upper = w.c_[table_index(r, s, order)];
      const Complex lower = w.c_[table_index(s, r, order)];
      if (std::abs(lower - std::conj(upper)) > 1e-12)
        throw std::invalid_argument(
            "AnalyticWeight: coefficients must be Hermitian (mu real-valued)");
    }
  const Complex c00 = w.c_[0];
  if (!(c00.real() > 0.0) || std::abs(c00.imag()) > 1e-14)
    throw std::invalid_argument("AnalyticWeight: c_{0,0} must be real and positive");
  w.scale_ = c00.real();
  for (auto& v : w.c_) v /= w.scale_;
  w.c_[0] = Complex(1);
  return w;
}

AnalyticWeight AnalyticWeight::from_holomorphic(const Series1& h) {
  if (!h.normalized())
    throw std::invalid_argument("AnalyticWeight::from_holomorphic: h must be normalized");
  const int order = h.order();
  std::vector<std::tuple<int, int, Complex>> coeffs;
  for (int r = 0; r <= order; ++r)
    for (int s = 0; s <= order; ++s)
      coeffs.emplace_back(r, s, h.coeff(r) * std::conj(h.coeff(s)));
  return from_coeffs(order, coeffs);
}

AnalyticWeight AnalyticWeight::from_radial_profile(const std::vector<double>& psi) {
  if (psi.empty() || psi[0] <= 0.0)
    throw std::invalid_argument("AnalyticWeight::from_radial_profile: need psi_0 > 0");
  std::vector<std::tuple<int, int, Complex>> coeffs;
  for (size_t k = 0; k < psi.size(); ++k)
    coeffs.emplace_back(static_cast<int>(k), static_cast<int>(k), Complex(psi[k]));
  return from_coeffs(static_cast<int>(psi.size()) - 1, coeffs);
}

Complex AnalyticWeight::normalized_coeff(int r, int s) const {
  if (r < 0 || s < 0 || r > order_ || s > order_) return Complex(0);
  return c_[table_index(r, s, order_)];
}

double AnalyticWeight::eval(Complex z) const {
  const Complex zb = std::conj(z);
  Complex acc(0);
  for (int r = order_; r >= 0; --r) {
    Complex row(0);
    for (int s = order_; s >= 0; --s) row = row * zb + normalized_coeff(r, s);
    acc = acc * z + row;
  }
  return scale_ * (acc * z * zb).real();
}

Complex CoeffSeq::eval(Complex w) const {
  Complex acc(0);
  for (int k = order(); k >= 0; --k) acc = acc * w + a[k];
  return w * acc;
}

double CoeffSeq::distance(const CoeffSeq& other) const {
  const int n = std::max(order(), other.order());
  double acc = 0.0, weight = 1.0;
  for (int k = 0; k <= n; ++k) {
    const Complex ak = k <= order() ? a[k] : Complex(0);
    const Complex bk = k <= other.order() ? other.a[k] : Complex(0);
    acc += std::abs(ak - bk) * weight;
    weight *= R;
  }
  return acc;
}

double CoeffSeq::distance_to_center() const {
  return distance(center(order(), R));
}

CoeffSeq CoeffSeq::center(int order, double R) {
  CoeffSeq c;
  c.a.assign(static_cast<size_t>(order) + 1, Complex(0));
  c.a[0] = Complex(1);
  c.R = R;
  return c;
}

CoeffSeq fixed_point_map(Complex eps, const CoeffSeq& a, const AnalyticWeight& mu) {
  const int M = a.order();

  std::vector<WeightTerm> terms;
  int top = 0;
  for (int r = 0; r <= mu.order(); ++r)
    for (int s = 0; s <= mu.order(); ++s) {
      if (r + s == 0) continue;
      const Complex c = mu.normalized_coeff(r, s);
      if (c == Complex(0)) continue;
      terms.push_back({r, s, c});
      top = std::max(top, std::max(r, s));
    }

  // Powers A^j of A(x) = sum a_k x^k, full degree: the t-th coefficient of
  // A^{j} is exactly the sum over j-tuples p with |p| = t and entries <= M.
  std::vector<std::vector<Complex>> pow_a(static_cast<size_t>(top) + 2);
  pow_a[1] = a.a;
  for (int j = 2; j <= top + 1; ++j) pow_a[j] = conv(pow_a[j - 1], a.a);

  // Even powers of eps, with the 0^0 = 1 convention at eps = 0.
  int max_pow = 2 * M + 2;
  for (const auto& t : terms)
    max_pow = std::max(max_pow, 2 * t.s + 2 * (t.s + 1) * M);
  std::vector<Complex> epspow(static_cast<size_t>(max_pow) + 1, Complex(0));
  epspow[0] = Complex(1);
  if (eps != Complex(0)) {
    for (int k = 1; k <= max_pow; ++k) epspow[k] = epspow[k - 1] * eps;
  }

  std::vector<Complex> acc(static_cast<size_t>(M) + 1, Complex(0));
  for (const auto& t : terms) {
    const auto& Ar = pow_a[t.r + 1];
    const auto& As = pow_a[t.s + 1];
    const int tr_max = static_cast<int>(Ar.size()) - 1;
    const int ts_max = static_cast<int>(As.size()) - 1;
    for (int n = 0; n <= M; ++n) {
      // Tuples (p, q) with r + |p| - s - |q| = n; |q| = tp, |p| = tp + base.
      const int base = n - t.r + t.s;
      Complex sum(0);
      for (int tp = std::max(0, -base); tp <= ts_max; ++tp) {
        const int tt = tp + base;
        if (tt > tr_max) break;
        const Complex e = epspow[2 * t.s + 2 * tp];
        if (e == Complex(0)) {
          if (eps != Complex(0)) continue;
          break;  // at eps = 0 all tp >= 1 terms vanish
        }
        sum += Ar[tt] * std::conj(As[tp]) * e;
      }
      acc[n] += t.c * sum;
    }
  }

  CoeffSeq out;
  out.R = a.R;
  out.a.assign(static_cast<size_t>(M) + 1, Complex(0));
  const Complex a0m1 = a.a[0] - Complex(1);

  Complex quad0(0);
  for (int k = 1; k <= M; ++k) quad0 += a.a[k] * std::conj(a.a[k]) * epspow[2 * k];
  out.a[0] = Complex(1) - 0.5 * acc[0] - 0.5 * (a0m1 * std::conj(a0m1)) - 0.5 * quad0;

  for (int n = 1; n <= M; ++n) {
    Complex quad(0);
    for (int k = 1; k + n <= M; ++k) quad += a.a[n + k] * std::conj(a.a[k]) * epspow[2 * k];
    out.a[n] = -acc[n] - a.a[n] * (std::conj(a.a[0]) - Complex(1)) - quad;
  }
  return out;
}

ContractionCert radius_certificate(const AnalyticWeight& mu, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("radius_certificate: delta must lie in (0, 1)");
  const double theta = 0.5 * (1.0 + delta);
  double R = 1.0;
  for (int step = 0; step < 40; ++step, R *= 0.5) {
    double s1 = 0.0, s2 = 0.0;
    for (int r = 0; r <= mu.order(); ++r)
      for (int s = 0; s <= mu.order(); ++s) {
        if (r + s == 0) continue;
        const double c = std::abs(mu.normalized_coeff(r, s));
        if (c == 0.0) continue;
        const double base = c * std::pow(R, r + s);
        s1 += base * std::pow(1.0 + delta, r + s + 2);
        s2 += (r + s + 2) * base * std::pow(1.0 + delta, r + s + 1);
      }
    if (s1 <= delta - 0.5 * delta * delta && s2 <= theta - delta)
      return {R, delta, theta};
  }
  throw NoContractionRadius("radius_certificate: no admissible radius on the search grid");
}

SolveResult solve(const AnalyticWeight& mu, double eps, const SolveOptions& opts) {
  if (opts.order < 1) throw std::invalid_argument("solve: order must be >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");
  if (opts.margin < 0) throw std::invalid_argument("solve: margin must be >= 0");

  const ContractionCert cert = radius_certificate(mu, opts.delta);
  const double eps_n = eps / std::sqrt(mu.scale());
  const bool certified = std::abs(eps_n) < cert.R;
  if (!certified && opts.enforce_certificate)
    throw InvalidEps("solve: eps outside the certified contraction radius");

  const int M = opts.order + opts.margin;
  CoeffSeq cur = CoeffSeq::center(M, cert.R);
  int iters = 0;
  double step = 0.0;
  bool converged = false;
  while (iters < opts.max_iter) {
    CoeffSeq next = fixed_point_map(Complex(eps_n), cur, mu);
    ++iters;
    // The weighted norm alone cannot see the top coefficients when R is
    // small, and those converge last (the map is close to triangular), so
    // the sup norm of the step is required to drop below tol as well.
    double sup = 0.0;
    for (int n = 0; n <= M; ++n) sup = std::max(sup, std::abs(next.a[n] - cur.a[n]));
    step = std::max(next.distance(cur), sup);
    cur = std::move(next);
    if (!std::isfinite(step))
      throw NotConverged(iters, "solve: iteration diverged");
    if (step < opts.tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NotConverged(iters, "solve: fixed-point iteration did not reach tol");

  // Back to the original scale: f(w) = f_normalized(w / sqrt(scale)).
  SolveResult result;
  result.cert = cert;
  result.iters = iters;
  result.certified = certified;
  result.final_step = step;
  result.a.R = cert.R;
  result.a.a.assign(static_cast<size_t>(opts.order) + 1, Complex(0));
  const double root_scale = std::sqrt(mu.scale());
  double factor = 1.0 / root_scale;
  for (int n = 0; n <= opts.order; ++n) {
    result.a.a[n] = cur.a[n] * factor;
    factor /= root_scale;
  }
  return result;
}

Series1 limit_map(const AnalyticWeight& mu) {
  const double root_scale = std::sqrt(mu.scale());
  std::vector<Complex> b(static_cast<size_t>(mu.order()) + 1);
  for (int r = 0; r <= mu.order(); ++r) b[r] = root_scale * mu.normalized_coeff(r, 0);
  return Series1::normalized(std::move(b));
}

Series1 riemann_map(const AnalyticWeight& mu, double eps, const SolveOptions& opts) {
  const SolveResult res = solve(mu, eps, opts);
  return revert(Series1::normalized(res.a.a), opts.order);
}

double boundary_residual(const AnalyticWeight& mu, double eps, const CoeffSeq& a, int K) {
  if (K < 8) throw std::invalid_argument("boundary_residual: K must be >= 8");
  if (eps == 0.0) throw std::invalid_argument("boundary_residual: eps must be nonzero");
  const double eps2 = eps * eps;
  double worst = 0.0;
  for (int j = 0; j < K; ++j) {
    const Complex u = std::polar(1.0, 2.0 * std::numbers::pi * j / K);
    const double v = mu.eval(a.eval(eps * u));
    worst = std::max(worst, std::abs(v - eps2) / eps2);
  }
  return worst;
}

AnalyticWeight weight_from_cutoff(const CutoffSpec& lam, int order) {
  const Jet2 e2 = jet_exp(jet_scale(lam.eta(), Complex(2)), order);
  std::vector<std::tuple<int, int, Complex>> coeffs;
  for (int r = 0; r <= order; ++r)
    for (int s = 0; s <= order; ++s) {
      const Complex v = e2.at(r, s);
      if (v != Complex(0)) coeffs.emplace_back(r, s, v);
    }
  return AnalyticWeight::from_coeffs(order, coeffs);
}

}  // namespace asymap
