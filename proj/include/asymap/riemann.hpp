#pragma once

#include <tuple>
#include <vector>

#include "asymap/cutoff.hpp"
#include "asymap/jet.hpp"
#include "asymap/series.hpp"

namespace asymap {

// Real-analytic weight mu(z) = sum_{0 <= r,s <= N} c_{r,s} z^{r+1} zbar^{s+1}
// with Hermitian coefficients and c_{0,0} > 0.  Stored internally with
// c_{0,0} rescaled to 1; the original c_{0,0} is kept in scale().  The level
// sets mu(z) < eps^2 are the domains whose Riemann maps the solver produces.
class AnalyticWeight {
 public:
  // The flat weight |z|^2.
  explicit AnalyticWeight(int order = 0);

  // coeffs is a list of (r, s, value); missing Hermitian partners are
  // rejected, not filled in.
  static AnalyticWeight from_coeffs(int order,
                                    const std::vector<std::tuple<int, int, Complex>>& coeffs);
  // |h|^2 for a normalized holomorphic series h: c_{r,s} = h_r conj(h_s).
  static AnalyticWeight from_holomorphic(const Series1& h);
  // psi(|z|^2) for psi(t) = sum_k psi_k t^{k+1}, psi_0 > 0: c_{k,k} = psi_k.
  static AnalyticWeight from_radial_profile(const std::vector<double>& psi);

  int order() const { return order_; }
  double scale() const { return scale_; }
  // Normalized-frame coefficient (c_{0,0} = 1).
  Complex normalized_coeff(int r, int s) const;
  // Original-scale coefficient.
  Complex coeff(int r, int s) const { return scale_ * normalized_coeff(r, s); }
  // Original-scale mu(z); real by Hermitian symmetry.
  double eval(Complex z) const;

 private:
  int order_;
  double scale_;
  std::vector<Complex> c_;  // normalized table, row-major
};

// Coefficient sequence (a_0, ..., a_N) of an inverse Riemann map candidate
// f(w) = w (a_0 + a_1 w + ... + a_N w^N), with the weight radius R of the
// l^1 norm ||a||_R = sum |a_n| R^n it lives in.
struct CoeffSeq {
  std::vector<Complex> a;
  double R = 1.0;

  int order() const { return static_cast<int>(a.size()) - 1; }
  Complex eval(Complex w) const;  // f(w)
  // ||this - other||_R in this sequence's weight.
  double distance(const CoeffSeq& other) const;
  // ||this - a_center||_R where a_center = (1, 0, 0, ...).
  double distance_to_center() const;
  static CoeffSeq center(int order, double R);
};

// Witness that the fixed-point map contracts: for |eps| < R the map sends
// the delta-ball around (1,0,0,...) in l^1_R into itself and its
// differential has norm <= theta there.
struct ContractionCert {
  double R = 0.0;
  double delta = 0.0;
  double theta = 0.0;
};

struct SolveOptions {
  int order = 16;
  double tol = 1e-12;
  int max_iter = 200;
  double delta = 0.5;
  // Extra coefficients carried internally beyond `order`; the truncated
  // fixed point differs from the infinite system by terms suppressed like
  // eps^{2(margin+1)}, so the returned coefficients are accurate even at the
  // top index.
  int margin = 12;
  // When set, reject eps outside the certified radius instead of attempting
  // the iteration and letting convergence/residual checks judge it.
  bool enforce_certificate = false;
};

struct SolveResult {
  CoeffSeq a;             // original scale, truncated to opts.order
  ContractionCert cert;   // certificate in the normalized frame
  int iters = 0;
  bool certified = false; // |eps| / sqrt(scale) < cert.R
  double final_step = 0.0;
};

// One application of the fixed-point map a -> F(eps; a) in the weight's
// normalized frame.  The multi-index sums are evaluated through full powers
// of A(x) = sum a_k x^k, which enumerates exactly the tuples with entries
// <= a.order(); eps enters only through even powers, with 0^0 = 1 so that
// eps = 0 keeps precisely the s = |q| = 0 terms.
CoeffSeq fixed_point_map(Complex eps, const CoeffSeq& a, const AnalyticWeight& mu);

// Largest R on the halving grid from 1.0 (40 steps) satisfying both
// contraction inequalities with theta = (1+delta)/2.
ContractionCert radius_certificate(const AnalyticWeight& mu, double delta);

// Banach iteration from (1,0,...) until ||a_new - a_old||_R < tol; returns
// the coefficients of the inverse Riemann map of mu(z) < eps^2 in the
// original scale.
SolveResult solve(const AnalyticWeight& mu, double eps, const SolveOptions& opts = {});

// The eps -> 0 limit of the (forward) Riemann map: coefficients
// c_{r,0} / sqrt(c_{0,0}) in the original scale.
Series1 limit_map(const AnalyticWeight& mu);

// Forward normalized Riemann map at eps: reversion of solve().
Series1 riemann_map(const AnalyticWeight& mu, double eps, const SolveOptions& opts = {});

// max over K equispaced u on the unit circle of |mu(f(eps u)) - eps^2| / eps^2:
// a-posteriori check that the solved map sends |w| = eps to the level set.
double boundary_residual(const AnalyticWeight& mu, double eps, const CoeffSeq& a,
                         int K = 256);

// Weight lambda^2 = |z|^2 e^{2 eta} of a cut-off function, as an
// AnalyticWeight of the given order.
AnalyticWeight weight_from_cutoff(const CutoffSpec& lam, int order);

}  // namespace asymap
