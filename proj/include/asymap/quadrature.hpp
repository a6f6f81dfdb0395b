#pragma once

#include <functional>
#include <vector>

#include "asymap/cutoff.hpp"
#include "asymap/jet.hpp"

namespace asymap {

// Polar samples of the level curve lambda(z) = eps: theta_j -> r_j with
// lambda(r_j e^{i theta_j}) = eps to 1e-13 relative.  K is a power of two,
// at least 64.
struct LevelCurve {
  double eps = 0.0;
  std::vector<double> theta;
  std::vector<double> radius;
  int count() const { return static_cast<int>(theta.size()); }
};

// The unique small r with r e^{eta(r e^{i theta})} = eps; bisection bracket
// expanded from eps, Newton polish.
double levelset_radius(const CutoffSpec& lam, double theta, double eps);

LevelCurve level_curve(const CutoffSpec& lam, double eps, int K);

enum class CircleMode {
  Angle,  // integral of f dtheta
  Dz      // integral of f dz
};

// Trapezoid rule on |z| = r starting from K points; K doubles until two
// successive values agree to 1e-12 or the budget is exhausted.  Spectrally
// accurate (exact on Fourier modes |n| < K/2).
Complex circle_integrate(const std::function<Complex(Complex)>& f, double r, int K,
                         CircleMode mode);
// Fixed-K variant (no refinement), used where the node count is prescribed.
Complex circle_sum(const std::function<Complex(Complex)>& f, double r, int K,
                   CircleMode mode);

struct AnnulusOptions {
  int radial_points = 24;           // Gauss-Legendre points per panel
  std::vector<double> radial_knots; // forced panel boundaries (window edges)
  double abs_target = 1e-9;
  int max_refine = 5;               // 0 disables the convergence check
  int base_level = 0;               // panel counts scale with 2^level
};

// Integral of f over the region between the level curve and |z| = outer_rho
// with respect to the polar area element r dr dtheta.  Trapezoid in theta on
// the curve's nodes, composite Gauss-Legendre in r with panels graded
// geometrically toward the inner boundary.
Complex annulus_integrate(const std::function<Complex(Complex)>& f,
                          const LevelCurve& inner, double outer_rho,
                          const AnnulusOptions& opts = {});

// Gauss-Legendre nodes/weights on [-1, 1] (cached per point count).
const std::vector<double>& gauss_legendre_nodes(int n);
const std::vector<double>& gauss_legendre_weights(int n);

}  // namespace asymap
