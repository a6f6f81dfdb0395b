#pragma once

#include <vector>

#include "asymap/cutoff.hpp"
#include "asymap/residue.hpp"

namespace asymap {

struct PairingOptions {
  double quad_target = 1e-9;  // absolute quadrature target per value
  int theta_init = 64;
  int theta_max = 2048;
  int radial_points = 24;
  int max_refine = 5;
  // Fit I0 log eps + I1 + I2 eps instead of the affine model when the grid
  // allows it; sharpens I0/I1 against the O(eps) remainder.
  bool fit_remainder = true;
  int threads = 1;
};

// Regularized pairing (1/2 pi i) integral of alpha wedge conj(beta) over
// lambda >= eps, evaluated in polar coordinates with the inner boundary from
// level-set root finding.
Complex regularized_pairing(const Form1D& alpha, const HoloForm& beta,
                            const CutoffSpec& lam, double eps,
                            const PairingOptions& opts = {});

// Fitted asymptotics of the regularized pairing on a decreasing eps grid:
// value(eps) ~ I0 log eps + I1 (+ I2 eps).  I1 is defined operationally as
// the fitted intercept over the configured grid; only differences of I1
// between cutoffs carry meaning.
struct PairingFit {
  Complex I0, I1;
  Complex I2;               // remainder coefficient (0 unless fitted)
  bool remainder_used = false;
  std::vector<double> grid;
  std::vector<Complex> values;
  double fit_residual = 0.0;    // max deviation from the affine-in-log-eps model
  double remainder_slope = 0.0; // log-log slope of the affine residuals (0 if flat)
  Complex I0_predicted;         // 2 res_dolbeault(alpha) conj(Res beta)
};

PairingFit divergence_fit(const Form1D& alpha, const HoloForm& beta,
                          const CutoffSpec& lam, const std::vector<double>& grid,
                          const PairingOptions& opts = {});

// Finite-part shift under lambda -> e^phi lambda, measured against the
// residue prediction -2 res_dolbeault(phi alpha) conj(Res beta).
struct VariationResult {
  Complex measured;
  Complex predicted;
  PairingFit base;
  PairingFit shifted;
};

VariationResult variation(const Form1D& alpha, const HoloForm& beta,
                          const CutoffSpec& lam, const Jet2& phi,
                          const std::vector<double>& grid,
                          const PairingOptions& opts = {});

// (-1/2 pi i) integral of gamma conj(beta) over the positively oriented
// level curve lambda = eps; converges to
// 2 res_log_pairing(gamma, lam) conj(Res beta) as eps -> 0.
Complex boundary_pairing(const FunctionWithPole& gamma, const HoloForm& beta,
                         const CutoffSpec& lam, double eps,
                         const PairingOptions& opts = {});

// Both sides of the Stokes identity at fixed eps for the compactly
// supported form chi gamma: the interior pairing of d(chi gamma) and the
// level-curve integral of gamma.  rho is the window radius attached to
// gamma.
struct StokesResult {
  Complex interior;
  Complex boundary;
};

StokesResult stokes_consistency(const FunctionWithPole& gamma, const HoloForm& beta,
                                const CutoffSpec& lam, double eps, double rho = 1.0,
                                const PairingOptions& opts = {});

// eps_k = 0.02 * 2^{-k}, k = 0..5.
std::vector<double> default_eps_grid();

}  // namespace asymap
