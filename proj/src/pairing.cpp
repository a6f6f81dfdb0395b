#include "asymap/pairing.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include "asymap/errors.hpp"
#include "asymap/numerics.hpp"
#include "asymap/quadrature.hpp"

namespace asymap {

namespace {

constexpr double kPi = std::numbers::pi;

// Area integral of f over {lambda >= eps} intersected with |z| <= rho, with
// the theta grid doubled until two passes agree to quad_target.
Complex region_integral(const std::function<Complex(Complex)>& f,
                        const CutoffSpec& lam, double eps, double rho,
                        const PairingOptions& opts) {
  AnnulusOptions aopts;
  aopts.radial_points = opts.radial_points;
  aopts.radial_knots = {0.5 * rho};
  aopts.abs_target = 0.5 * opts.quad_target;
  aopts.max_refine = opts.max_refine;

  int K = opts.theta_init;
  LevelCurve curve = level_curve(lam, eps, K);
  for (double r : curve.radius)
    if (r > 0.5 * rho)
      throw LevelSetNotBracketed(
          "regularized_pairing: level curve leaves the window core (eps too large)");
  Complex v = annulus_integrate(f, curve, rho, aopts);
  while (2 * K <= opts.theta_max) {
    K *= 2;
    curve = level_curve(lam, eps, K);
    const Complex v2 = annulus_integrate(f, curve, rho, aopts);
    if (std::abs(v2 - v) <= opts.quad_target) return v2;
    v = v2;
  }
  throw QuadratureBudgetExceeded("regularized_pairing: theta refinement budget exhausted");
}

std::vector<Complex> grid_values(const std::function<Complex(double)>& one,
                                 const std::vector<double>& grid, int threads) {
  std::vector<Complex> values(grid.size());
  if (threads > 1) {
    std::vector<std::future<Complex>> futs(grid.size());
    for (size_t k = 0; k < grid.size(); ++k)
      futs[k] = std::async(std::launch::async, one, grid[k]);
    for (size_t k = 0; k < grid.size(); ++k) values[k] = futs[k].get();
  } else {
    for (size_t k = 0; k < grid.size(); ++k) values[k] = one(grid[k]);
  }
  return values;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.size() < 3)
    throw FitIllConditioned("divergence_fit: need at least 3 grid points");
  for (size_t k = 0; k + 1 < grid.size(); ++k) {
    const double ratio = grid[k + 1] / grid[k];
    if (!(grid[k] > 0.0) || !(ratio >= 0.25 && ratio <= 1.0 / 1.5))
      throw std::invalid_argument(
          "divergence_fit: grid must decrease with ratio in [1/4, 1/1.5]");
  }
  if (!(grid.back() > 0.0))
    throw std::invalid_argument("divergence_fit: grid values must be positive");
}

}  // namespace

std::vector<double> default_eps_grid() {
  std::vector<double> g(6);
  double e = 0.02;
  for (auto& v : g) {
    v = e;
    e *= 0.5;
  }
  return g;
}

Complex regularized_pairing(const Form1D& alpha, const HoloForm& beta,
                            const CutoffSpec& lam, double eps,
                            const PairingOptions& opts) {
  if (!(eps > 0.0)) throw std::invalid_argument("regularized_pairing: eps must be positive");
  const int m = alpha.m;
  auto f = [&](Complex z) {
    return alpha.numerator(z) * std::conj(beta.b.eval(z)) /
           (std::pow(z, m) * std::conj(z));
  };
  // alpha wedge conj(beta) = F dz wedge dzbar and dz wedge dzbar = -2i dA,
  // so (1/2 pi i) integral = (-1/pi) * area integral.
  return region_integral(f, lam, eps, alpha.rho, opts) * (-1.0 / kPi);
}

PairingFit divergence_fit(const Form1D& alpha, const HoloForm& beta,
                          const CutoffSpec& lam, const std::vector<double>& grid,
                          const PairingOptions& opts) {
  validate_grid(grid);

  PairingFit fit;
  fit.grid = grid;
  fit.values = grid_values(
      [&](double eps) { return regularized_pairing(alpha, beta, lam, eps, opts); },
      grid, opts.threads);

  const size_t n = grid.size();
  std::vector<double> log_eps(n), ones(n, 1.0), eps_col(n);
  for (size_t k = 0; k < n; ++k) {
    log_eps[k] = std::log(grid[k]);
    eps_col[k] = grid[k];
  }

  const auto affine = lstsq({log_eps, ones}, fit.values);
  fit.I0 = affine[0];
  fit.I1 = affine[1];
  fit.fit_residual = fit_residual({log_eps, ones}, affine, fit.values);

  // Slope of log|residual| against log eps, over residuals clear of the
  // quadrature noise floor; flat (fully affine) data reports 0.
  {
    const double floor = std::max(50.0 * opts.quad_target, 1e-13);
    std::vector<double> xs, ys;
    for (size_t k = 0; k < n; ++k) {
      Complex model = fit.I0 * log_eps[k] + fit.I1;
      const double r = std::abs(fit.values[k] - model);
      if (r > floor) {
        xs.push_back(log_eps[k]);
        ys.push_back(std::log(r));
      }
    }
    if (xs.size() >= 2) {
      std::vector<double> ones2(xs.size(), 1.0);
      fit.remainder_slope = lstsq({xs, ones2}, ys)[0];
    }
  }

  if (opts.fit_remainder && n >= 4) {
    const auto refined = lstsq({log_eps, ones, eps_col}, fit.values);
    fit.I0 = refined[0];
    fit.I1 = refined[1];
    fit.I2 = refined[2];
    fit.remainder_used = true;
  }

  fit.I0_predicted = 2.0 * res_dolbeault(alpha).value * std::conj(beta.residue());
  return fit;
}

VariationResult variation(const Form1D& alpha, const HoloForm& beta,
                          const CutoffSpec& lam, const Jet2& phi,
                          const std::vector<double>& grid,
                          const PairingOptions& opts) {
  VariationResult out;
  out.base = divergence_fit(alpha, beta, lam, grid, opts);
  out.shifted = divergence_fit(alpha, beta, lam.scaled(phi), grid, opts);
  out.measured = out.shifted.I1 - out.base.I1;
  const Form1D phi_alpha(alpha.m, jet_mul(phi, alpha.P), alpha.rho);
  out.predicted = -2.0 * res_dolbeault(phi_alpha).value * std::conj(beta.residue());
  return out;
}

Complex boundary_pairing(const FunctionWithPole& gamma, const HoloForm& beta,
                         const CutoffSpec& lam, double eps,
                         const PairingOptions& opts) {
  if (!(eps > 0.0)) throw std::invalid_argument("boundary_pairing: eps must be positive");
  auto pass = [&](int K) {
    const LevelCurve curve = level_curve(lam, eps, K);
    Complex acc(0);
    for (int j = 0; j < K; ++j) {
      const double th = curve.theta[j];
      const double r = curve.radius[j];
      const Complex z = std::polar(r, th);
      // r'(theta) from implicit differentiation of r e^{eta} = eps.
      const Complex w = z * lam.eta_dz(z);
      const double rp = 2.0 * r * w.imag() / (1.0 + 2.0 * w.real());
      const Complex dzbar = (rp - Complex(0, 1) * r) * std::exp(Complex(0, -th));
      acc += gamma.eval(z) * std::conj(beta.b.eval(z)) / std::conj(z) * dzbar;
    }
    return acc * (2.0 * kPi / K) / (-2.0 * kPi * Complex(0, 1));
  };
  int K = opts.theta_init;
  Complex v = pass(K);
  while (2 * K <= opts.theta_max) {
    K *= 2;
    const Complex v2 = pass(K);
    if (std::abs(v2 - v) <= opts.quad_target) return v2;
    v = v2;
  }
  throw QuadratureBudgetExceeded("boundary_pairing: theta refinement budget exhausted");
}

StokesResult stokes_consistency(const FunctionWithPole& gamma, const HoloForm& beta,
                                const CutoffSpec& lam, double eps, double rho,
                                const PairingOptions& opts) {
  StokesResult out;
  const FunctionWithPole dgamma = gamma.partial_z();
  const double rho2 = rho * rho;
  // d(chi gamma) = [chi gamma' + chi'(|z|^2/rho^2) (zbar/rho^2) gamma] dz;
  // the window term realizes the compact support of the potential.
  auto f = [&](Complex z) {
    const double t = std::norm(z) / rho2;
    Complex g = window(t) * dgamma.eval(z);
    const double wd = window_deriv(t);
    if (wd != 0.0) g += wd * std::conj(z) / rho2 * gamma.eval(z);
    return g * std::conj(beta.b.eval(z)) / std::conj(z);
  };
  out.interior = region_integral(f, lam, eps, rho, opts) * (-1.0 / kPi);
  out.boundary = boundary_pairing(gamma, beta, lam, eps, opts);
  return out;
}

}  // namespace asymap
