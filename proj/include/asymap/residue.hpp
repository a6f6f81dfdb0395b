#pragma once

#include <vector>

#include "asymap/cutoff.hpp"
#include "asymap/jet.hpp"
#include "asymap/series.hpp"

namespace asymap {

// Fixed smooth compactly supported window profile chi(t): identically 1 for
// t <= 1/4, identically 0 for t >= 1, exp-flat smoothstep in between.  The
// same profile is used by every form and integral in the library.
double window(double t);
double window_deriv(double t);

// Smooth (1,0)-form with pole at the origin:
//
//   alpha = P(z, zbar) * chi(|z|^2 / rho^2) * dz / z^m.
//
// The window is 1 near 0, so the germ of alpha at the pole is P dz / z^m.
struct Form1D {
  int m = 1;
  Jet2 P;
  double rho = 1.0;

  Form1D() = default;
  Form1D(int m_, Jet2 P_, double rho_);

  // P(z) * chi(|z|^2 / rho^2).
  Complex numerator(Complex z) const;
};

// Closed meromorphic form beta = b(z) dz / z with b a plain polynomial.
struct HoloForm {
  Series1 b;

  HoloForm() = default;
  explicit HoloForm(Series1 b_);

  Complex residue() const { return b.coeff(0); }
};

// Finite sum of terms sigma_i(z, zbar) / z^{k_i} with smooth (jet) numerators;
// the potentials produced by pole reduction live here.
struct PoleTerm {
  Jet2 sigma;
  int pole = 0;
};

class FunctionWithPole {
 public:
  FunctionWithPole() = default;
  explicit FunctionWithPole(std::vector<PoleTerm> terms);
  static FunctionWithPole single(Jet2 sigma, int pole);

  const std::vector<PoleTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_pole() const;

  Complex eval(Complex z) const;
  // Termwise d/dz (the coefficient of dz in the Dolbeault differential).
  FunctionWithPole partial_z() const;
  // Collect over the common denominator z^{max_pole} into a single form.
  Form1D to_form(double rho) const;

 private:
  std::vector<PoleTerm> terms_;
};

struct ResidueValue {
  Complex value;
  // Set when the input had pole order 0; the residue of a smooth form is 0
  // by construction, returned as a flagged value rather than an error.
  bool pole_free = false;
};

// Residue of a Dolbeault (1,0)-form at the origin: the coefficient of
// z^{m-1} in the numerator jet, computed as (1/(m-1)!) d_z^{m-1} at 0 and
// cross-checked against the direct coefficient read.
ResidueValue res_dolbeault(const Form1D& alpha);

// Contour integral (1/2 pi i) of alpha over |z| = r (default rho / 4); only
// defined for simple poles.  Agrees with res_dolbeault for meromorphic
// numerators; for zbar-dependent numerators the value may depend on r and
// carries no residue semantics.
Complex res_classical(const Form1D& alpha, double r = -1.0, int K = 64);

struct PoleReduction {
  Form1D reduced;             // pole order <= 1 (0 if the data vanished)
  FunctionWithPole potential; // gamma with alpha - reduced = d_z(gamma) dz
};

// Lower the pole order to 1 by subtracting exact forms, using
// g dz/z^{j+1} = (d_z g) dz/(j z^j) - d_z(g/(j z^j)) dz on the numerator
// jets.  The identity is exact on the jet data; the window never enters
// because it is constant near the pole.
PoleReduction pole_reduce(const Form1D& alpha);

// Residue of (d log lambda) * gamma where d log lambda = dz (1/(2z) + d_z eta)
// for lambda = |z| e^eta; the 1/(2z) normalization comes from
// log|z| = (log z + log zbar) / 2.
Complex res_log_pairing(const FunctionWithPole& gamma, const CutoffSpec& lam);

}  // namespace asymap
