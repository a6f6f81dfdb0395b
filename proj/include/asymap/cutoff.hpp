#pragma once

#include "asymap/jet.hpp"

namespace asymap {

// Cut-off function lambda(z) = |z| * exp(eta(z, zbar)) with eta a
// real-valued jet, so lambda^2 = |z|^2 e^{2 eta} is real analytic.  The
// radial case lambda = |z| is eta = 0.
class CutoffSpec {
 public:
  CutoffSpec() : eta_(Jet2::constant(Complex(0))), eta_dz_(jet_dz(eta_)) {}
  explicit CutoffSpec(const Jet2& eta);

  static CutoffSpec radial() { return CutoffSpec(); }

  const Jet2& eta() const { return eta_; }
  double eval_eta(Complex z) const { return jet_eval(eta_, z).real(); }
  double eval(Complex z) const;  // lambda(z)
  Complex eta_dz(Complex z) const { return jet_eval(eta_dz_, z); }
  const Jet2& eta_dz_jet() const { return eta_dz_; }

  // lambda scaled by exp(phi) for a real-valued jet phi.
  CutoffSpec scaled(const Jet2& phi) const { return CutoffSpec(jet_add(eta_, phi)); }

 private:
  Jet2 eta_;
  Jet2 eta_dz_;
};

}  // namespace asymap
