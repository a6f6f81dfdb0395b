#include "asymap/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace asymap {

CutoffSpec::CutoffSpec(const Jet2& eta) : eta_(eta), eta_dz_(jet_dz(eta)) {
  if (!is_hermitian(eta, 1e-12))
    throw std::invalid_argument("CutoffSpec: eta must be real-valued (Hermitian coefficients)");
  eta_.set_real_valued(true);
}

double CutoffSpec::eval(Complex z) const {
  return std::abs(z) * std::exp(eval_eta(z));
}

}  // namespace asymap
