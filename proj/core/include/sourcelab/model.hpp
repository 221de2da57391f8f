#pragma once

#include <cmath>
#include <stdexcept>

namespace sourcelab {

// Parameters of the advection-diffusion model
//
//   phi_t + c tanh(cx/2) phi_x = phi_xx + phi_x^2,   c > 0.
//
// The characteristic speeds at x -> +-infinity are +-c, so transport always
// points away from x = 0.
struct ModelParams {
  double wave_speed = 1.0;

  void validate() const {
    if (!std::isfinite(wave_speed) || wave_speed <= 0.0)
      throw std::invalid_argument("ModelParams: wave_speed must be finite and > 0");
  }
};

// Parameters of the spatio-temporal template weights theta1/theta2: pairs of
// Gaussians of width sqrt(width_scale*(1+t)) moving with speeds +-c, damped
// by (1+t)^-gamma and (1+t)^-(gamma+1/2) respectively.
struct TemplateParams {
  double gamma = 0.45;        // temporal decay exponent, must lie in (0, 1/2)
  double width_scale = 64.0;  // Gaussian width scale, must be >= 8

  void validate() const {
    if (!std::isfinite(gamma) || gamma <= 0.0 || gamma >= 0.5)
      throw std::invalid_argument("TemplateParams: gamma must lie in (0, 1/2)");
    if (!std::isfinite(width_scale) || width_scale < 8.0)
      throw std::invalid_argument("TemplateParams: width_scale must be >= 8");
  }
};

}  // namespace sourcelab
