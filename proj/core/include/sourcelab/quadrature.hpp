#pragma once

#include <functional>
#include <span>

#include <sourcelab/errors.hpp>
#include <sourcelab/grid.hpp>

namespace sourcelab {

// A localized feature of an integrand: it decays at least like
// exp(-((y - center)/width)^2) away from `center`.
struct GaussianFeature {
  double center = 0.0;
  double width = 1.0;
};

// Truncated-window quadrature over the real line. The window is
// [center - n_sigmas*width, center + n_sigmas*width]; with n_sigmas >= 8 the
// truncated tail of a unit-width-normalized Gaussian is below exp(-64).
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double center = 0.0;
  double width = 1.0;
  double n_sigmas = 8.0;

  double lo() const { return center - n_sigmas * width; }
  double hi() const { return center + n_sigmas * width; }

  // Smallest window covering every feature's own n_sigmas window.
  static QuadratureSpec covering(std::span<const GaussianFeature> features,
                                 double abs_tol = 1e-10, double rel_tol = 1e-9,
                                 double n_sigmas = 8.0);

  QuadratureSpec with_tols(double abs, double rel) const {
    QuadratureSpec s = *this;
    s.abs_tol = abs;
    s.rel_tol = rel;
    return s;
  }

  void validate() const;
};

enum class QuadRule { gauss_legendre, simpson };

// Integrates f over the spec's window by panel-doubling composite
// Gauss-Legendre (or composite Simpson), refined until two successive
// estimates differ by less than max(abs_tol, rel_tol*|I|). Summation order is
// fixed, so results are bit-reproducible. Throws QuadratureError (carrying
// the last two estimates) if the refinement budget is exhausted.
double integrate_line(const std::function<double(double)>& f, const QuadratureSpec& spec,
                      QuadRule rule = QuadRule::gauss_legendre);

// Trapezoid rule over the field's grid.
double integrate_grid(const Field& field);

}  // namespace sourcelab
