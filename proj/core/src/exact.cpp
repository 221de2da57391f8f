#include <sourcelab/exact.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace sourcelab {

double cole_hopf_solution(const InitialCondition& phi0, double x, double t,
                          const ModelParams& model, const QuadratureSpec& tol) {
  model.validate();
  if (!(t > 0.0)) throw std::invalid_argument("cole_hopf_solution: requires t > 0");
  const double c = model.wave_speed;
  const double gw = 2.0 * std::sqrt(t);  // heat-kernel width exp(-u^2/4t)
  const std::array<GaussianFeature, 3> features{{
      {x - c * t, gw},
      {x + c * t, gw},
      {0.0, std::max(phi0.window_width(), 8.0 / c)},
  }};
  const QuadratureSpec spec =
      QuadratureSpec::covering(features, tol.abs_tol, tol.rel_tol, tol.n_sigmas);
  const double mass = integrate_line(
      [&](double y) { return greens(x, y, t, model) * std::expm1(phi0.value(y)); }, spec);
  if (1.0 + mass <= 0.0)
    throw std::domain_error("cole_hopf_solution: log argument not positive "
                            "(initial data too large or too negative for this branch)");
  return std::log1p(mass);
}

double asymptotic_constant(const InitialCondition& phi0, const ModelParams& model,
                           const QuadratureSpec& tol) {
  model.validate();
  const double c = model.wave_speed;
  const std::array<GaussianFeature, 1> features{{{0.0, std::max(phi0.window_width(), 8.0 / c)}}};
  const QuadratureSpec spec =
      QuadratureSpec::covering(features, tol.abs_tol, tol.rel_tol, tol.n_sigmas);
  const double mass = integrate_line(
      [&](double y) { return adjoint_eigenfunction(y, model) * std::expm1(phi0.value(y)); },
      spec);
  const double arg = 1.0 + 0.25 * c * mass;
  if (arg <= 0.0) throw std::domain_error("asymptotic_constant: log argument not positive");
  return std::log(arg);
}

namespace {

double require_log_domain(double p, double b) {
  const double arg = 1.0 + p * b;
  if (arg <= 0.0)
    throw std::domain_error("phi_star: 1 + p*B(x,t) must be positive (p too negative)");
  return arg;
}

}  // namespace

double phi_star(double x, double t, double p, const ModelParams& model) {
  const double b = bfield(x, t, model);
  require_log_domain(p, b);
  return std::log1p(p * b);
}

double phi_star_x(double x, double t, double p, const ModelParams& model) {
  const double b = bfield(x, t, model);
  return p * bfield_x(x, t, model) / require_log_domain(p, b);
}

double phi_star_t(double x, double t, double p, const ModelParams& model) {
  const double b = bfield(x, t, model);
  return p * bfield_t(x, t, model) / require_log_domain(p, b);
}

}  // namespace sourcelab
