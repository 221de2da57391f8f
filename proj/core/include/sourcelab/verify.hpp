#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <sourcelab/decomposition.hpp>
#include <sourcelab/initial_condition.hpp>
#include <sourcelab/model.hpp>
#include <sourcelab/quadrature.hpp>

namespace sourcelab {

// Result of one numerical bound/identity check: the sup over a sample set of
// a ratio (or the max of a residual), with the location where it is attained.
struct BoundReport {
  std::string name;
  long samples = 0;
  double value = 0.0;        // sup ratio or max residual
  double log10_value = 0.0;  // finite even when value overflows double
  bool is_residual = false;
  double argmax_x = 0.0;
  double argmax_y = 0.0;  // only meaningful when has_y
  double argmax_t = 0.0;
  bool has_y = false;
  std::string note;
  nlohmann::json extras;

  nlohmann::json to_json() const;
};

struct SamplePoint {
  double x;
  double t;
};

// Residual of the reproduction identity
//   int greens(x,y,t-s) greens(y,0,s+1) dy = greens(x,0,t+1),  0 < s < t.
BoundReport check_semigroup(const ModelParams& model, double t, double s,
                            std::span<const double> x_samples, const QuadratureSpec& tol);

// Ratio |greens_tilde(x,y,t)| sqrt(t) / (exp(-(x-y+ct)^2/4t) + exp(-(x-y-ct)^2/4t))
// over a rectangular sample grid, evaluated in extended precision. The
// Gaussian-pair envelope has no uniform constant (the plateau part of
// greens_tilde decays only exponentially in y), so the unrestricted sup grows
// without bound in the far field; extras carry the light-cone-restricted sup
// (|x-y| <= ct + 8 sqrt(t)), which is finite and refinement-stable.
struct SampleGrid3 {
  double x_lo, x_hi, x_step;
  double y_lo, y_hi, y_step;
  std::vector<double> times;
};
SampleGrid3 default_kernel_decay_grid(int refine = 1);
BoundReport check_kernel_decay_bound(const ModelParams& model, const SampleGrid3& grid);

// Ratio of |N(x,t,p,pdot,vx)| to
//   ((1+t)^{-1/2} |p| |vx| + |p pdot|) (exp(-(x+ct)^2/8(t+1)) + exp(-(x-ct)^2/8(t+1)))
// over samples of (x,t) with small p, pdot and a template-shaped vx.
BoundReport check_nonlinearity_bound(const ModelParams& model, const TemplateParams& tmpl,
                                     int refine = 1);

// Double-layer convolution bounds: the time-history integral of
// |greens_tilde| (resp. |greens_tilde_x|) against
//   theta2^2 + (1+s)^{gamma-1/2} theta1 theta2 + (1+s)^gamma theta1 e^{-c^2 s/M}
// compared to theta1(x,t) (resp. theta2(x,t)).
struct ConvolutionBoundReports {
  BoundReport value;
  BoundReport slope;
};
ConvolutionBoundReports check_history_convolution_bound(const ModelParams& model,
                                                        const TemplateParams& tmpl,
                                                        std::span<const double> times,
                                                        int refine = 1);

// Plateau-difference bounds along a decomposition run: the time integral of
// |e(x,t-s+1) - e(x,t+1)| (resp. its x-derivative) against the psi-weighted
// forcing, compared to (epsilon + h(t)^2) theta1(x,t) (resp. theta2).
ConvolutionBoundReports check_plateau_difference_bound(const DecompositionState& state,
                                                       const ModelParams& model,
                                                       const TemplateParams& tmpl,
                                                       int refine = 1);

// Decay diagnostics of a decomposition run: exponential fit of |p(t)-p(T)|
// on t in [2, T/2], h-norm sups, tail-to-head ratio of h1, and the
// integrated-p identity residual.
BoundReport check_decay_rates(const DecompositionState& state, const ModelParams& model);

// Residual of the integral representation of v(x,t) (history integral with
// greens_tilde, plateau-difference integral, log-difference term, initial
// data term) against the stored remainder, relative to max |v| over samples.
// Empty samples select a default set on the stored trajectory.
BoundReport check_integral_representation(const DecompositionState& state,
                                          const InitialCondition& phi0, const ModelParams& model,
                                          const QuadratureSpec& tol,
                                          std::span<const SamplePoint> samples = {});

// Max deviation from 1 of the profile
//   errfn((-z+ct)/sqrt(4t)) - errfn((-z-ct)/sqrt(4t))
// over the plateau region |z| <= ct - 4 sqrt(t), for each requested time.
BoundReport check_plateau_profile(const ModelParams& model, std::span<const double> times);

// (z, profile(t1), profile(t2)) rows for plotting the spreading plateau.
std::vector<std::array<double, 3>> plateau_profile_samples(const ModelParams& model, double t1,
                                                           double t2);

}  // namespace sourcelab
