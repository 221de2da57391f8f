#pragma once

#include <sourcelab/initial_condition.hpp>
#include <sourcelab/kernels.hpp>
#include <sourcelab/quadrature.hpp>

namespace sourcelab {

// Exact solutions of the nonlinear equation via the substitution
// w = e^phi - 1, which maps it onto the linearized equation.

// phi(x,t) = log(1 + integral of greens(x,y,t) * (e^{phi0(y)} - 1) dy).
// Exact up to quadrature error; requires t > 0. Throws std::domain_error if
// the argument of the logarithm is not positive (data outside this branch).
double cole_hopf_solution(const InitialCondition& phi0, double x, double t,
                          const ModelParams& model, const QuadratureSpec& tol);

// Pointwise t -> infinity limit of cole_hopf_solution:
//   log(1 + (c/4) * integral of psi(y) * (e^{phi0(y)} - 1) dy).
double asymptotic_constant(const InitialCondition& phi0, const ModelParams& model,
                           const QuadratureSpec& tol);

// Exact plateau family phi*(x,t,p) = log(1 + p B(x,t)) and its first
// partials. B solves the linearized equation, so phi*_t is computed from the
// spatial operator applied to B rather than by time differencing.
double phi_star(double x, double t, double p, const ModelParams& model);
double phi_star_x(double x, double t, double p, const ModelParams& model);
double phi_star_t(double x, double t, double p, const ModelParams& model);

}  // namespace sourcelab
