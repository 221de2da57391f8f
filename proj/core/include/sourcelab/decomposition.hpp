#pragma once

#include <span>
#include <vector>

#include <sourcelab/initial_condition.hpp>
#include <sourcelab/model.hpp>
#include <sourcelab/quadrature.hpp>
#include <sourcelab/solver.hpp>

namespace sourcelab {

// Template weights encoding the expected spatio-temporal decay of the
// remainder v and its slope v_x: pairs of outgoing Gaussians damped by
// (1+t)^-gamma and (1+t)^-(gamma+1/2).
double theta1(double x, double t, const ModelParams& model, const TemplateParams& tmpl);
double theta2(double x, double t, const ModelParams& model, const TemplateParams& tmpl);

// Normalization of the decomposition phi = phi*(.,.,p) + v at t = 0: the root
// p0 of F(p) = integral psi(y) [phi0(y) - log(1 + p B(y,0))] dy, found by
// Newton iteration with the analytic derivative and a bisection fallback.
// Throws std::invalid_argument when no root exists in the fallback bracket
// (data outside the small-amplitude regime).
double solve_p0(const InitialCondition& phi0, const ModelParams& model,
                const QuadratureSpec& tol);

// Nonlinear coupling term
//   N = 2 p v_x B_x / (1 + p B) + pdot (B/(1 + cp/4) - B/(1 + p B)).
double nonlinearity(double x, double t, double p, double pdot, double vx,
                    const ModelParams& model);

// Solves the implicit scalar relation
//   pdot = (1 + cp/4) * integral psi (v_y^2 + N(y,t,p,pdot,v_y)) dy
// in closed form (N is affine in pdot). Throws SolverError when the affine
// coefficient makes the relation ill-conditioned (|1 - K| < 1/2).
double pdot_solve(double p, const Field& v, const Field& vx, double t, const ModelParams& model);

struct DecompositionState {
  std::vector<double> times;
  std::vector<double> p;
  std::vector<double> pdot;
  std::vector<double> h1;            // running sup of |v|/theta1 + |v_x|/theta2
  std::vector<double> h2;            // running sup of |pdot| e^{c^2 t / width_scale}
  std::vector<double> sup_v_ratio;   // instantaneous sup |v|/theta1
  std::vector<double> sup_vx_ratio;  // instantaneous sup |v_x|/theta2
  std::vector<double> psi_v;         // diagnostic: integral psi * v dy
  std::vector<double> q;             // integral psi (v_y^2 + N) dy at snapshots
  std::vector<double> q_mid;         // same at interval midpoints (one per interval)
  std::vector<Field> v_fields;
  std::vector<Field> vx_fields;
  double epsilon = 0.0;              // weighted C1 norm of the initial data
};

// Runs the full decomposition along a solver trajectory: p(0) from solve_p0,
// p advanced between snapshots by classical RK4 on pdot_solve (the trajectory
// is interpolated linearly in time inside each interval), v and v_x extracted
// on the grid (4th-order differences), h-norms accumulated as running sups.
DecompositionState evolve_decomposition(std::span<const Snapshot> trajectory,
                                        const InitialCondition& phi0, const ModelParams& model,
                                        const TemplateParams& tmpl, const QuadratureSpec& tol);

// Both sides of the integrated form of the p-equation,
//   log(1 + c p(t)/4) - log(1 + c p0/4) = (c/4) * int_0^t int psi (v_y^2 + N) dy ds,
// the right-hand side evaluated independently by composite Simpson over the
// stored q series.
struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};
IdentityCheck p_integral_identity(const DecompositionState& state, const ModelParams& model);

}  // namespace sourcelab
