#pragma once

#include <vector>

#include <sourcelab/grid.hpp>
#include <sourcelab/initial_condition.hpp>
#include <sourcelab/model.hpp>

namespace sourcelab {

enum class Scheme { imex_cn, explicit_rk2 };
enum class BoundaryCondition { dirichlet_zero, neumann_zero };

struct SolverConfig {
  double dt = 0.005;
  double t_final = 10.0;
  Scheme scheme = Scheme::imex_cn;
  BoundaryCondition boundary = BoundaryCondition::dirichlet_zero;
  std::vector<double> snapshot_times;  // rounded to the nearest step
  double boundary_guard_tol = 1e-8;    // max |phi| allowed on the outer 5% of the grid
  // Width scale in the domain-size guard L >= c*T + 8*sqrt(scale*(T+1)).
  // 1 covers the solution's own heat-kernel spread; decomposition runs set it
  // to the template width_scale so the weight tails also fit the domain.
  double guard_width_scale = 1.0;

  void validate(const Grid& grid, const ModelParams& model) const;
};

struct Snapshot {
  double time;
  Field field;
};

// One time step of the nonlinear equation. Diffusion is Crank-Nicolson
// (tridiagonal solve); the advection term -c tanh(cx/2) phi_x (second-order
// upwind) and phi_x^2 (centered) are explicit, advanced with a two-stage
// predictor-corrector so the step is second order in time.
Field step(const Field& phi, double t, const SolverConfig& config, const ModelParams& model);

// Advances phi0 to t_final, returning snapshots at the requested times
// (always sorted, deduplicated, rounded to steps). Monitors max|phi| on the
// outer 5% of the grid and throws SolverError on boundary contamination or
// non-finite values.
std::vector<Snapshot> solve(const InitialCondition& phi0, const Grid& grid,
                            const SolverConfig& config, const ModelParams& model);

}  // namespace sourcelab
