#include <sourcelab/solver.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <sourcelab/errors.hpp>

namespace sourcelab {
namespace {

class Stepper {
 public:
  Stepper(const Grid& grid, const SolverConfig& cfg, const ModelParams& model)
      : grid_(grid), cfg_(cfg), n_(grid.points), dx_(grid.dx()), r_(cfg.dt / (2.0 * dx_ * dx_)) {
    const double c = model.wave_speed;
    advection_.resize(n_);
    for (int i = 0; i < n_; ++i) advection_[i] = c * std::tanh(c * grid.x(i) / 2.0);
    if (cfg_.scheme == Scheme::imex_cn) factorize();
    rhs_.resize(n_);
    stage_.resize(n_);
    explicit0_.resize(n_);
    explicit1_.resize(n_);
  }

  void advance(std::vector<double>& phi) {
    if (cfg_.scheme == Scheme::imex_cn) {
      advance_imex(phi);
    } else {
      advance_explicit(phi);
    }
  }

 private:
  bool dirichlet() const { return cfg_.boundary == BoundaryCondition::dirichlet_zero; }

  // Advection + gradient-square terms: -a(x) * upwind(phi_x) + centered(phi_x)^2.
  void explicit_terms(const std::vector<double>& u, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    const int lo = dirichlet() ? 1 : 0;
    const int hi = dirichlet() ? n_ - 2 : n_ - 1;
    for (int i = lo; i <= hi; ++i) {
      const double a = advection_[i];
      double ux_up;
      if (a >= 0.0) {
        if (i >= 2)
          ux_up = (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * dx_);
        else if (i >= 1)
          ux_up = (u[i] - u[i - 1]) / dx_;
        else
          ux_up = (u[i + 1] - u[i]) / dx_;
      } else {
        if (i + 2 < n_)
          ux_up = (-3.0 * u[i] + 4.0 * u[i + 1] - u[i + 2]) / (2.0 * dx_);
        else if (i + 1 < n_)
          ux_up = (u[i + 1] - u[i]) / dx_;
        else
          ux_up = (u[i] - u[i - 1]) / dx_;
      }
      double ux_c;
      if (i >= 1 && i + 1 < n_)
        ux_c = (u[i + 1] - u[i - 1]) / (2.0 * dx_);
      else
        ux_c = 0.0;  // neumann_zero: phi_x vanishes at the boundary
      out[i] = -a * ux_up + ux_c * ux_c;
    }
  }

  // (I + dt/2 * D2) u, with Dirichlet/Neumann closures.
  void diffuse_half(const std::vector<double>& u, std::vector<double>& out) const {
    if (dirichlet()) {
      out[0] = 0.0;
      out[n_ - 1] = 0.0;
    } else {
      out[0] = u[0] + r_ * (2.0 * u[1] - 2.0 * u[0]);
      out[n_ - 1] = u[n_ - 1] + r_ * (2.0 * u[n_ - 2] - 2.0 * u[n_ - 1]);
    }
    for (int i = 1; i + 1 < n_; ++i) out[i] = u[i] + r_ * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
  }

  // Thomas factorization of (I - dt/2 * D2). The matrix is constant over the
  // whole solve, so only the modified upper diagonal is stored.
  void factorize() {
    const int m = dirichlet() ? n_ - 2 : n_;
    lower_.assign(m, -r_);
    diag_.assign(m, 1.0 + 2.0 * r_);
    upper_.assign(m, -r_);
    if (!dirichlet()) {
      upper_[0] = -2.0 * r_;
      lower_[m - 1] = -2.0 * r_;
    }
    cprime_.assign(m, 0.0);
    denom_.assign(m, 0.0);
    denom_[0] = diag_[0];
    cprime_[0] = upper_[0] / denom_[0];
    for (int i = 1; i < m; ++i) {
      denom_[i] = diag_[i] - lower_[i] * cprime_[i - 1];
      cprime_[i] = upper_[i] / denom_[i];
    }
  }

  // Solves (I - dt/2 * D2) x = b in place over the unknowns.
  void thomas_solve(std::vector<double>& b) const {
    const int off = dirichlet() ? 1 : 0;
    const int m = dirichlet() ? n_ - 2 : n_;
    scratch_.resize(m);
    scratch_[0] = b[off] / denom_[0];
    for (int i = 1; i < m; ++i)
      scratch_[i] = (b[off + i] - lower_[i] * scratch_[i - 1]) / denom_[i];
    b[off + m - 1] = scratch_[m - 1];
    for (int i = m - 2; i >= 0; --i) b[off + i] = scratch_[i] - cprime_[i] * b[off + i + 1];
    if (dirichlet()) {
      b[0] = 0.0;
      b[n_ - 1] = 0.0;
    }
  }

  void advance_imex(std::vector<double>& phi) {
    explicit_terms(phi, explicit0_);
    diffuse_half(phi, rhs_);
    for (int i = 0; i < n_; ++i) stage_[i] = rhs_[i] + cfg_.dt * explicit0_[i];
    thomas_solve(stage_);
    explicit_terms(stage_, explicit1_);
    for (int i = 0; i < n_; ++i)
      rhs_[i] += 0.5 * cfg_.dt * (explicit0_[i] + explicit1_[i]);
    thomas_solve(rhs_);
    phi.swap(rhs_);
  }

  void full_rhs(const std::vector<double>& u, std::vector<double>& out) const {
    explicit_terms(u, out);
    const int lo = dirichlet() ? 1 : 0;
    const int hi = dirichlet() ? n_ - 2 : n_ - 1;
    for (int i = lo; i <= hi; ++i) {
      const double left = (i >= 1) ? u[i - 1] : u[i + 1];
      const double right = (i + 1 < n_) ? u[i + 1] : u[i - 1];
      out[i] += (right - 2.0 * u[i] + left) / (dx_ * dx_);
    }
  }

  void advance_explicit(std::vector<double>& phi) {
    full_rhs(phi, explicit0_);
    for (int i = 0; i < n_; ++i) stage_[i] = phi[i] + cfg_.dt * explicit0_[i];
    full_rhs(stage_, explicit1_);
    for (int i = 0; i < n_; ++i)
      phi[i] += 0.5 * cfg_.dt * (explicit0_[i] + explicit1_[i]);
  }

  Grid grid_;
  SolverConfig cfg_;
  int n_;
  double dx_;
  double r_;
  std::vector<double> advection_;
  std::vector<double> lower_, diag_, upper_, cprime_, denom_;
  std::vector<double> rhs_, stage_, explicit0_, explicit1_;
  mutable std::vector<double> scratch_;
};

void check_finite(const std::vector<double>& u, const Grid& grid, long step_index) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]))
      throw SolverError("solver: non-finite value at step " + std::to_string(step_index) +
                        ", index " + std::to_string(i) + " (x = " +
                        std::to_string(grid.x(static_cast<int>(i))) + ")");
  }
}

void check_boundary(const std::vector<double>& u, const SolverConfig& cfg, double t) {
  // Only meaningful for the truncated-domain zero boundary; neumann_zero runs
  // (constant solutions) legitimately carry nonzero boundary values.
  if (cfg.boundary != BoundaryCondition::dirichlet_zero) return;
  const int n = static_cast<int>(u.size());
  const int guard = std::max(1, n / 20);
  double worst = 0.0;
  for (int i = 0; i < guard; ++i)
    worst = std::max({worst, std::abs(u[i]), std::abs(u[n - 1 - i])});
  if (worst > cfg.boundary_guard_tol)
    throw SolverError("solver: boundary contamination at t = " + std::to_string(t) +
                      " (max |phi| = " + std::to_string(worst) +
                      " on the outer 5% of the grid); increase the grid half_width");
}

}  // namespace

void SolverConfig::validate(const Grid& grid, const ModelParams& model) const {
  grid.validate();
  model.validate();
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("SolverConfig: dt must be finite and > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw std::invalid_argument("SolverConfig: t_final must be finite and >= 0");
  if (!(boundary_guard_tol > 0.0))
    throw std::invalid_argument("SolverConfig: boundary_guard_tol must be > 0");
  if (!(guard_width_scale >= 1.0))
    throw std::invalid_argument("SolverConfig: guard_width_scale must be >= 1");
  const double c = model.wave_speed;
  const double dx = grid.dx();
  const double advective = dx / (2.0 * c);
  if (dt > advective * (1.0 + 1e-12))
    throw std::invalid_argument("SolverConfig: advective CFL violated, need dt <= dx/(2c) = " +
                                std::to_string(advective));
  if (scheme == Scheme::explicit_rk2 && dt > 0.5 * dx * dx * (1.0 + 1e-12))
    throw std::invalid_argument("SolverConfig: diffusive CFL violated, need dt <= dx^2/2 = " +
                                std::to_string(0.5 * dx * dx));
  const double required =
      c * t_final + 8.0 * std::sqrt(guard_width_scale * (t_final + 1.0));
  if (grid.half_width < required)
    throw std::invalid_argument(
        "SolverConfig: domain too small, need L >= c*T + 8*sqrt(scale*(T+1)) = " +
        std::to_string(required) + " (L = " + std::to_string(grid.half_width) + ")");
  for (double ts : snapshot_times)
    if (!(ts >= 0.0) || ts > t_final * (1.0 + 1e-12) + 1e-12)
      throw std::invalid_argument("SolverConfig: snapshot time outside [0, t_final]");
}

Field step(const Field& phi, double /*t*/, const SolverConfig& config, const ModelParams& model) {
  config.validate(phi.grid, model);
  Field out = phi;
  Stepper stepper(phi.grid, config, model);
  stepper.advance(out.values);
  check_finite(out.values, out.grid, 1);
  return out;
}

std::vector<Snapshot> solve(const InitialCondition& phi0, const Grid& grid,
                            const SolverConfig& config, const ModelParams& model) {
  config.validate(grid, model);

  const long n_steps = std::lround(config.t_final / config.dt);
  std::set<long> snap_steps;
  for (double ts : config.snapshot_times)
    snap_steps.insert(std::clamp(std::lround(ts / config.dt), 0L, n_steps));

  Field phi = Field::zeros(grid);
  for (int i = 0; i < grid.points; ++i) phi.values[static_cast<std::size_t>(i)] = phi0.value(grid.x(i));
  if (config.boundary == BoundaryCondition::dirichlet_zero) {
    phi.values.front() = 0.0;
    phi.values.back() = 0.0;
  }

  std::vector<Snapshot> snaps;
  if (snap_steps.count(0)) snaps.push_back({0.0, phi});

  Stepper stepper(grid, config, model);
  for (long k = 1; k <= n_steps; ++k) {
    stepper.advance(phi.values);
    check_finite(phi.values, grid, k);
    if (snap_steps.count(k)) {
      const double t = static_cast<double>(k) * config.dt;
      check_boundary(phi.values, config, t);
      snaps.push_back({t, phi});
    }
  }
  return snaps;
}

}  // namespace sourcelab
