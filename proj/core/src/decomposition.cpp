#include <sourcelab/decomposition.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <sourcelab/errors.hpp>
#include <sourcelab/exact.hpp>
#include <sourcelab/kernels.hpp>

namespace sourcelab {
namespace {

// psi(y) ~ 4 exp(-c|y|); beyond c|y| = 45 its contribution is below 1e-18 of
// the peak, so the psi-weighted integrals are restricted to this window.
constexpr double kPsiSupport = 45.0;

struct IndexWindow {
  int lo = 0;
  int hi = 0;  // inclusive
};

IndexWindow psi_window(const Grid& grid, double c) {
  const double cut = kPsiSupport / c;
  const double dx = grid.dx();
  int lo = static_cast<int>(std::floor((grid.half_width - cut) / dx));
  lo = std::clamp(lo, 0, grid.points - 1);
  int hi = grid.points - 1 - lo;
  if (hi - lo < 4) {  // tiny grids: integrate over everything
    lo = 0;
    hi = grid.points - 1;
  }
  return {lo, hi};
}

// 4th-order first derivative with one-sided closures at the array ends.
void derivative_4th(std::span<const double> u, double dx, std::span<double> out) {
  const int n = static_cast<int>(u.size());
  if (n < 5) throw std::invalid_argument("derivative_4th: need at least 5 samples");
  const double inv12 = 1.0 / (12.0 * dx);
  out[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * inv12;
  out[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * inv12;
  for (int i = 2; i + 2 < n; ++i)
    out[i] = (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) * inv12;
  out[n - 2] = (3.0 * u[n - 1] + 10.0 * u[n - 2] - 18.0 * u[n - 3] + 6.0 * u[n - 4] - u[n - 5]) * inv12;
  out[n - 1] = (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] - 16.0 * u[n - 4] + 3.0 * u[n - 5]) * inv12;
}

double trapezoid(std::span<const double> u, double dx) {
  double acc = 0.5 * (u.front() + u.back());
  for (std::size_t i = 1; i + 1 < u.size(); ++i) acc += u[i];
  return acc * dx;
}

// Closed-form solve of the affine implicit relation for pdot over window
// samples of v_y and the precomputed B, B_x, psi arrays.
double pdot_core(double p, double c, double dx, std::span<const double> psi,
                 std::span<const double> b, std::span<const double> bx,
                 std::span<const double> vx) {
  const double cp = 1.0 + 0.25 * c * p;
  if (cp <= 0.0) throw std::domain_error("pdot_solve: 1 + c*p/4 must be positive");
  const std::size_t n = psi.size();
  std::vector<double> f0(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = 1.0 + p * b[i];
    if (denom <= 0.0) throw std::domain_error("pdot_solve: 1 + p*B must be positive");
    const double n0 = 2.0 * p * vx[i] * bx[i] / denom;
    f0[i] = psi[i] * (vx[i] * vx[i] + n0);
    f1[i] = psi[i] * (b[i] / cp - b[i] / denom);
  }
  const double a = cp * trapezoid(f0, dx);
  const double k = cp * trapezoid(f1, dx);
  if (std::abs(1.0 - k) < 0.5)
    throw SolverError("pdot_solve: implicit relation ill-conditioned (|1-K| < 1/2)");
  return a / (1.0 - k);
}

}  // namespace

double theta1(double x, double t, const ModelParams& model, const TemplateParams& tmpl) {
  const double c = model.wave_speed;
  const double w = tmpl.width_scale * (t + 1.0);
  const double um = x - c * t;
  const double up = x + c * t;
  return std::pow(1.0 + t, -tmpl.gamma) * (std::exp(-um * um / w) + std::exp(-up * up / w));
}

double theta2(double x, double t, const ModelParams& model, const TemplateParams& tmpl) {
  return theta1(x, t, model, tmpl) / std::sqrt(1.0 + t);
}

double solve_p0(const InitialCondition& phi0, const ModelParams& model,
                const QuadratureSpec& tol) {
  model.validate();
  const double c = model.wave_speed;
  const std::array<GaussianFeature, 3> features{{
      {0.0, std::max(phi0.window_width(), 8.0 / c)},
      {-c, 2.0},
      {c, 2.0},
  }};
  const QuadratureSpec spec =
      QuadratureSpec::covering(features, tol.abs_tol, tol.rel_tol, tol.n_sigmas);

  // log domain: 1 + p B > 0 everywhere, so p > -1/max(B)
  double b_max = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double y = spec.lo() + (spec.hi() - spec.lo()) * i / 4000.0;
    b_max = std::max(b_max, bfield(y, 0.0, model));
  }
  const double p_lo = -0.99 / b_max;
  const double p_hi = 4.0 / (c * b_max);

  auto f = [&](double p) {
    return integrate_line(
        [&](double y) {
          return adjoint_eigenfunction(y, model) *
                 (phi0.value(y) - std::log1p(p * bfield(y, 0.0, model)));
        },
        spec);
  };
  auto fprime = [&](double p) {
    return integrate_line(
        [&](double y) {
          const double b = bfield(y, 0.0, model);
          return -adjoint_eigenfunction(y, model) * b / (1.0 + p * b);
        },
        spec);
  };

  double p = 0.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double fv = f(p);
    if (std::abs(fv) <= 1e-11) return p;
    const double next = p - fv / fprime(p);
    if (!std::isfinite(next) || next <= p_lo || next >= p_hi) break;
    p = next;
  }
  if (std::abs(f(p)) <= 1e-10) return p;

  // bisection fallback; F is strictly decreasing in p
  double lo = p_lo, hi = p_hi;
  double flo = f(lo), fhi = f(hi);
  if (flo * fhi > 0.0)
    throw std::invalid_argument(
        "solve_p0: no sign change on the fallback bracket; initial data outside the "
        "small-amplitude regime");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= 1e-11) return mid;
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  const double mid = 0.5 * (lo + hi);
  if (std::abs(f(mid)) <= 1e-10) return mid;
  throw SolverError("solve_p0: root refinement failed");
}

double nonlinearity(double x, double t, double p, double pdot, double vx,
                    const ModelParams& model) {
  const double c = model.wave_speed;
  const double b = bfield(x, t, model);
  const double denom = 1.0 + p * b;
  const double cp = 1.0 + 0.25 * c * p;
  if (denom <= 0.0) throw std::domain_error("nonlinearity: 1 + p*B must be positive");
  if (cp <= 0.0) throw std::domain_error("nonlinearity: 1 + c*p/4 must be positive");
  return 2.0 * p * vx * bfield_x(x, t, model) / denom + pdot * (b / cp - b / denom);
}

double pdot_solve(double p, const Field& v, const Field& vx, double t, const ModelParams& model) {
  if (!(v.grid == vx.grid) || v.values.size() != vx.values.size())
    throw std::invalid_argument("pdot_solve: v and vx must share a grid");
  const double c = model.wave_speed;
  const IndexWindow win = psi_window(v.grid, c);
  const int m = win.hi - win.lo + 1;
  std::vector<double> psi(m), b(m), bx(m);
  for (int i = 0; i < m; ++i) {
    const double y = v.grid.x(win.lo + i);
    psi[i] = adjoint_eigenfunction(y, model);
    b[i] = bfield(y, t, model);
    bx[i] = bfield_x(y, t, model);
  }
  return pdot_core(p, c, v.grid.dx(),
                   psi, b, bx,
                   std::span<const double>(vx.values).subspan(win.lo, m));
}

namespace {

// pdot as a function of (t, p) along the linearly interpolated trajectory;
// evaluates v and v_x on the psi window only.
class WindowRate {
 public:
  WindowRate(const Grid& grid, const ModelParams& model)
      : grid_(grid), c_(model.wave_speed), model_(model) {
    win_ = psi_window(grid, c_);
    ext_lo_ = std::max(0, win_.lo - 2);
    ext_hi_ = std::min(grid.points - 1, win_.hi + 2);
    const int ext_n = ext_hi_ - ext_lo_ + 1;
    const int m = win_.hi - win_.lo + 1;
    y_ext_.resize(ext_n);
    for (int i = 0; i < ext_n; ++i) y_ext_[i] = grid.x(ext_lo_ + i);
    psi_.resize(m);
    for (int i = 0; i < m; ++i) psi_[i] = adjoint_eigenfunction(grid.x(win_.lo + i), model);
    v_ext_.resize(ext_n);
    vx_ext_.resize(ext_n);
    b_ext_.resize(ext_n);
    bx_win_.resize(m);
    b_win_.resize(m);
  }

  // phi_lo/phi_hi: snapshot fields bracketing t; lambda in [0,1]
  double operator()(double t, double p, std::span<const double> phi_lo,
                    std::span<const double> phi_hi, double lambda) {
    const int ext_n = ext_hi_ - ext_lo_ + 1;
    const int m = win_.hi - win_.lo + 1;
    for (int i = 0; i < ext_n; ++i) {
      const double b = bfield(y_ext_[i], t, model_);
      b_ext_[i] = b;
      const double phi =
          (1.0 - lambda) * phi_lo[ext_lo_ + i] + lambda * phi_hi[ext_lo_ + i];
      if (1.0 + p * b <= 0.0)
        throw std::domain_error("evolve_decomposition: 1 + p*B must stay positive");
      v_ext_[i] = phi - std::log1p(p * b);
    }
    derivative_4th(v_ext_, grid_.dx(), vx_ext_);
    const int off = win_.lo - ext_lo_;
    for (int i = 0; i < m; ++i) {
      b_win_[i] = b_ext_[off + i];
      bx_win_[i] = bfield_x(grid_.x(win_.lo + i), t, model_);
    }
    return pdot_core(p, c_, grid_.dx(), psi_, b_win_, bx_win_,
                     std::span<const double>(vx_ext_).subspan(off, m));
  }

  const IndexWindow& window() const { return win_; }
  std::span<const double> psi() const { return psi_; }

 private:
  Grid grid_;
  double c_;
  ModelParams model_;
  IndexWindow win_;
  int ext_lo_ = 0, ext_hi_ = 0;
  std::vector<double> y_ext_, psi_, v_ext_, vx_ext_, b_ext_, bx_win_, b_win_;
};

}  // namespace

DecompositionState evolve_decomposition(std::span<const Snapshot> trajectory,
                                        const InitialCondition& phi0, const ModelParams& model,
                                        const TemplateParams& tmpl, const QuadratureSpec& tol) {
  model.validate();
  tmpl.validate();
  if (trajectory.empty()) throw std::invalid_argument("evolve_decomposition: empty trajectory");
  if (std::abs(trajectory[0].time) > 1e-12)
    throw std::invalid_argument("evolve_decomposition: trajectory must start at t = 0");
  const Grid grid = trajectory[0].field.grid;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (!(trajectory[i].field.grid == grid))
      throw std::invalid_argument("evolve_decomposition: snapshots on different grids");
    if (i > 0) {
      const double gap = trajectory[i].time - trajectory[i - 1].time;
      if (!(gap > 0.0) || gap > 0.1 + 1e-9)
        throw std::invalid_argument(
            "evolve_decomposition: snapshot spacing must be positive and <= 0.1");
    }
  }

  const double c = model.wave_speed;
  const std::size_t n_snap = trajectory.size();
  const int nx = grid.points;

  DecompositionState state;
  state.epsilon = phi0.weighted_c1_norm(tmpl.width_scale);
  state.times.reserve(n_snap);
  state.p.reserve(n_snap);

  WindowRate rate(grid, model);
  const IndexWindow win = rate.window();
  const int m = win.hi - win.lo + 1;

  double p_cur = solve_p0(phi0, model, tol);
  double h1_run = 0.0;
  double h2_run = 0.0;
  std::vector<double> v(nx), vx(nx), psi_v(m);

  for (std::size_t i = 0; i < n_snap; ++i) {
    const double t = trajectory[i].time;
    const std::vector<double>& phi = trajectory[i].field.values;

    for (int j = 0; j < nx; ++j) {
      const double b = bfield(grid.x(j), t, model);
      if (1.0 + p_cur * b <= 0.0)
        throw std::domain_error("evolve_decomposition: 1 + p*B must stay positive");
      v[static_cast<std::size_t>(j)] = phi[static_cast<std::size_t>(j)] - std::log1p(p_cur * b);
    }
    derivative_4th(v, grid.dx(), vx);

    Field v_field{grid, v};
    Field vx_field{grid, vx};
    const double pdot = pdot_solve(p_cur, v_field, vx_field, t, model);

    double sup_v = 0.0, sup_vx = 0.0, sup_sum = 0.0;
    for (int j = 0; j < nx; ++j) {
      const double x = grid.x(j);
      const double th1 = theta1(x, t, model, tmpl);
      const double th2 = theta2(x, t, model, tmpl);
      const double rv = std::abs(v[static_cast<std::size_t>(j)]) / th1;
      const double rvx = std::abs(vx[static_cast<std::size_t>(j)]) / th2;
      sup_v = std::max(sup_v, rv);
      sup_vx = std::max(sup_vx, rvx);
      sup_sum = std::max(sup_sum, rv + rvx);
    }
    h1_run = std::max(h1_run, sup_sum);
    h2_run = std::max(h2_run, std::abs(pdot) * std::exp(c * c * t / tmpl.width_scale));

    for (int j = 0; j < m; ++j)
      psi_v[static_cast<std::size_t>(j)] =
          rate.psi()[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(win.lo + j)];

    state.times.push_back(t);
    state.p.push_back(p_cur);
    state.pdot.push_back(pdot);
    state.h1.push_back(h1_run);
    state.h2.push_back(h2_run);
    state.sup_v_ratio.push_back(sup_v);
    state.sup_vx_ratio.push_back(sup_vx);
    state.psi_v.push_back(trapezoid(psi_v, grid.dx()));
    state.q.push_back(pdot / (1.0 + 0.25 * c * p_cur));
    state.v_fields.push_back(std::move(v_field));
    state.vx_fields.push_back(std::move(vx_field));

    if (i + 1 == n_snap) break;

    // advance p over [t_i, t_{i+1}] with two classical RK4 substeps
    const double t_next = trajectory[i + 1].time;
    const double dt_snap = t_next - t;
    std::span<const double> lo_vals(trajectory[i].field.values);
    std::span<const double> hi_vals(trajectory[i + 1].field.values);
    auto fr = [&](double ts, double ps) {
      const double lambda = (ts - t) / dt_snap;
      return rate(ts, ps, lo_vals, hi_vals, lambda);
    };
    double pk = p_cur;
    double q_mid = 0.0;
    for (int sub = 0; sub < 2; ++sub) {
      const double h = 0.5 * dt_snap;
      const double t0 = t + sub * h;
      const double k1 = fr(t0, pk);
      if (sub == 1) q_mid = k1 / (1.0 + 0.25 * c * pk);  // rate at the interval midpoint
      const double k2 = fr(t0 + 0.5 * h, pk + 0.5 * h * k1);
      const double k3 = fr(t0 + 0.5 * h, pk + 0.5 * h * k2);
      const double k4 = fr(t0 + h, pk + h * k3);
      pk += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    state.q_mid.push_back(q_mid);
    p_cur = pk;
  }

  return state;
}

IdentityCheck p_integral_identity(const DecompositionState& state, const ModelParams& model) {
  if (state.times.size() < 2 || state.q_mid.size() + 1 != state.times.size())
    throw std::invalid_argument("p_integral_identity: incomplete state");
  const double c = model.wave_speed;
  IdentityCheck out;
  out.lhs = std::log1p(0.25 * c * state.p.back()) - std::log1p(0.25 * c * state.p.front());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < state.times.size(); ++i) {
    const double h = state.times[i + 1] - state.times[i];
    acc += h / 6.0 * (state.q[i] + 4.0 * state.q_mid[i] + state.q[i + 1]);
  }
  out.rhs = 0.25 * c * acc;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace sourcelab
