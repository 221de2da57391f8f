#include <sourcelab/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sourcelab {
namespace {

// 7-point Gauss-Legendre rule on [-1,1].
constexpr double kGl7Node[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                                0.0,                 0.4058451513773972,  0.7415311855993945,
                                0.9491079123427585};
constexpr double kGl7Weight[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                                  0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                  0.1294849661688697};

double composite_gl(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (int i = 0; i < 7; ++i) panel += kGl7Weight[i] * f(mid + half * kGl7Node[i]);
    acc += panel * half;
  }
  return acc;
}

double composite_simpson(const std::function<double(double)>& f, double a, double b,
                         int intervals) {
  // intervals must be even
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
  if (!(n_sigmas >= 8.0))
    throw std::invalid_argument("QuadratureSpec: n_sigmas must be >= 8");
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center))
    throw std::invalid_argument("QuadratureSpec: invalid window");
}

QuadratureSpec QuadratureSpec::covering(std::span<const GaussianFeature> features, double abs_tol,
                                        double rel_tol, double n_sigmas) {
  if (features.empty()) throw std::invalid_argument("QuadratureSpec::covering: no features");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& g : features) {
    lo = std::min(lo, g.center - n_sigmas * g.width);
    hi = std::max(hi, g.center + n_sigmas * g.width);
  }
  QuadratureSpec spec;
  spec.abs_tol = abs_tol;
  spec.rel_tol = rel_tol;
  spec.n_sigmas = n_sigmas;
  spec.center = 0.5 * (lo + hi);
  spec.width = (hi - lo) / (2.0 * n_sigmas);
  spec.validate();
  return spec;
}

double integrate_line(const std::function<double(double)>& f, const QuadratureSpec& spec,
                      QuadRule rule) {
  spec.validate();
  const double a = spec.lo();
  const double b = spec.hi();

  int n = (rule == QuadRule::gauss_legendre) ? 4 : 32;
  const int n_max = (rule == QuadRule::gauss_legendre) ? (1 << 16) : (1 << 20);

  auto estimate = [&](int panels) {
    return (rule == QuadRule::gauss_legendre) ? composite_gl(f, a, b, panels)
                                              : composite_simpson(f, a, b, panels);
  };

  double prev = estimate(n);
  double penultimate = prev;
  for (n *= 2; n <= n_max; n *= 2) {
    const double cur = estimate(n);
    if (std::abs(cur - prev) < std::max(spec.abs_tol, spec.rel_tol * std::abs(cur))) return cur;
    penultimate = prev;
    prev = cur;
  }
  throw QuadratureError("integrate_line: no convergence within refinement budget", penultimate,
                        prev);
}

double integrate_grid(const Field& field) {
  if (field.values.size() < 2 || field.values.size() != static_cast<std::size_t>(field.grid.points))
    throw std::invalid_argument("integrate_grid: field needs >= 2 matching samples");
  const double dx = field.grid.dx();
  double acc = 0.5 * (field.values.front() + field.values.back());
  for (std::size_t i = 1; i + 1 < field.values.size(); ++i) acc += field.values[i];
  return acc * dx;
}

}  // namespace sourcelab
