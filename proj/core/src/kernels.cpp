#include <sourcelab/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sourcelab {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// 16-point Gauss-Legendre rule on [-1,1]; used for short errfn segments,
// where it is exact to machine precision.
constexpr double kGl16Node[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGl16Weight[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class Real>
Real errfn_of(Real z) {
  return std::erfc(-z) / 2;
}

// (1/sqrt(pi)) * integral of exp(-s^2) over [lo, hi], one 16-point panel.
template <class Real>
Real errfn_segment(Real lo, Real hi) {
  const Real mid = (lo + hi) / 2;
  const Real half = (hi - lo) / 2;
  Real acc = 0;
  for (int i = 0; i < 16; ++i) {
    const Real s = mid + half * Real(kGl16Node[i]);
    acc += Real(kGl16Weight[i]) * std::exp(-s * s);
  }
  return acc * half / Real(kSqrtPi);
}

template <class Real>
Real errfn_diff_of(Real lo, Real hi) {
  if (lo == hi) return 0;
  Real sign = 1;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1;
  }
  const Real mag = std::max(std::abs(lo), std::abs(hi));
  if (hi - lo <= Real(1e-3) * mag) return sign * errfn_segment(lo, hi);
  if (lo >= 0) return sign * (std::erfc(lo) - std::erfc(hi)) / 2;
  if (hi <= 0) return sign * (std::erfc(-hi) - std::erfc(-lo)) / 2;
  return sign * (std::erf(hi) - std::erf(lo)) / 2;
}

// 1/(1 + e^u), overflow-safe.
template <class Real>
Real logistic_neg(Real u) {
  if (u > 0) {
    const Real w = std::exp(-u);
    return w / (1 + w);
  }
  return 1 / (1 + std::exp(u));
}

// sech^2(u), overflow-safe.
template <class Real>
Real sech_sq(Real u) {
  const Real w = std::exp(-2 * std::abs(u));
  const Real d = 1 + w;
  return 4 * w / (d * d);
}

// exp(-a^2) - exp(-b^2) with expm1 when the exponents nearly coincide.
template <class Real>
Real gauss_diff(Real a, Real b) {
  const Real ea = a * a;
  const Real eb = b * b;
  if (std::abs(ea - eb) < Real(1)) return -std::exp(-ea) * std::expm1(ea - eb);
  return std::exp(-ea) - std::exp(-eb);
}

template <class Real>
void require_positive_time(Real t, const char* fn) {
  if (!(t > 0) || !std::isfinite(static_cast<double>(t)))
    throw std::invalid_argument(std::string(fn) + ": requires t > 0");
}

template <class Real>
Real greens_of(Real x, Real y, Real t, Real c) {
  const Real pref = 1 / std::sqrt(4 * Real(M_PI) * t);
  const Real up = x - y + c * t;
  const Real um = x - y - c * t;
  const Real g1 = pref * std::exp(-up * up / (4 * t)) * logistic_neg(c * y);
  const Real g2 = pref * std::exp(-um * um / (4 * t)) * logistic_neg(-c * y);
  const Real s4t = std::sqrt(4 * t);
  const Real pair = errfn_diff_of((y - x - c * t) / s4t, (y - x + c * t) / s4t);
  return g1 + g2 + (c / 4) * pair * sech_sq(c * y / 2);
}

template <class Real>
Real greens_x_of(Real x, Real y, Real t, Real c) {
  const Real pref = 1 / std::sqrt(4 * Real(M_PI) * t);
  const Real up = x - y + c * t;
  const Real um = x - y - c * t;
  const Real g1 = pref * std::exp(-up * up / (4 * t)) * logistic_neg(c * y);
  const Real g2 = pref * std::exp(-um * um / (4 * t)) * logistic_neg(-c * y);
  // d/dx of the errfn pair: (c/4) psi(y) [exp(-up^2/4t) - exp(-um^2/4t)] pref
  const Real tail =
      (c / 4) * sech_sq(c * y / 2) * pref *
      (std::exp(-up * up / (4 * t)) - std::exp(-um * um / (4 * t)));
  return -up / (2 * t) * g1 - um / (2 * t) * g2 + tail;
}

template <class Real>
Real greens_xx_of(Real x, Real y, Real t, Real c) {
  const Real pref = 1 / std::sqrt(4 * Real(M_PI) * t);
  const Real up = x - y + c * t;
  const Real um = x - y - c * t;
  const Real ep = std::exp(-up * up / (4 * t));
  const Real em = std::exp(-um * um / (4 * t));
  const Real g1 = (up * up / (4 * t * t) - 1 / (2 * t)) * pref * ep * logistic_neg(c * y);
  const Real g2 = (um * um / (4 * t * t) - 1 / (2 * t)) * pref * em * logistic_neg(-c * y);
  const Real tail = (c / 4) * sech_sq(c * y / 2) * pref *
                    (-up / (2 * t) * ep + um / (2 * t) * em);
  return g1 + g2 + tail;
}

template <class Real>
Real greens_tilde_of(Real x, Real y, Real t, Real c) {
  const Real pref = 1 / std::sqrt(4 * Real(M_PI) * t);
  const Real up = x - y + c * t;
  const Real um = x - y - c * t;
  const Real g1 = pref * std::exp(-up * up / (4 * t)) * logistic_neg(c * y);
  const Real g2 = pref * std::exp(-um * um / (4 * t)) * logistic_neg(-c * y);
  const Real s4t = std::sqrt(4 * t);
  const Real z1 = (y - x + c * t) / s4t;
  const Real z2 = (y - x - c * t) / s4t;
  const Real w1 = (-x + c * t) / s4t;
  const Real w2 = (-x - c * t) / s4t;
  // [errfn(z1)-errfn(z2)] - [errfn(w1)-errfn(w2)], regrouped over the shorter
  // intervals: pairing by the y-shift (length |y|/s4t) or the natural pairing
  // (length c*sqrt(t)), whichever differences nearby arguments.
  Real pair;
  if (std::abs(y) <= 2 * c * t)
    pair = errfn_diff_of(w1, z1) - errfn_diff_of(w2, z2);
  else
    pair = errfn_diff_of(z2, z1) - errfn_diff_of(w2, w1);
  return g1 + g2 + (c / 4) * pair * sech_sq(c * y / 2);
}

template <class Real>
Real greens_tilde_x_of(Real x, Real y, Real t, Real c) {
  const Real pref = 1 / std::sqrt(4 * Real(M_PI) * t);
  const Real up = x - y + c * t;
  const Real um = x - y - c * t;
  const Real g1 = pref * std::exp(-up * up / (4 * t)) * logistic_neg(c * y);
  const Real g2 = pref * std::exp(-um * um / (4 * t)) * logistic_neg(-c * y);
  const Real s4t = std::sqrt(4 * t);
  // x-derivative of the regrouped errfn pair: four Gaussians, differenced
  // pairwise along the shorter grouping.
  const Real a1 = up / s4t;          // exponent sqrt of exp(-up^2/4t)
  const Real a2 = um / s4t;
  const Real b1 = (x - c * t) / s4t; // from the e(x,t) part
  const Real b2 = (x + c * t) / s4t;
  Real quad;
  if (std::abs(y) <= 2 * c * t)
    quad = gauss_diff(a1, b2) - gauss_diff(a2, b1);
  else
    quad = gauss_diff(a1, a2) - gauss_diff(b2, b1);
  return -up / (2 * t) * g1 - um / (2 * t) * g2 +
         (c / 4) * sech_sq(c * y / 2) * pref * quad;
}

}  // namespace

double errfn(double z) { return errfn_of(z); }

double errfn_diff(double lo, double hi) { return errfn_diff_of(lo, hi); }

double adjoint_eigenfunction(double y, const ModelParams& model) {
  return sech_sq(model.wave_speed * y / 2);
}

double plateau(double x, double t, const ModelParams& model) {
  require_positive_time(t, "plateau");
  const double c = model.wave_speed;
  const double s4t = std::sqrt(4 * t);
  return (c / 4) * errfn_diff((x - c * t) / s4t, (x + c * t) / s4t);
}

double plateau_x(double x, double t, const ModelParams& model) {
  require_positive_time(t, "plateau_x");
  const double c = model.wave_speed;
  const double pref = 1 / std::sqrt(4 * M_PI * t);
  const double up = x + c * t;
  const double um = x - c * t;
  return (c / 4) * pref * (std::exp(-up * up / (4 * t)) - std::exp(-um * um / (4 * t)));
}

double greens(double x, double y, double t, const ModelParams& model) {
  require_positive_time(t, "greens");
  return greens_of(x, y, t, model.wave_speed);
}

double greens_x(double x, double y, double t, const ModelParams& model) {
  require_positive_time(t, "greens_x");
  return greens_x_of(x, y, t, model.wave_speed);
}

double greens_xx(double x, double y, double t, const ModelParams& model) {
  require_positive_time(t, "greens_xx");
  return greens_xx_of(x, y, t, model.wave_speed);
}

double greens_tilde(double x, double y, double t, const ModelParams& model) {
  require_positive_time(t, "greens_tilde");
  return greens_tilde_of(x, y, t, model.wave_speed);
}

double greens_tilde_x(double x, double y, double t, const ModelParams& model) {
  require_positive_time(t, "greens_tilde_x");
  return greens_tilde_x_of(x, y, t, model.wave_speed);
}

double bfield(double x, double t, const ModelParams& model) {
  if (!(t >= 0)) throw std::invalid_argument("bfield: requires t >= 0");
  return greens_of(x, 0.0, t + 1.0, model.wave_speed);
}

double bfield_x(double x, double t, const ModelParams& model) {
  if (!(t >= 0)) throw std::invalid_argument("bfield_x: requires t >= 0");
  return greens_x_of(x, 0.0, t + 1.0, model.wave_speed);
}

double bfield_t(double x, double t, const ModelParams& model) {
  if (!(t >= 0)) throw std::invalid_argument("bfield_t: requires t >= 0");
  const double c = model.wave_speed;
  // B solves the linearized equation, so B_t = B_xx - c tanh(cx/2) B_x.
  return greens_xx_of(x, 0.0, t + 1.0, c) -
         c * std::tanh(c * x / 2) * greens_x_of(x, 0.0, t + 1.0, c);
}

namespace wide {

long double greens_tilde(long double x, long double y, long double t, const ModelParams& model) {
  require_positive_time(t, "wide::greens_tilde");
  return greens_tilde_of(x, y, t, static_cast<long double>(model.wave_speed));
}

long double greens_tilde_x(long double x, long double y, long double t,
                           const ModelParams& model) {
  require_positive_time(t, "wide::greens_tilde_x");
  return greens_tilde_x_of(x, y, t, static_cast<long double>(model.wave_speed));
}

}  // namespace wide

}  // namespace sourcelab
