#pragma once

#include <sourcelab/model.hpp>

namespace sourcelab {

// Closed-form kernels of the linearized equation
//
//   phi_t = phi_xx - c tanh(cx/2) phi_x.
//
// greens(x,y,t) is its Green's function: two Gaussians moving with speeds -c
// and +c, weighted by logistic factors in y, plus a spreading plateau term
// e(x-y,t) * psi(y) of height c/4 that carries the non-decaying mass.
//
// All functions are pure and thread-safe.

// errfn(z) = (1/sqrt(pi)) * integral of exp(-s^2) over (-inf, z].
// Strictly increasing, values in (0,1). Evaluated through erfc so both tails
// keep full relative accuracy.
double errfn(double z);

// errfn(hi) - errfn(lo) without cancellation: differenced through the
// complementary tail on either side of zero, or evaluated as a single
// Gauss-Legendre integral of exp(-s^2) over [lo, hi] when the endpoints
// agree to about three significant digits.
double errfn_diff(double lo, double hi);

// psi(y) = sech^2(cy/2); even, values in (0,1], decays like 4 exp(-c|y|).
double adjoint_eigenfunction(double y, const ModelParams& model);

// Plateau term e(x,t) = (c/4)[errfn((x+ct)/sqrt(4t)) - errfn((x-ct)/sqrt(4t))].
// Even in x, values in [0, c/4). Requires t > 0.
double plateau(double x, double t, const ModelParams& model);
double plateau_x(double x, double t, const ModelParams& model);

// Green's function and its x-derivatives. Require t > 0.
double greens(double x, double y, double t, const ModelParams& model);
double greens_x(double x, double y, double t, const ModelParams& model);
double greens_xx(double x, double y, double t, const ModelParams& model);

// greens minus the plateau part e(x,t)*psi(y), evaluated through the explicit
// four-term form with errfn differences grouped over the shorter of the two
// possible pairings, so nearly-equal large-t values are never subtracted.
double greens_tilde(double x, double y, double t, const ModelParams& model);
double greens_tilde_x(double x, double y, double t, const ModelParams& model);

// B(x,t) = greens(x,0,t+1), defined for t >= 0; solves the linearized
// equation, so its time derivative is evaluated from the spatial operator.
double bfield(double x, double t, const ModelParams& model);
double bfield_x(double x, double t, const ModelParams& model);
double bfield_t(double x, double t, const ModelParams& model);

namespace wide {

// Long-double evaluation path (extended exponent range, |log| up to ~11000)
// for tail-dominated ratio diagnostics where double underflows.
long double greens_tilde(long double x, long double y, long double t, const ModelParams& model);
long double greens_tilde_x(long double x, long double y, long double t, const ModelParams& model);

}  // namespace wide

}  // namespace sourcelab
