#pragma once

#include <string>

namespace sourcelab {

// Initial data phi(x,0). The localized kinds (gaussian, sech_bump) are C^1
// bumps of a given amplitude and width; `constant` exercises the family of
// spatially constant solutions.
class InitialCondition {
 public:
  enum class Kind { zero, constant, gaussian, sech_bump };

  static InitialCondition zero() { return {Kind::zero, 0.0, 1.0}; }
  static InitialCondition constant(double k) { return {Kind::constant, k, 1.0}; }
  static InitialCondition gaussian(double amplitude, double width);
  static InitialCondition sech_bump(double amplitude, double width);

  double value(double x) const;
  double slope(double x) const;

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double width() const { return width_; }
  bool is_localized() const { return kind_ == Kind::zero || kind_ == Kind::gaussian || kind_ == Kind::sech_bump; }

  // Width w such that |phi0| decays at least like exp(-(x/w)^2) (gaussian
  // semantics used by the quadrature windows). 1 for zero/constant data,
  // whose integrands are localized by the kernels instead.
  double window_width() const;

  // sup |e^{x^2/m} phi0| + sup |d/dx (e^{x^2/m} phi0)|, evaluated on a fine
  // grid over |x| <= 3 sqrt(m). Measures how strongly localized the data is
  // relative to the template width m.
  double weighted_c1_norm(double m) const;

  std::string describe() const;

 private:
  InitialCondition(Kind kind, double amplitude, double width)
      : kind_(kind), amplitude_(amplitude), width_(width) {}

  Kind kind_;
  double amplitude_;
  double width_;
};

}  // namespace sourcelab
