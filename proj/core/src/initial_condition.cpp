#include <sourcelab/initial_condition.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sourcelab {

InitialCondition InitialCondition::gaussian(double amplitude, double width) {
  if (!std::isfinite(amplitude) || !std::isfinite(width) || width <= 0.0)
    throw std::invalid_argument("InitialCondition::gaussian: width must be finite and > 0");
  return {Kind::gaussian, amplitude, width};
}

InitialCondition InitialCondition::sech_bump(double amplitude, double width) {
  if (!std::isfinite(amplitude) || !std::isfinite(width) || width <= 0.0)
    throw std::invalid_argument("InitialCondition::sech_bump: width must be finite and > 0");
  return {Kind::sech_bump, amplitude, width};
}

double InitialCondition::value(double x) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return amplitude_;
    case Kind::gaussian: {
      const double u = x / width_;
      return amplitude_ * std::exp(-u * u);
    }
    case Kind::sech_bump: {
      const double w = std::exp(-2.0 * std::abs(x / width_));
      const double d = 1.0 + w;
      return amplitude_ * 4.0 * w / (d * d);
    }
  }
  return 0.0;
}

double InitialCondition::slope(double x) const {
  switch (kind_) {
    case Kind::zero:
    case Kind::constant:
      return 0.0;
    case Kind::gaussian:
      return -2.0 * x / (width_ * width_) * value(x);
    case Kind::sech_bump:
      return -2.0 / width_ * std::tanh(x / width_) * value(x);
  }
  return 0.0;
}

double InitialCondition::window_width() const {
  switch (kind_) {
    case Kind::zero:
    case Kind::constant:
      return 1.0;
    case Kind::gaussian:
      return width_;
    case Kind::sech_bump:
      // exp(-2|x|/w) <= exp(-(x/(4w))^2) out to the 8-sigma window edge
      return 4.0 * width_;
  }
  return 1.0;
}

double InitialCondition::weighted_c1_norm(double m) const {
  if (!(m > 0.0)) throw std::invalid_argument("weighted_c1_norm: m must be > 0");
  const double half = 3.0 * std::sqrt(m);
  const int n = 6001;
  const double h = 2.0 * half / (n - 1);
  auto g = [&](double x) { return std::exp(x * x / m) * value(x); };
  double sup_g = 0.0;
  double sup_dg = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -half + i * h;
    sup_g = std::max(sup_g, std::abs(g(x)));
    const double dg = std::exp(x * x / m) * (slope(x) + 2.0 * x / m * value(x));
    sup_dg = std::max(sup_dg, std::abs(dg));
  }
  return sup_g + sup_dg;
}

std::string InitialCondition::describe() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::constant:
      return "constant(" + std::to_string(amplitude_) + ")";
    case Kind::gaussian:
      return "gaussian(" + std::to_string(amplitude_) + "," + std::to_string(width_) + ")";
    case Kind::sech_bump:
      return "sech_bump(" + std::to_string(amplitude_) + "," + std::to_string(width_) + ")";
  }
  return "?";
}

}  // namespace sourcelab
