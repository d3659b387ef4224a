#include "steerkit/direction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "steerkit/errors.hpp"

namespace steerkit {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_two_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}
}  // namespace

MeasurementDirection::MeasurementDirection(double tau, double gamma) : tau_(tau), gamma_(gamma) {
  nx_ = std::sin(tau_) * std::cos(gamma_);
  ny_ = std::sin(tau_) * std::sin(gamma_);
  nz_ = std::cos(tau_);
}

MeasurementDirection MeasurementDirection::from_cartesian(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n < 1e-12) {
    throw PreconditionError("unit_direction", "direction vector must be nonzero", n);
  }
  x /= n;
  y /= n;
  z /= n;
  const double tau = std::acos(std::clamp(z, -1.0, 1.0));
  const double gamma = (std::abs(x) < 1e-12 && std::abs(y) < 1e-12) ? 0.0 : wrap_two_pi(std::atan2(y, x));
  return MeasurementDirection(tau, gamma);
}

MeasurementDirection MeasurementDirection::from_angles(double tau, double gamma) {
  tau = std::fmod(tau, kTwoPi);
  if (tau < 0.0) tau += kTwoPi;
  if (tau > kPi) {
    tau = kTwoPi - tau;
    gamma += kPi;
  }
  gamma = wrap_two_pi(gamma);
  if (tau < 1e-12 || tau > kPi - 1e-12) gamma = 0.0;
  return MeasurementDirection(tau, gamma);
}

MeasurementDirection MeasurementDirection::x_axis() { return from_angles(kPi / 2.0, 0.0); }
MeasurementDirection MeasurementDirection::y_axis() { return from_angles(kPi / 2.0, kPi / 2.0); }
MeasurementDirection MeasurementDirection::z_axis() { return from_angles(0.0, 0.0); }

double MeasurementDirection::dot(const MeasurementDirection& o) const {
  return nx_ * o.nx_ + ny_ * o.ny_ + nz_ * o.nz_;
}

bool MeasurementDirection::duplicate_of(const MeasurementDirection& o) const {
  // |dot| >= cos(1e-6 rad): angular separation below 1e-6 directly or antipodally.
  return std::abs(dot(o)) >= 1.0 - 5e-13;
}

std::string MeasurementDirection::label() const {
  if (duplicate_of(x_axis()) && nx_ > 0.0) return "x";
  if (duplicate_of(y_axis()) && ny_ > 0.0) return "y";
  if (duplicate_of(z_axis()) && nz_ > 0.0) return "z";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g,%.9g", tau_, gamma_);
  return buf;
}

double parse_angle(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  double scale = 1.0;
  if (t.size() > 3) {
    std::string suffix = t.substr(t.size() - 3);
    std::transform(suffix.begin(), suffix.end(), suffix.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (suffix == "deg") {
      t = t.substr(0, t.size() - 3);
      scale = kPi / 180.0;
    }
  }
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw PreconditionError("angle_format", "cannot parse angle '" + text + "'", 0.0);
  }
  if (consumed != t.size()) {
    throw PreconditionError("angle_format", "trailing characters in angle '" + text + "'", 0.0);
  }
  return value * scale;
}

MeasurementDirection parse_direction(const std::string& text) {
  const auto list = parse_direction_list(text);
  if (list.size() != 1) {
    throw PreconditionError("direction_format", "expected exactly one direction in '" + text + "'",
                            static_cast<double>(list.size()));
  }
  return list.front();
}

std::vector<MeasurementDirection> parse_direction_list(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      tokens.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current.push_back(c);
    }
  }
  tokens.push_back(current);

  std::vector<MeasurementDirection> dirs;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok.empty()) {
      throw PreconditionError("direction_format", "empty direction token in '" + text + "'", 0.0);
    }
    if (tok == "x" || tok == "X") {
      dirs.push_back(MeasurementDirection::x_axis());
    } else if (tok == "y" || tok == "Y") {
      dirs.push_back(MeasurementDirection::y_axis());
    } else if (tok == "z" || tok == "Z") {
      dirs.push_back(MeasurementDirection::z_axis());
    } else {
      if (i + 1 >= tokens.size()) {
        throw PreconditionError("direction_format",
                                "numeric direction needs a tau,gamma pair in '" + text + "'", 0.0);
      }
      const double tau = parse_angle(tok);
      const double gamma = parse_angle(tokens[i + 1]);
      dirs.push_back(MeasurementDirection::from_angles(tau, gamma));
      ++i;
    }
  }
  return dirs;
}

}  // namespace steerkit
