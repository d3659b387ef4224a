#pragma once

#include <string>
#include <vector>

namespace steerkit {

// Unit vector on the Bloch sphere, stored in canonical angles: polar tau in
// [0, pi], azimuth gamma in [0, 2pi), gamma forced to 0 at the poles. Cartesian
// input is renormalized on construction.
class MeasurementDirection {
 public:
  static MeasurementDirection from_cartesian(double x, double y, double z);
  static MeasurementDirection from_angles(double tau, double gamma);
  static MeasurementDirection x_axis();
  static MeasurementDirection y_axis();
  static MeasurementDirection z_axis();

  double tau() const { return tau_; }
  double gamma() const { return gamma_; }
  double nx() const { return nx_; }
  double ny() const { return ny_; }
  double nz() const { return nz_; }

  double dot(const MeasurementDirection& o) const;
  // Duplicate under antipodal identification: the measurement bases of n and -n
  // coincide up to outcome relabeling, so both count as the same setting.
  bool duplicate_of(const MeasurementDirection& o) const;

  // "x" / "y" / "z" for exact axes, otherwise "tau,gamma" with 9 significant digits.
  std::string label() const;

 private:
  MeasurementDirection(double tau, double gamma);
  double tau_, gamma_;
  double nx_, ny_, nz_;
};

// Accepts "x", "y", "z", or "tau,gamma" in radians ("deg" suffix per number).
MeasurementDirection parse_direction(const std::string& text);

// Comma-separated list; named tokens stand alone, numeric tokens pair up as
// (tau, gamma). "z,x" is two settings; "z,0.5,1.2" is z followed by one angled setting.
std::vector<MeasurementDirection> parse_direction_list(const std::string& text);

// "30deg" -> radians; plain numbers pass through as radians.
double parse_angle(const std::string& text);

}  // namespace steerkit
