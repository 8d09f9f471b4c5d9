#ifndef NOZZLE_PROFILE_HPP_
#define NOZZLE_PROFILE_HPP_

#include <vector>

namespace nozzle {

// Scalar boundary profile: either an explicit polynomial (Horner evaluation,
// analytic derivatives) or a uniformly sampled table interpolated with cubic
// Lagrange stencils.  Used for the wall turning angle and the exit pressure.
class Profile {
 public:
  Profile() = default;

  static Profile polynomial(std::vector<double> coefficients);
  // Samples y_k at x0 + k dx; needs at least four points.
  static Profile table(double x0, double dx, std::vector<double> samples);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  bool is_polynomial() const { return kind_ == Kind::kPolynomial; }
  const std::vector<double>& coefficients() const { return coef_; }

  // True when the profile is identically zero (all coefficients/samples 0).
  bool is_zero() const;

  // sup |f| over [a,b], sampled densely; used for validation thresholds.
  double sup_abs(double a, double b, int samples = 2001) const;

 private:
  enum class Kind { kPolynomial, kTable };
  Kind kind_ = Kind::kPolynomial;
  std::vector<double> coef_;   // polynomial coefficients, ascending powers
  double x0_ = 0.0, dx_ = 1.0; // table geometry
  std::vector<double> tab_;    // table samples
};

}  // namespace nozzle

#endif  // NOZZLE_PROFILE_HPP_
