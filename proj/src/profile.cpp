#include "nozzle/profile.hpp"

#include <algorithm>
#include <cmath>

#include "nozzle/errors.hpp"
#include "nozzle/grid.hpp"

namespace nozzle {

Profile Profile::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty())
    throw ConfigError("Profile", "polynomial needs at least one coefficient");
  Profile p;
  p.kind_ = Kind::kPolynomial;
  p.coef_ = std::move(coefficients);
  return p;
}

Profile Profile::table(double x0, double dx, std::vector<double> samples) {
  if (samples.size() < 4)
    throw ConfigError("Profile", "table needs at least four samples");
  if (!(dx > 0.0)) throw ConfigError("Profile", "table spacing must be positive");
  Profile p;
  p.kind_ = Kind::kTable;
  p.x0_ = x0;
  p.dx_ = dx;
  p.tab_ = std::move(samples);
  return p;
}

double Profile::operator()(double x) const {
  if (kind_ == Kind::kPolynomial) {
    double v = 0.0;
    for (size_t k = coef_.size(); k-- > 0;) v = v * x + coef_[k];
    return v;
  }
  return interp_cubic(tab_, x0_, dx_, x);
}

double Profile::derivative(double x) const {
  if (kind_ == Kind::kPolynomial) {
    double v = 0.0;
    for (size_t k = coef_.size(); k-- > 1;) v = v * x + coef_[k] * static_cast<double>(k);
    return v;
  }
  return interp_cubic_d1(tab_, x0_, dx_, x);
}

double Profile::second_derivative(double x) const {
  if (kind_ == Kind::kPolynomial) {
    double v = 0.0;
    for (size_t k = coef_.size(); k-- > 2;)
      v = v * x + coef_[k] * static_cast<double>(k) * static_cast<double>(k - 1);
    return v;
  }
  return interp_cubic_d2(tab_, x0_, dx_, x);
}

bool Profile::is_zero() const {
  const auto& v = kind_ == Kind::kPolynomial ? coef_ : tab_;
  return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
}

double Profile::sup_abs(double a, double b, int samples) const {
  double m = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = a + (b - a) * k / (samples - 1);
    m = std::max(m, std::abs((*this)(x)));
  }
  return m;
}

}  // namespace nozzle
