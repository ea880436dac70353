#include "kirchhoff/sobolev.hpp"

#include <cmath>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {
void require_dim(int dim) {
  if (dim < 3) fail(Errc::BadDimension, "dimension must be at least 3, got " + std::to_string(dim));
}
}  // namespace

double critical_exponent(int dim) {
  require_dim(dim);
  return 2.0 * dim / (dim - 2.0);
}

double half_critical(int dim) {
  require_dim(dim);
  return static_cast<double>(dim) / (dim - 2.0);
}

double sobolev_constant(int dim) {
  require_dim(dim);
  // Talenti: S = N(N-2) pi (Gamma(N/2)/Gamma(N))^{2/N}.
  const double n = dim;
  return n * (n - 2.0) * M_PI *
         std::exp((2.0 / n) * (std::lgamma(n / 2.0) - std::lgamma(n)));
}

double critical_curve_coeff(int dim) {
  return std::pow(sobolev_constant(dim), -half_critical(dim));
}

double unit_sphere_area(int dim) {
  require_dim(dim);
  return 2.0 * std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0);
}

}  // namespace kirchhoff
