#pragma once

namespace kirchhoff {

/// Critical Sobolev exponent 2* = 2N/(N-2).
double critical_exponent(int dim);

/// Half the critical exponent, N/(N-2). Exponents of the nonlocal term are
/// compared against this value throughout.
double half_critical(int dim);

/// Sharp constant S of the Sobolev inequality
///   \int |grad u|^2 >= S (\int |u|^{2*})^{2/2*}  on R^N (Talenti),
/// which is also the domain-independent constant for any bounded domain.
double sobolev_constant(int dim);

/// S^{-2*/2}, the coefficient of the critical comparison curve t^{2*/2-1}.
double critical_curve_coeff(int dim);

/// Surface area of the unit sphere S^{N-1}, i.e. 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dim);

}  // namespace kirchhoff
