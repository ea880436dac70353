#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kirchhoff {

struct PowerTerm {
  double coeff;     // a_i >= 0
  double exponent;  // gamma_i >= 1; the diffusion coefficient carries t^{gamma_i-1}
};

/// Nonlocal diffusion coefficient h(t) = sum_i a_i t^{gamma_i-1} with
/// nonnegative coefficients (at least one positive) and strictly increasing
/// exponents gamma_i >= 1. Immutable after construction.
class NonlocalTerm {
 public:
  /// Normalizing constructor: merges equal exponents, drops zero
  /// coefficients, sorts. Throws EmptyTerm / BadExponent.
  static NonlocalTerm power_sum(std::vector<PowerTerm> terms);

  const std::vector<PowerTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  double h(double t) const;
  double h_prime(double t) const;
  /// Primitive H(t) = int_0^t h = sum a_i t^{gamma_i} / gamma_i.
  double H(double t) const;
  /// K(t) = H(t)/2 - t h(t)/2*; equals sum_i k_i(dim) t^{gamma_i}.
  double K(double t, int dim) const;
  /// Coefficient of t^{gamma_i} in K: a_i (1/(2 gamma_i) - 1/2*).
  double k_coeff(std::size_t i, int dim) const;

  double min_exponent() const { return terms_.front().exponent; }
  double max_exponent() const { return terms_.back().exponent; }
  std::optional<double> coeff_at(double gamma) const;

  /// True when the term is a + b t^{gamma-1} (a possibly 0), i.e. at most one
  /// exponent above 1. Closed-form classification applies in that case.
  bool is_two_power() const;

  /// Rendered with the exponents of h itself (gamma_i - 1), matching the CLI
  /// term grammar, e.g. "1 + 2*t^1.5".
  std::string to_string() const;

 private:
  explicit NonlocalTerm(std::vector<PowerTerm> t) : terms_(std::move(t)) {}
  std::vector<PowerTerm> terms_;
};

struct HValues {
  double h;
  double H;
  double K;
};

/// Evaluates (h, H, K) at t >= 0. K is computed both as H/2 - t h/2* and via
/// per-term coefficients; the two must agree to 1e-13 relative.
HValues evaluate(const NonlocalTerm& term, double t, int dim);

enum class RegimeTag {
  SubcriticalThreshold,  // max exponent < 2*/2: finite positive threshold
  BorderlineThreshold,   // max exponent = 2*/2 with leading coeff < S^{-2*/2}
  BorderlineCritical,    // leading coeff = S^{-2*/2} with lower-order terms
  Coercive,              // h strictly dominates the critical curve
  Unclassified,
};
const char* regime_name(RegimeTag tag);

struct Regime {
  RegimeTag tag = RegimeTag::Unclassified;
  std::string detail;
};

Regime classify_regime(const NonlocalTerm& term, int dim);

/// inf_{t>0} h(t) / t^{2*/2-1}. The summand exponents make this convex in
/// log t, so a ternary search is exact up to tolerance.
double ratio_min(const NonlocalTerm& term, int dim);

/// Closed-form coercivity predicate for h = a + b t^{gamma-1}, gamma > 2*/2:
///   a^{gamma-2*/2} b^{2*/2-1} > (gamma-2*/2)^{gamma-2*/2} (2*/2-1)^{2*/2-1}
///                               / (gamma-1)^{gamma-1} * S^{-(2*/2)(gamma-1)}.
bool two_power_coercive(double a, double b, double gamma, int dim);

/// Local nonlinearity f(t) = lambda t + mu |t|^{2 gamma_f - 2} t
///                          + nu |t|^{q-2} t, all coefficients >= 0.
struct PowerNonlinearity {
  double lambda = 0.0;
  double mu = 0.0;
  double gamma_f = 2.0;  // constrained to [1, 2*/2]
  double nu = 0.0;
  double q = 3.0;  // constrained to (2, 2*)

  double F(double t) const;        // primitive of f
  double f(double t) const;
  double f_prime(double t) const;
  /// F(t) - t f(t)/2* = sum of c_e |t|^{2e}; returns the (exponent e, c_e)
  /// pairs with c_e > 0, merged by exponent.
  std::vector<std::pair<double, double>> deficit_terms(int dim) const;
  /// Smallest p with |f(t)| <= c1 |t|^{p-1} + c2.
  double growth_p() const;
  void validate(int dim) const;  // throws BadParameters
};

enum class Tri { Holds, Fails, Undecidable };
const char* tri_name(Tri t);

/// Eigenvalue inputs for the domination check: the first Dirichlet eigenvalue
/// and the nonlinear first eigenvalues lambda_1(gamma) for each witness
/// exponent.
struct EigenEstimates {
  double lambda1 = 0.0;
  std::map<double, double> lambda_gamma;

  bool has(double gamma) const;
  double at(double gamma) const;  // throws MissingEigenvalue
};

struct DominationWitness {
  double exponent;  // gamma_i of the K-term used
  double alpha;     // K coefficient backing the witness
  double mu;        // eigenvalue budget actually used
  double mu_cap;    // lambda_1(gamma_i) supplied by the caller
};

struct ConditionReport {
  /// K admits a power lower bound that dominates F - t f/2* through
  /// eigenvalue-weighted coefficients (with at least one strict budget).
  Tri domination = Tri::Undecidable;
  /// K(t1 + t2) >= K(t1) + K(t2).
  Tri superadditivity = Tri::Undecidable;
  /// h(t)/t^{2*/2-1} strictly decreasing with limit window
  /// 0 <= b < S^{-2*/2} < lim_{t->0}.
  Tri ratio_monotone = Tri::Undecidable;
  /// h dominates the critical curve (guarantees a coercive, bounded-below
  /// energy); clause records which structural criterion fired.
  Tri coercivity = Tri::Undecidable;
  int coercivity_clause = 0;  // 1: critical slope + extra power, 2: uniform
                              // supercritical slope, 3: strictly dominating tail
  std::optional<double> ratio_limit_infinity;
  std::vector<DominationWitness> witnesses;
  std::optional<bool> two_power_inequality;
  std::string notes;
};

ConditionReport check_conditions(const NonlocalTerm& term,
                                 const PowerNonlinearity& nonlin, int dim,
                                 const EigenEstimates& eigen);

}  // namespace kirchhoff
