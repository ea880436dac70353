#include "kirchhoff/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/sobolev.hpp"

namespace kirchhoff {

namespace {

constexpr double kExponentMergeTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptyTerm: return "EmptyTerm";
    case Errc::BadExponent: return "BadExponent";
    case Errc::NegativeArgument: return "NegativeArgument";
    case Errc::BadDimension: return "BadDimension";
    case Errc::MissingEigenvalue: return "MissingEigenvalue";
    case Errc::RatioNotMonotone: return "RatioNotMonotone";
    case Errc::BracketNotFound: return "BracketNotFound";
    case Errc::BadParameters: return "BadParameters";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::IterationDiverged: return "IterationDiverged";
    case Errc::GeometryViolated: return "GeometryViolated";
    case Errc::NoDivergenceDetected: return "NoDivergenceDetected";
    case Errc::UnsupportedCase: return "UnsupportedCase";
    case Errc::SecondSolutionNotFound: return "SecondSolutionNotFound";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Error";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
    case Tri::Undecidable: return "undecidable";
  }
  return "?";
}

const char* regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::SubcriticalThreshold: return "SubcriticalThreshold";
    case RegimeTag::BorderlineThreshold: return "BorderlineThreshold";
    case RegimeTag::BorderlineCritical: return "BorderlineCritical";
    case RegimeTag::Coercive: return "Coercive";
    case RegimeTag::Unclassified: return "Unclassified";
  }
  return "?";
}

NonlocalTerm NonlocalTerm::power_sum(std::vector<PowerTerm> terms) {
  if (terms.empty()) fail(Errc::EmptyTerm, "no terms given");
  for (const auto& t : terms) {
    if (!(t.exponent >= 1.0))
      fail(Errc::BadExponent, "exponent " + fmt(t.exponent) + " < 1");
    if (!(t.coeff >= 0.0) || !std::isfinite(t.coeff))
      fail(Errc::BadExponent, "coefficient " + fmt(t.coeff) + " must be a nonnegative real");
  }
  std::sort(terms.begin(), terms.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  std::vector<PowerTerm> merged;
  for (const auto& t : terms) {
    if (!merged.empty() &&
        std::abs(t.exponent - merged.back().exponent) <=
            kExponentMergeTol * std::max(1.0, std::abs(t.exponent))) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PowerTerm& t) { return t.coeff == 0.0; });
  if (merged.empty()) fail(Errc::EmptyTerm, "all coefficients are zero");
  return NonlocalTerm(std::move(merged));
}

double NonlocalTerm::h(double t) const {
  double s = 0.0;
  for (const auto& p : terms_)
    s += p.coeff * (p.exponent == 1.0 ? 1.0 : std::pow(t, p.exponent - 1.0));
  return s;
}

double NonlocalTerm::h_prime(double t) const {
  double s = 0.0;
  for (const auto& p : terms_) {
    if (p.exponent == 1.0) continue;
    s += p.coeff * (p.exponent - 1.0) * std::pow(t, p.exponent - 2.0);
  }
  return s;
}

double NonlocalTerm::H(double t) const {
  double s = 0.0;
  for (const auto& p : terms_) s += p.coeff / p.exponent * std::pow(t, p.exponent);
  return s;
}

double NonlocalTerm::k_coeff(std::size_t i, int dim) const {
  const auto& p = terms_.at(i);
  return p.coeff * (0.5 / p.exponent - 1.0 / critical_exponent(dim));
}

double NonlocalTerm::K(double t, int dim) const {
  double s = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    s += k_coeff(i, dim) * std::pow(t, terms_[i].exponent);
  return s;
}

std::optional<double> NonlocalTerm::coeff_at(double gamma) const {
  for (const auto& p : terms_)
    if (std::abs(p.exponent - gamma) <= kExponentMergeTol * std::max(1.0, std::abs(gamma)))
      return p.coeff;
  return std::nullopt;
}

bool NonlocalTerm::is_two_power() const {
  if (terms_.size() == 1) return true;
  return terms_.size() == 2 && terms_.front().exponent == 1.0;
}

std::string NonlocalTerm::to_string() const {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    const double e = terms_[i].exponent - 1.0;
    os << terms_[i].coeff;
    if (e == 1.0)
      os << "*t";
    else if (e != 0.0)
      os << "*t^" << e;
  }
  return os.str();
}

HValues evaluate(const NonlocalTerm& term, double t, int dim) {
  if (!(t >= 0.0)) fail(Errc::NegativeArgument, "t = " + fmt(t));
  const double h = term.h(t);
  const double H = term.H(t);
  const double k_direct = 0.5 * H - t * h / critical_exponent(dim);
  const double k_terms = term.K(t, dim);
  if (std::abs(k_direct - k_terms) > 1e-13 * std::max({1.0, std::abms := 0.0, 0.0}))
    fail(Errc::BadParameters, "internal K mismatch");
  return HValues{h, H, k_direct};
}

double ratio_min(const NonlocalTerm& term, int dim) {
  const double p = half_critical(dim) - 1.0;  // exponent of the comparison curve
  // ratio(e^x) = sum a_i e^{(gamma_i-1-p)x} is convex in x.
  auto ratio_log = [&](double x) {
    double s = 0.0;
    for (const auto& q : term.terms())
      s += q.coeff * std::exp((q.exponent - 1.0 - p) * x);
    return s;
  };
  double lo = std::log(1e-12), hi = std::log(1e12);
  for (int it = 0; it < 400; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (ratio_log(m1) < ratio_log(m2))
      hi = m2;
    else
      lo = m1;
    if (hi - lo < 1e-13) break;
  }
  return ratio_log(0.5 * (lo + hi));
}

bool two_power_coercive(double a, double b, double gamma, int dim) {
  const double qh = half_critical(dim);
  if (!(gamma > qh)) fail(Errc::BadParameters, "closed-form predicate needs gamma > 2*/2");
  if (!(a > 0.0) || !(b > 0.0)) return false;
  const double S = sobolev_constant(dim);
  const double lhs = std::pow(a, gamma - qh) * std::pow(b, qh - 1.0);
  const double rhs = std::pow(gamma - qh, gamma - qh) * std::pow(qh - 1.0, qh - 1.0) /
                     std::pow(gamma - 1.0, gamma - 1.0) * std::pow(S, -qh * (gamma - 1.0));
  return lhs > rhs;
}

Regime classify_regime(const NonlocalTerm& term, int dim) {
  const double qh = half_critical(dim);
  const double ccrit = critical_curve_coeff(dim);
  const double gmax = term.max_exponent();
  const double tie_tol = 1e-12;

  if (gmax < qh * (1.0 - tie_tol))
    return {RegimeTag::SubcriticalThreshold,
            "max exponent " + fmt(gmax) + " < 2*/2 = " + fmt(qh)};

  if (std::abs(gmax - qh) <= tie_tol * qh) {
    const double lead = term.terms().back().coeff;
    if (lead < ccrit * (1.0 - tie_tol))
      return {RegimeTag::BorderlineThreshold,
              "leading coefficient " + fmt(lead) + " < S^{-2*/2} = " + fmt(ccrit)};
    if (lead > ccrit * (1.0 + tie_tol))
      return {RegimeTag::Coercive,
              "leading coefficient " + fmt(lead) + " > S^{-2*/2} = " + fmt(ccrit)};
    if (term.size() > 1)
      return {RegimeTag::BorderlineCritical,
              "leading coefficient equals S^{-2*/2}; lower-order terms decide"};
    return {RegimeTag::Unclassified, "single power with coefficient equal to S^{-2*/2}"};
  }

  // Supercritical leading exponent: the ratio h/t^{2*/2-1} attains a
  // positive minimum; the sign of min - S^{-2*/2} decides.
  double m;
  if (term.is_two_power() && term.size() == 2 && term.min_exponent() == 1.0) {
    const double a = term.terms()[0].coeff, b = term.terms()[1].coeff;
    const double g = term.terms()[1].exponent;
    const double u = qh - 1.0, v = g - qh;
    const double tstar = std::pow(a * u / (b * v), 1.0 / (u + v));
    m = a * std::pow(tstar, -u) + b * std::pow(tstar, v);
  } else if (term.size() == 1) {
    // pure supercritical power: ratio -> 0 at t -> 0
    m = 0.0;
  } else {
    m = ratio_min(term, dim);
  }
  if (m > ccrit * (1.0 + 1e-9))
    return {RegimeTag::Coercive, "min_t h(t)/t^{2*/2-1} = " + fmt(m) +
                                     " > S^{-2*/2} = " + fmt(ccrit)};
  if (m < ccrit * (1.0 - 1e-9))
    return {RegimeTag::Unclassified,
            "supercritical leading exponent but the ratio dips below S^{-2*/2}; "
            "admissible set is nonempty and bounded"};
  return {RegimeTag::Unclassified, "ratio minimum within tolerance of S^{-2*/2}"};
}

double PowerNonlinearity::F(double t) const {
  const double at = std::abs(t);
  return 0.5 * lambda * t * t + mu / (2.0 * gamma_f) * std::pow(at, 2.0 * gamma_f) +
         nu / q * std::pow(at, q);
}

double PowerNonlinearity::f(double t) const {
  const double at = std::abs(t);
  double s = lambda * t;
  if (mu != 0.0) s += mu * std::pow(at, 2.0 * gamma_f - 2.0) * t;
  if (nu != 0.0) s += nu * std::pow(at, q - 2.0) * t;
  return s;
}

double PowerNonlinearity::f_prime(double t) const {
  const double at = std::abs(t);
  double s = lambda;
  if (mu != 0.0) s += mu * (2.0 * gamma_f - 1.0) * std::pow(at, 2.0 * gamma_f - 2.0);
  if (nu != 0.0) s += nu * (q - 1.0) * std::pow(at, q - 2.0);
  return s;
}

std::vector<std::pair<double, double>> PowerNonlinearity::deficit_terms(int dim) const {
  const double ts = critical_exponent(dim);
  std::vector<std::pair<double, double>> out;
  auto push = [&](double e, double c) {
    if (c <= 0.0) return;
    for (auto& [ee, cc] : out)
      if (std::abs(ee - e) <= 1e-12 * std::max(1.0, e)) {
        cc += c;
        return;
      }
    out.emplace_back(e, c);
  };
  push(1.0, lambda * (0.5 - 1.0 / ts));
  push(gamma_f, mu * (0.5 / gamma_f - 1.0 / ts));
  push(0.5 * q, nu * (1.0 / q - 1.0 / ts));
  std::sort(out.begin(), out.end());
  return out;
}

double PowerNonlinearity::growth_p() const {
  double p = 2.0;  // the linear part
  if (mu > 0.0) p = std::max(p, 2.0 * gamma_f);
  if (nu > 0.0) p = std::max(p, q);
  return p;
}

void PowerNonlinearity::validate(int dim) const {
  const double ts = critical_exponent(dim);
  if (lambda < 0 || mu < 0 || nu < 0)
    fail(Errc::BadParameters, "nonlinearity coefficients must be nonnegative");
  if (mu > 0.0 && !(gamma_f >= 1.0 && 2.0 * gamma_f <= ts))
    fail(Errc::BadParameters, "gamma_f must satisfy 2 <= 2 gamma_f <= 2*");
  if (nu > 0.0 && !(q > 2.0 && q < ts))
    fail(Errc::BadParameters, "q must satisfy 2 < q < 2*");
}

bool EigenEstimates::has(double gamma) const {
  if (std::abs(gamma - 1.0) <= 1e-12) return lambda1 > 0.0;
  for (const auto& [g, v] : lambda_gamma)
    if (std::abs(g - gamma) <= 1e-9 * std::max(1.0, gamma)) return v > 0.0;
  return false;
}

double EigenEstimates::at(double gamma) const {
  if (std::abs(gamma - 1.0) <= 1e-12 && lambda1 > 0.0) return lambda1;
  for (const auto& [g, v] : lambda_gamma)
    if (std::abs(g - gamma) <= 1e-9 * std::max(1.0, gamma)) return v;
  fail(Errc::MissingEigenvalue, "no estimate for lambda_1(" + fmt(gamma) + ")");
}

namespace {

// Superadditivity sampling fallback: checks K(t1+t2) >= K(t1)+K(t2) - tol on
// a 20x20 logarithmic grid. Returns Fails with a witness, else Undecidable.
Tri superadditivity_sampled(const NonlocalTerm& term, int dim, std::string& notes) {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double t1 = std::pow(10.0, -8.0 + 16.0 * i / 19.0);
      const double t2 = std::pow(10.0, -8.0 + 16.0 * j / 19.0);
      const double lhs = term.K(t1 + t2, dim);
      const double rhs = term.K(t1, dim) + term.K(t2, dim);
      if (lhs < rhs - 1e-9 * (1.0 + std::abs(lhs))) {
        notes += "superadditivity counterexample at t1=" + fmt(t1) + ", t2=" + fmt(t2) + "; ";
        return Tri::Fails;
      }
    }
  }
  notes += "superadditivity sampling found no violation but is not a proof; ";
  return Tri::Undecidable;
}

struct WitnessPool {
  std::vector<DominationWitness> w;  // one per usable K power, mu initially 0

  int index_of(double e) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::abs(w[i].exponent - e) <= 1e-12 * std::max(1.0, e)) return static_cast<int>(i);
    return -1;
  }
  // nearest usable exponents strictly below / above e
  int below(double e) const {
    int best = -1;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i].exponent < e - 1e-12) best = static_cast<int>(i);
    return best;
  }
  int above(double e) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i].exponent > e + 1e-12) return static_cast<int>(i);
    return -1;
  }
};

// Largest c such that A t^{2u} + B t^{2v} >= c t^{2e} for all t >= 0, where
// u < e < v (weighted AM-GM, sharp for two terms).
double bracket_capacity(double A, double u, double B, double v, double e) {
  if (A <= 0.0 || B <= 0.0) return 0.0;
  const double theta = (v - e) / (v - u);
  return std::pow(A / theta, theta) * std::pow(B / (1.0 - theta), 1.0 - theta);
}

Tri check_domination(const NonlocalTerm& term, const PowerNonlinearity& nonlin, int dim,
                     const EigenEstimates& eigen, std::vector<DominationWitness>& witnesses,
                     std::string& notes) {
  const double qh = half_critical(dim);

  // K must stay bounded below by the witness sum for all t; a supercritical
  // power drives K to -infinity.
  if (term.max_exponent() > qh * (1.0 + 1e-12)) {
    notes += "domination fails: K has a negative-coefficient power (exponent > 2*/2); ";
    return Tri::Fails;
  }

  WitnessPool pool;
  for (std::size_t i = 0; i < term.terms().size(); ++i) {
    const double k = term.k_coeff(i, dim);
    const double g = term.terms()[i].exponent;
    if (k > 0.0 && g < qh - 1e-12) {
      if (!eigen.has(g))
        fail(Errc::MissingEigenvalue,
             "domination check needs lambda_1(" + fmt(g) + ")");
      pool.w.push_back({g, k, 0.0, eigen.at(g)});
    }
  }
  if (pool.w.empty()) {
    notes += "domination: no K power with positive coefficient below 2*/2; ";
    return nonlin.deficit_terms(dim).empty() ? Tri::Undecidable : Tri::Fails;
  }

  const auto deficits = nonlin.deficit_terms(dim);
  const double gmin = pool.w.front().exponent, gmax = pool.w.back().exponent;

  // Exponent-matched components first.
  std::vector<std::pair<double, double>> bracketed;
  for (const auto& [e, c] : deficits) {
    if (e < term.min_exponent() - 1e-12 || e > term.max_exponent() + 1e-12) {
      notes += "domination fails: nonlinearity exponent " + fmt(e) +
               " outside the K exponent range; ";
      return Tri::Fails;
    }
    const int i = pool.index_of(e);
    if (i >= 0) {
      pool.w[i].mu += c / pool.w[i].alpha;
    } else {
      bracketed.emplace_back(e, c);
    }
  }
  for (auto& w : pool.w) {
    if (w.mu <= w.mu_cap) continue;
    // Over budget at a matched exponent. At the extreme exponents the
    // comparison is forced near t -> 0 (resp. t -> infinity), so this is a
    // genuine failure; in the interior another split might work.
    if (std::abs(w.exponent - gmin) <= 1e-12 && std::abs(w.exponent - term.min_exponent()) <= 1e-12) {
      notes += "domination fails: budget " + fmt(w.mu) + " > lambda_1(" + fmt(w.exponent) +
               ") = " + fmt(w.mu_cap) + " at the smallest exponent; ";
      return Tri::Fails;
    }
    if (std::abs(w.exponent - gmax) <= 1e-12 && std::abs(w.exponent - term.max_exponent()) <= 1e-12) {
      notes += "domination fails: budget exceeded at the largest exponent; ";
      return Tri::Fails;
    }
    notes += "domination undecidable: matched budget exceeded at exponent " + fmt(w.exponent) + "; ";
    return Tri::Undecidable;
  }

  // Remaining components lean on the two neighbouring powers (two-term
  // minimization); budgets already спmitted above stay reserved.
  for (const auto& [e, c] : bracketed) {
    const int lo = pool.below(e), hi = pool.above(e);
    if (lo < 0 || hi < 0) {
      notes += "domination undecidable: exponent " + fmt(e) +
               " has no usable bracketing K powers; ";
      return Tri::Undecidable;
    }
    auto& L = pool.w[lo];
    auto& R = pool.w[hi];
    const double A = (L.mu_cap - L.mu) * L.alpha;
    const double B = (R.mu_cap - R.mu) * R.alpha;
    const double cap = bracket_capacity(A, L.exponent, B, R.exponent, e);
    if (!(c < cap)) {
      notes += "domination undecidable: two-term bound capacity " + fmt(cap) +
               " insufficient for coefficient " + fmt(c) + " at exponent " + fmt(e) + "; ";
      return Tri::Undecidable;
    }
    // Consume the fraction of each budget the sharp bound needs.
    const double scale = c / cap;
    L.mu += (L.mu_cap - L.mu) * scale;
    R.mu += (R.mu_cap - R.mu) * scale;
  }

  bool strict = false;
  for (const auto& w : pool.w) strict = strict || w.mu < w.mu_cap * (1.0 - 1e-15);
  if (!strict) {
    notes += "domination undecidable: every eigenvalue budget used exactly; ";
    return Tri::Undecidable;
  }
  witnesses = pool.w;
  return Tri::Holds;
}

}  // namespace

ConditionReport check_conditions(const NonlocalTerm& term, const PowerNonlinearity& nonlin,
                                 int dim, const EigenEstimates& eigen) {
  nonlin.validate(dim);
  const double qh = half_critical(dim);
  const double ccrit = critical_curve_coeff(dim);
  ConditionReport rep;

  rep.domination = check_domination(term, nonlin, dim, eigen, rep.witnesses, rep.notes);

  // Superadditivity: nonnegative K coefficients with exponents >= 1 give
  // (t1+t2)^g >= t1^g + t2^g termwise; otherwise sample.
  bool all_nonneg = true;
  for (std::size_t i = 0; i < term.size(); ++i) all_nonneg = all_nonneg && term.k_coeff(i, dim) >= 0.0;
  rep.superadditivity = all_nonneg ? Tri::Holds : superadditivity_sampled(term, dim, rep.notes);

  // Strictly decreasing ratio with the required limit window.
  {
    const double gmax = term.max_exponent();
    if (gmax > qh * (1.0 + 1e-12)) {
      rep.ratio_monotone = Tri::Fails;
      rep.notes += "ratio increases for large t (supercritical exponent); ";
    } else if (term.size() == 1 && std::abs(gmax - qh) <= 1e-12 * qh) {
      rep.ratio_monotone = Tri::Fails;
      rep.ratio_limit_infinity = term.terms()[0].coeff;
      rep.notes += "ratio is constant, not strictly decreasing; ";
    } else {
      const double b = std::abs(gmax - qh) <= 1e-12 * qh ? term.terms().back().coeff : 0.0;
      rep.ratio_limit_infinity = b;
      if (b < ccrit * (1.0 - 1e-12))
        rep.ratio_monotone = Tri::Holds;
      else if (b > ccrit * (1.0 + 1e-12)) {
        rep.ratio_monotone = Tri::Fails;
        rep.notes += "limit of the ratio at infinity is not below S^{-2*/2}; ";
      } else {
        rep.ratio_monotone = Tri::Undecidable;
        rep.notes += "ratio limit coincides with S^{-2*/2} within tolerance; ";
      }
    }
  }

  // Coercivity criterion, by clause.
  {
    const double p = nonlin.growth_p();
    const auto crit_coeff = term.coeff_at(qh);
    const double m = ratio_min(term, dim);

    if (term.is_two_power() && term.size() == 2 && term.min_exponent() == 1.0 &&
        term.max_exponent() > qh * (1.0 + 1e-12)) {
      rep.two_power_inequality = two_power_coercive(
          term.terms()[0].coeff, term.terms()[1].coeff, term.terms()[1].exponent, dim);
    }

    if (m > ccrit * (1.0 + 1e-9)) {
      rep.coercivity = Tri::Holds;
      rep.coercivity_clause = term.max_exponent() > qh * (1.0 + 1e-12) ? 3 : 2;
    } else if (crit_coeff && *crit_coeff >= ccrit * (1.0 - 1e-12)) {
      // Critical-slope coefficient at least S^{-2*/2}: an extra power in
      // (p/2, 2*/2) provides the coercive excess.
      bool extra = false;
      for (const auto& t : term.terms())
        extra = extra || (t.exponent > 0.5 * p + 1e-12 && t.exponent < qh - 1e-12 && t.coeff > 0.0);
      if (extra) {
        rep.coercivity = Tri::Holds;
        rep.coercivity_clause = 1;
      } else if (m < ccrit * (1.0 - 1e-9)) {
        rep.coercivity = Tri::Fails;
      } else {
        rep.coercivity = Tri::Undecidable;
        rep.notes += "critical-slope coefficient borderline and no usable extra power; ";
      }
    } else if (m < ccrit * (1.0 - 1e-9)) {
      rep.coercivity = Tri::Fails;
    } else {
      rep.coercivity = Tri::Undecidable;
      rep.notes += "ratio minimum within tolerance band of S^{-2*/2}; ";
    }
  }

  return rep;
}

}  // namespace kirchhoff
