#include "heatcoef/almost_iso.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "heatcoef/rng.hpp"

namespace heatcoef {

namespace {

constexpr double kOmegaTailTolerance = 1e-6;

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  return det == 0.0 ? 0.0 : (n * sxy - sx * sy) / det;
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::GT1:
      return "GT1";
    case Regime::LT1:
      return "LT1";
    case Regime::EQ1:
      return "EQ1";
  }
  return "unknown";
}

Regime regime_for(double alpha) {
  if (alpha > 1.0) return Regime::GT1;
  if (alpha < 1.0) return Regime::LT1;
  return Regime::EQ1;
}

double index_bound(int m, double alpha) { return 1.0 + 0.5 * m * std::min(alpha, 1.0); }

double zeta(double alpha) {
  if (!(alpha > 1.0)) throw std::domain_error("zeta: need alpha > 1");
  return boost::math::zeta(alpha);
}

// -- lim-sup statistic ------------------------------------------------------

double alpha_statistic(const std::vector<double>& flat1, const std::vector<double>& flat2,
                       double alpha, std::optional<std::uint64_t> length) {
  std::uint64_t n = 0;
  if (length) {
    n = *length;
    if (n > flat1.size() || n > flat2.size()) {
      throw std::invalid_argument("alpha_statistic: length mismatch, truncation length " +
                                  std::to_string(n) + " exceeds a spectrum (" +
                                  std::to_string(flat1.size()) + ", " + std::to_string(flat2.size()) + ")");
    }
  } else {
    if (flat1.size() != flat2.size()) {
      throw std::invalid_argument("alpha_statistic: length mismatch (" + std::to_string(flat1.size()) +
                                  " vs " + std::to_string(flat2.size()) + ")");
    }
    n = flat1.size();
  }
  if (n < 1000) throw std::invalid_argument("alpha_statistic: need at least 1000 eigenvalues");
  double worst = 0.0;
  for (std::uint64_t i = n / 2 + 1; i <= n; ++i) {
    const double d = std::fabs(flat1[i - 1] - flat2[i - 1]);
    worst = std::max(worst, d * std::pow(static_cast<double>(i), alpha));
  }
  return worst;
}

double alpha_statistic(const Spectrum& spec1, const Spectrum& spec2, double alpha,
                       std::optional<std::uint64_t> length) {
  return alpha_statistic(flatten(spec1), flatten(spec2), alpha, length);
}

DivergenceProbe divergence_probe(const std::vector<double>& flat1, const std::vector<double>& flat2,
                                 double alpha, const std::vector<std::uint64_t>& lengths) {
  DivergenceProbe probe;
  probe.lengths = lengths;
  std::vector<double> lx, ly;
  for (auto n : lengths) {
    const double s = alpha_statistic(flat1, flat2, alpha, n);
    probe.statistics.push_back(s);
    if (s > 0.0) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(s));
    }
  }
  probe.growth_exponent = lx.size() >= 2 ? slope(lx, ly) : 0.0;
  return probe;
}

AlphaReport alpha_report(const Spectrum& spec1, const Spectrum& spec2, double alpha) {
  if (spec1.m != spec2.m) throw std::invalid_argument("alpha_report: dimension mismatch");
  const auto f1 = flatten(spec1);
  const auto f2 = flatten(spec2);
  AlphaReport r;
  r.alpha_nominal = alpha;
  r.sup_statistic = alpha_statistic(f1, f2, alpha, std::min(f1.size(), f2.size()));
  r.regime = regime_for(alpha);
  r.index_bound = index_bound(spec1.m, alpha);
  return r;
}

Spectrum pointwise_min(const Spectrum& spec1, const Spectrum& spec2) {
  if (spec1.m != spec2.m || spec1.p != spec2.p) {
    throw std::invalid_argument("pointwise_min: spectra of different (m, p)");
  }
  const auto f1 = flatten(spec1);
  const auto f2 = flatten(spec2);
  const auto n = std::min(f1.size(), f2.size());
  std::vector<double> lo(n);
  for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(f1[i], f2[i]);
  return from_flat(spec1.m, spec1.p, spec1.volume, lo, "min(" + spec1.label + ", " + spec2.label + ")");
}

// -- omega ------------------------------------------------------------------

OmegaEvaluator::OmegaEvaluator(const Spectrum& spec_min, double alpha)
    : m_(spec_min.m), alpha_(alpha), eigenvalues_(flatten(spec_min)) {
  const auto n = eigenvalues_.size();
  if (n < 4) throw std::invalid_argument("omega: spectrum too short");
  weights_.resize(n);
  for (std::size_t i = 0; i < n; ++i) weights_[i] = std::pow(static_cast<double>(i + 1), -alpha);

  // Lower Weyl constant from the last quarter, halved.
  double floor = std::numeric_limits<double>::infinity();
  const double e = 2.0 / m_;
  for (std::size_t i = n - n / 4; i < n; ++i) {
    floor = std::min(floor, eigenvalues_[i] / std::pow(static_cast<double>(i + 1), e));
  }
  weyl_floor_ = 0.5 * floor;
}

double OmegaEvaluator::tail_bound(double t) const {
  if (!(weyl_floor_ > 0.0)) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(eigenvalues_.size());
  const double half_m = 0.5 * m_;
  const double ct = weyl_floor_ * t;
  const double x = ct * std::pow(n, 2.0 / m_);
  // sum_{i>n} e^{-c t i^{2/m}} i^{-alpha} <= integral from n to infinity
  if (alpha_ >= 0.0) {
    return std::pow(n, -alpha_) * half_m * std::pow(ct, -half_m) * boost::math::tgamma(half_m, x);
  }
  const double a = half_m * (1.0 - alpha_);
  return half_m * std::pow(ct, -a) * boost::math::tgamma(a, x);
}

OmegaValue OmegaEvaluator::operator()(double t) const {
  if (!(t > 0.0)) throw std::domain_error("omega: need t > 0");
  // Terms with lambda t beyond the double exponent range are exactly zero.
  const auto end = std::upper_bound(eigenvalues_.begin(), eigenvalues_.end(), 745.0 / t);
  long double sum = 0.0L;
  for (auto i = static_cast<std::size_t>(end - eigenvalues_.begin()); i-- > 0;) {
    sum += static_cast<long double>(weights_[i] * std::exp(-eigenvalues_[i] * t));
  }
  OmegaValue out{static_cast<double>(sum), tail_bound(t)};
  if (!(out.tail_bound <= kOmegaTailTolerance * out.value)) {
    throw TruncationError("omega: truncation too short for t = " + std::to_string(t));
  }
  return out;
}

OmegaValue omega(const Spectrum& spec_min, double alpha, double t) {
  return OmegaEvaluator(spec_min, alpha)(t);
}

std::vector<double> omega_grid(const Spectrum& spec_min, double alpha, int points) {
  double lambda1 = 0.0;
  for (const auto& l : spec_min.levels) {
    if (l.eigenvalue > 0.0) {
      lambda1 = l.eigenvalue;
      break;
    }
  }
  if (!(lambda1 > 0.0)) throw TruncationError("omega_grid: no positive eigenvalue");
  const OmegaEvaluator eval(spec_min, alpha);
  const auto safe = [&](double t) { return eval.tail_bound(t) <= 0.5 * kOmegaTailTolerance * eval(t).value; };
  const auto safe_checked = [&](double t) {
    try {
      return safe(t);
    } catch (const TruncationError&) {
      return false;
    }
  };
  const double t_hi = 0.02 / lambda1;
  double t_lo = t_hi / 1000.0;
  if (!safe_checked(t_lo)) {
    double lo = t_lo;
    double hi = t_hi;
    if (!safe_checked(hi)) throw TruncationError("omega_grid: spectrum too short");
    for (int i = 0; i < 50; ++i) {
      const double mid = std::sqrt(lo * hi);
      (safe_checked(mid) ? hi : lo) = mid;
    }
    t_lo = hi;
  }
  if (t_lo * 10.0 > t_hi) throw TruncationError("omega_grid: safe window narrower than a decade");
  auto grid = geometric_grid(t_lo, t_hi, points);
  std::reverse(grid.begin(), grid.end());  // decreasing t
  return grid;
}

RegimeReport regime_check(const Spectrum& spec_min, double alpha, const std::vector<double>& t_grid) {
  if (t_grid.size() < 5) throw std::invalid_argument("regime_check: need at least 5 grid points");
  RegimeReport r;
  r.alpha = alpha;
  r.m = spec_min.m;
  r.expected = regime_for(alpha);
  r.target_exponent = 0.5 * spec_min.m * (alpha - 1.0);
  r.t_grid = t_grid;
  std::sort(r.t_grid.begin(), r.t_grid.end(), std::greater<>());

  const OmegaEvaluator eval(spec_min, alpha);
  std::vector<double> lt, lw;
  for (double t : r.t_grid) {
    const double w = eval(t).value;
    r.omega_values.push_back(w);
    lt.push_back(std::log(t));
    lw.push_back(std::log(w));
    r.omega_max = std::max(r.omega_max, w);
    if (t < 1.0) r.log_ratio_max = std::max(r.log_ratio_max, w / std::log(1.0 / t));
  }
  r.exponent = slope(lt, lw);

  std::vector<double> it, id;
  for (std::size_t k = 0; k + 1 < r.t_grid.size(); ++k) {
    const double inc = r.omega_values[k + 1] - r.omega_values[k];
    if (inc > 0.0) {
      it.push_back(0.5 * (lt[k] + lt[k + 1]));
      id.push_back(std::log(inc));
    }
  }
  r.increment_exponent = it.size() >= 3 ? slope(it, id) : std::numeric_limits<double>::infinity();

  if (r.increment_exponent < -kLogRegimeBand) {
    r.classified = Regime::LT1;
  } else if (r.increment_exponent > kLogRegimeBand) {
    r.classified = Regime::GT1;
  } else {
    r.classified = Regime::EQ1;
  }

  std::ostringstream detail;
  bool regime_ok = false;
  switch (r.expected) {
    case Regime::LT1:
      regime_ok = std::fabs(r.exponent - r.target_exponent) <= 0.1 * std::fabs(r.target_exponent);
      detail << "power exponent " << r.exponent << " vs target " << r.target_exponent;
      break;
    case Regime::EQ1:
      regime_ok = r.log_ratio_max <= 1.1 * 0.5 * r.m;
      detail << "max omega/ln(1/t) " << r.log_ratio_max << " vs bound " << 1.1 * 0.5 * r.m;
      break;
    case Regime::GT1:
      r.zeta_bound = zeta(alpha);
      regime_ok = r.omega_max <= r.zeta_bound;
      detail << "max omega " << r.omega_max << " vs zeta(alpha) " << r.zeta_bound;
      break;
  }
  detail << "; increment exponent " << r.increment_exponent << " -> " << to_string(r.classified);
  r.detail = detail.str();
  r.pass = regime_ok && r.classified == r.expected;
  return r;
}

// -- perturbation -----------------------------------------------------------

Spectrum perturb(const Spectrum& spec, double alpha, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw std::domain_error("perturb: amplitude must be nonnegative");
  std::vector<double> out;
  out.reserve(spec.count());
  std::vector<double> draws;
  std::uint64_t start = 0;  // 0-based position of the level's first entry
  for (const auto& level : spec.levels) {
    const std::uint64_t mult = level.multiplicity;
    draws.resize(mult);
    for (std::uint64_t j = 0; j < mult; ++j) {
      draws[j] = SplitMix64::uniform_at(seed, start + j + 1, -1.0, 1.0);
    }
    std::sort(draws.begin(), draws.end());
    const double first_w = std::pow(static_cast<double>(start + 1), -alpha);
    const double last_w = std::pow(static_cast<double>(start + mult), -alpha);
    const double w = amplitude * std::min(first_w, last_w);
    for (std::uint64_t j = 0; j < mult; ++j) {
      const double i_alpha = std::pow(static_cast<double>(start + j + 1), alpha);
      double shifted = level.eigenvalue + w * draws[j];
      // Rounding can push a shift below one ulp past the bound; pull it back.
      while (std::fabs(shifted - level.eigenvalue) * i_alpha > amplitude) {
        shifted = std::nextafter(shifted, level.eigenvalue);
      }
      out.push_back(shifted);
    }
    // The clamp above can break the order inside the level, and sorting would
    // then move an entry onto a position with a tighter bound. Restore the
    // order by moving entries toward the level value only.
    const auto first = out.end() - static_cast<std::ptrdiff_t>(mult);
    for (auto it = out.end() - 1; it > first; --it) {
      if (*(it - 1) > level.eigenvalue) *(it - 1) = std::min(*(it - 1), *it);
    }
    for (auto it = first + 1; it < out.end(); ++it) {
      if (*it < level.eigenvalue) *it = std::max(*it, *(it - 1));
    }
    for (auto it = first; it < out.end(); ++it) *it = std::max(0.0, *it);
    start += mult;
  }
  std::sort(out.begin(), out.end());
  std::ostringstream label;
  label << spec.label << " | perturb(alpha=" << alpha << ",amplitude=" << amplitude << ",seed=" << seed
        << ",rng=splitmix64)";
  return from_flat(spec.m, spec.p, spec.volume, out, label.str());
}

// -- coefficient agreement --------------------------------------------------

AgreementReport coefficient_agreement(const Spectrum& spec1, const Spectrum& spec2, double alpha,
                                      int order, std::vector<double> t_grid) {
  if (spec1.m != spec2.m || spec1.p != spec2.p) {
    throw std::invalid_argument("coefficient_agreement: spectra of different (m, p)");
  }
  if (t_grid.empty()) t_grid = auto_grid(spec1);
  AgreementReport rep;
  rep.alpha = alpha;
  rep.index_bound = index_bound(spec1.m, alpha);
  rep.fit1 = fit_coefficients(spec1, order, t_grid);
  rep.fit2 = fit_coefficients(spec2, order, t_grid);
  rep.pass = true;
  for (int i = 0; i <= order; ++i) {
    const auto k = static_cast<std::size_t>(i);
    AgreementRow row;
    row.index = i;
    row.a1 = rep.fit1.a_hat[k];
    row.a2 = rep.fit2.a_hat[k];
    row.difference = std::fabs(row.a1 - row.a2);
    row.tolerance = kAgreementFactor * std::max(rep.fit1.uncertainty[k], rep.fit2.uncertainty[k]);
    row.agree = row.difference <= row.tolerance;
    row.required = static_cast<double>(i) < rep.index_bound;
    if (row.required && !row.agree) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace heatcoef
