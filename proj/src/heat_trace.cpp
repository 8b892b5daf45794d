#include "heatcoef/heat_trace.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "heatcoef/patodi.hpp"

namespace heatcoef {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHeatTailTolerance = 1e-9;

}  // namespace

std::uint64_t Spectrum::count() const {
  std::uint64_t n = 0;
  for (const auto& l : levels) n += l.multiplicity;
  return n;
}

void Spectrum::validate() const {
  if (m < 1) throw std::invalid_argument("spectrum: dimension must be positive");
  if (p < 0 || p > m) throw std::invalid_argument("spectrum: form degree outside [0, m]");
  if (!(volume > 0.0)) throw std::invalid_argument("spectrum: volume must be positive");
  if (levels.empty()) throw std::invalid_argument("spectrum: no levels");
  if (levels.front().eigenvalue < 0.0) throw std::invalid_argument("spectrum: negative eigenvalue");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].multiplicity < 1) throw std::invalid_argument("spectrum: zero multiplicity");
    if (!std::isfinite(levels[i].eigenvalue)) throw std::invalid_argument("spectrum: non-finite eigenvalue");
    if (i > 0 && !(levels[i].eigenvalue > levels[i - 1].eigenvalue)) {
      throw std::invalid_argument("spectrum: eigenvalues not strictly increasing at level " +
                                  std::to_string(i));
    }
  }
}

double sphere_volume(int m, double k) {
  if (m < 1 || !(k > 0.0)) throw std::domain_error("sphere_volume: need m >= 1, k > 0");
  const double md = static_cast<double>(m);
  const double unit = 2.0 * std::pow(std::numbers::pi, (md + 1.0) / 2.0) / std::tgamma((md + 1.0) / 2.0);
  return unit * std::pow(k, -md / 2.0);
}

Spectrum sphere_spectrum(int m, double k, int max_level) {
  if (m < 2) throw std::domain_error("sphere_spectrum: need m >= 2");
  if (!(k > 0.0)) throw std::domain_error("sphere_spectrum: need k > 0");
  if (max_level < 50) throw std::domain_error("sphere_spectrum: need max_level >= 50");
  Spectrum s;
  s.m = m;
  s.p = 0;
  s.volume = sphere_volume(m, k);
  s.label = "sphere(m=" + std::to_string(m) + ",k=" + std::to_string(k) +
            ",max_level=" + std::to_string(max_level) + ")";
  s.levels.reserve(static_cast<std::size_t>(max_level) + 1);
  for (std::int64_t l = 0; l <= max_level; ++l) {
    const BigInt mult = binom(l + m, m) - binom(l + m - 2, m);
    if (!mult.fits_ulong_p()) throw std::domain_error("sphere_spectrum: multiplicity overflow");
    s.levels.push_back({k * static_cast<double>(l) * static_cast<double>(l + m - 1), mult.get_ui()});
  }
  return s;
}

Spectrum torus_spectrum(int m, const std::vector<double>& side_lengths, double cutoff) {
  if (m < 1 || side_lengths.size() != static_cast<std::size_t>(m)) {
    throw std::domain_error("torus_spectrum: need m >= 1 side lengths");
  }
  for (double L : side_lengths) {
    if (!(L > 0.0)) throw std::domain_error("torus_spectrum: side lengths must be positive");
  }
  if (!(cutoff >= 0.0)) throw std::domain_error("torus_spectrum: cutoff must be nonnegative");

  std::vector<double> inv_l2(side_lengths.size());
  for (std::size_t j = 0; j < side_lengths.size(); ++j) {
    inv_l2[j] = kTwoPi * kTwoPi / (side_lengths[j] * side_lengths[j]);
  }

  std::vector<double> values;
  std::function<void(int, double)> walk = [&](int axis, double partial) {
    if (axis == m) {
      values.push_back(partial);
      if (values.size() > 100'000'000) throw std::domain_error("torus_spectrum: cutoff too large");
      return;
    }
    const double room = cutoff - partial;
    const auto vmax = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(room, 0.0) / inv_l2[axis])));
    for (std::int64_t v = -vmax; v <= vmax; ++v) {
      const double next = partial + inv_l2[axis] * static_cast<double>(v * v);
      if (next <= cutoff) walk(axis + 1, next);
    }
  };
  walk(0, 0.0);
  std::sort(values.begin(), values.end());

  double volume = 1.0;
  for (double L : side_lengths) volume *= L;

  Spectrum s;
  s.m = m;
  s.p = 0;
  s.volume = volume;
  s.label = "torus(m=" + std::to_string(m) + ",cutoff=" + std::to_string(cutoff) + ")";
  for (double v : values) {
    // lattice eigenvalues equal in exact arithmetic can differ in the last bits
    if (!s.levels.empty() &&
        std::fabs(v - s.levels.back().eigenvalue) <= 1e-12 * std::max(1.0, std::fabs(v))) {
      ++s.levels.back().multiplicity;
    } else {
      s.levels.push_back({v, 1});
    }
  }
  return s;
}

std::vector<double> flatten(const Spectrum& spec, std::uint64_t max_count) {
  const auto n = spec.count();
  if (n > max_count) {
    throw std::domain_error("flatten: " + std::to_string(n) + " eigenvalues exceed the limit of " +
                            std::to_string(max_count));
  }
  std::vector<double> out;
  out.reserve(n);
  for (const auto& l : spec.levels) out.insert(out.end(), l.multiplicity, l.eigenvalue);
  return out;
}

Spectrum from_flat(int m, int p, double volume, const std::vector<double>& sorted_eigenvalues,
                   std::string label) {
  Spectrum s;
  s.m = m;
  s.p = p;
  s.volume = volume;
  s.label = std::move(label);
  for (double v : sorted_eigenvalues) {
    if (!s.levels.empty() && v == s.levels.back().eigenvalue) {
      ++s.levels.back().multiplicity;
    } else {
      s.levels.push_back({v, 1});
    }
  }
  s.validate();
  return s;
}

double heat_trace_tail_bound(const Spectrum& spec, double t) {
  if (!(t > 0.0)) throw std::domain_error("heat trace needs t > 0");
  const double lambda_max = spec.levels.back().eigenvalue;
  if (!(lambda_max > 0.0)) return std::numeric_limits<double>::infinity();
  const double half_m = 0.5 * spec.m;

  // Growth constant from the last tenth of the levels.
  const std::size_t n_levels = spec.levels.size();
  const std::size_t first = n_levels - std::max<std::size_t>(1, n_levels / 10);
  std::uint64_t cumulative = 0;
  double growth = 0.0;
  for (std::size_t i = 0; i < n_levels; ++i) {
    cumulative += spec.levels[i].multiplicity;
    if (i >= first && spec.levels[i].eigenvalue > 0.0) {
      growth = std::max(growth, static_cast<double>(cumulative) /
                                    std::pow(spec.levels[i].eigenvalue, half_m));
    }
  }
  growth *= 2.0;
  // sum_{lambda > lambda_max} e^{-lambda t} <= C t^{-m/2} Gamma(m/2 + 1, lambda_max t)
  const double upper = boost::math::tgamma(half_m + 1.0, lambda_max * t);
  return growth * std::pow(t, -half_m) * upper;
}

HeatTraceValue heat_trace(const Spectrum& spec, double t) {
  if (!(t > 0.0)) throw std::domain_error("heat_trace: need t > 0");
  long double sum = 0.0L;
  for (auto it = spec.levels.rbegin(); it != spec.levels.rend(); ++it) {
    sum += static_cast<long double>(it->multiplicity) *
           std::exp(-static_cast<long double>(it->eigenvalue) * static_cast<long double>(t));
  }
  HeatTraceValue out{static_cast<double>(sum), heat_trace_tail_bound(spec, t)};
  if (!(out.tail_bound <= kHeatTailTolerance * out.value)) {
    throw TruncationError("heat_trace: " + std::to_string(spec.count()) +
                          " stored eigenvalues do not resolve t = " + std::to_string(t) +
                          " (tail bound " + std::to_string(out.tail_bound) + ")");
  }
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw std::domain_error("geometric_grid: need 0 < lo < hi and at least 2 points");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  grid.back() = hi;
  return grid;
}

double min_safe_t(const Spectrum& spec) {
  const auto safe = [&](double t) {
    try {
      heat_trace(spec, t);
      return true;
    } catch (const TruncationError&) {
      return false;
    }
  };
  double hi = 1.0;
  while (!safe(hi)) {
    hi *= 10.0;
    if (hi > 1e12) throw TruncationError("min_safe_t: spectrum too short for any t");
  }
  double lo = hi;
  while (safe(lo) && lo > 1e-14) lo /= 10.0;
  // bisect in log t: lo unsafe, hi safe
  for (int i = 0; i < 60; ++i) {
    const double mid = std::sqrt(lo * hi);
    (safe(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> auto_grid(const Spectrum& spec, int points) {
  double lambda1 = 0.0;
  for (const auto& l : spec.levels) {
    if (l.eigenvalue > 0.0) {
      lambda1 = l.eigenvalue;
      break;
    }
  }
  if (!(lambda1 > 0.0)) throw TruncationError("auto_grid: spectrum has no positive eigenvalue");
  const double t_max = 0.01 / lambda1;
  const double t_min = std::max(t_max / 50.0, 1.05 * min_safe_t(spec));
  if (t_min * 3.0 > t_max) {
    throw TruncationError("auto_grid: spectrum truncated too early for a small-t window");
  }
  return geometric_grid(t_min, t_max, points);
}

HeatTraceFit fit_coefficients(const Spectrum& spec, int order, const std::vector<double>& t_grid) {
  if (order < 0) throw std::domain_error("fit_coefficients: order must be nonnegative");
  const auto cols = static_cast<std::size_t>(order) + 1;
  if (t_grid.size() < 3 * cols) {
    throw std::domain_error("fit_coefficients: need at least 3(N+1) grid points");
  }
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::domain_error("fit_coefficients: grid must be strictly positive");
  }

  HeatTraceFit fit;
  fit.t_grid = t_grid;
  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
  const double t_min = *std::min_element(t_grid.begin(), t_grid.end());
  const double half_m = 0.5 * spec.m;

  const auto rows = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(cols));
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = t_grid[static_cast<std::size_t>(r)];
    const auto z = heat_trace(spec, t);
    fit.tail_bound = std::max(fit.tail_bound, z.tail_bound / z.value);
    y(r) = std::pow(4.0 * std::numbers::pi * t, half_m) * z.value;
    double col = 1.0;
    for (std::size_t c = 0; c < cols; ++c) {
      design(r, static_cast<Eigen::Index>(c)) = col;
      col *= t / t_max;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& sv = svd.singularValues();
  fit.condition = sv(0) / sv(sv.size() - 1);
  if (!(fit.condition <= kMaxFitCondition)) {
    throw FitError("fit_coefficients: design condition number " + std::to_string(fit.condition) +
                   " exceeds " + std::to_string(kMaxFitCondition));
  }

  const Eigen::VectorXd scaled = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd model = design * scaled;
  const Eigen::VectorXd resid = y - model;
  fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(rows));

  double t_pow = 1.0;
  double t_min_pow = 1.0;
  for (std::size_t c = 0; c < cols; ++c) {
    fit.a_hat.push_back(scaled(static_cast<Eigen::Index>(c)) / t_pow);
    fit.uncertainty.push_back(fit.residual / t_min_pow);
    t_pow *= t_max;
    t_min_pow *= t_min;
  }
  fit.rescaled_trace.assign(y.data(), y.data() + rows);
  fit.model.assign(model.data(), model.data() + rows);
  return fit;
}

double weyl_constant(const Spectrum& spec) {
  const auto total = spec.count();
  if (total < 1000) {
    throw std::domain_error("weyl_constant: need at least 1000 eigenvalues, have " +
                            std::to_string(total));
  }
  const double exponent = 2.0 / spec.m;
  const double half = 0.5 * static_cast<double>(total);
  // weighted least squares of ratio = c + d x, x = i^{-1/m}
  long double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::uint64_t before = 0;
  for (const auto& l : spec.levels) {
    const double mid = static_cast<double>(before) + 0.5 * (static_cast<double>(l.multiplicity) + 1.0);
    before += l.multiplicity;
    if (mid <= half) continue;
    const long double w = static_cast<long double>(l.multiplicity);
    const long double x = std::pow(mid, -1.0 / spec.m);
    const long double r = l.eigenvalue / std::pow(mid, exponent);
    sw += w;
    sx += w * x;
    sy += w * r;
    sxx += w * x * x;
    sxy += w * x * r;
  }
  const long double det = sw * sxx - sx * sx;
  if (std::fabs(det) <= 1e-30L * sw * sxx) return static_cast<double>(sy / sw);
  const long double c = (sxx * sy - sx * sxy) / det;
  return static_cast<double>(c);
}

double weyl_constant_exact(int m, int p, double volume) {
  const double md = static_cast<double>(m);
  const double binom_mp = binom(m, p).get_d();
  return 4.0 * std::numbers::pi * std::pow(std::tgamma(md / 2.0 + 1.0) / (binom_mp * volume), 2.0 / md);
}

double volume_from_weyl(int m, int p, double weyl) {
  const double md = static_cast<double>(m);
  const double binom_mp = binom(m, p).get_d();
  return std::tgamma(md / 2.0 + 1.0) / binom_mp * std::pow(4.0 * std::numbers::pi / weyl, md / 2.0);
}

}  // namespace heatcoef
