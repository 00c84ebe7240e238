#include "srw/eta_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "srw/errors.hpp"

namespace srw {
namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

// Up-step probability in the requested precision, from the same double
// log-weights the samplers use. q(x) = 1 - p(x) equals p(-x) exactly, so the
// down mass is always computed as an up mass to avoid cancellation.
template <class R>
R up_prob(const WeightFunction& w, long long x) {
  using std::exp;
  R lr = R(w.log_weight(x)) - R(w.log_weight(-x));
  return R(1) / (R(1) + exp(lr));
}

template <class R>
struct Lattice {
  int x_min = 0;
  int x_max = 0;
  std::vector<std::vector<R>> rows;  // rows[i][j]: x = x_min+i, y = x_min+j
  std::vector<R> trunc;              // pre-normalization mass outside window
  std::vector<R> rho;                // stationary law over the window
  R rho_tail = R(0);                 // stationary mass outside the window
  R z = R(0);
};

template <class R>
Lattice<R> build_lattice(const WeightFunction& w, const KernelOptions& opt) {
  R thr = R(opt.max_truncation);
  int lo = opt.x_min;
  int hi = opt.x_max;
  // The worst in-window tail sits at x = x_max (shortest scan product); the
  // bottom edge leaks only through its one-step down move.
  while (up_prob<R>(w, hi) * up_prob<R>(w, hi + 1) > thr) {
    hi += 40;
    if (hi > opt.span_cap)
      throw ConfigError("kernel window exceeds span cap " +
                        std::to_string(opt.span_cap) +
                        "; weight decays too slowly");
  }
  while (up_prob<R>(w, -lo) > thr) {
    lo -= 40;
    if (-lo > opt.span_cap)
      throw ConfigError("kernel window exceeds span cap " +
                        std::to_string(opt.span_cap) +
                        "; weight decays too slowly");
  }

  Lattice<R> lat;
  lat.x_min = lo;
  lat.x_max = hi;
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);

  std::vector<R> p(width + 1), q(width + 1);  // index z - lo, z in [lo, hi+1]
  for (int z = lo; z <= hi + 1; ++z) {
    p[static_cast<std::size_t>(z - lo)] = up_prob<R>(w, z);
    q[static_cast<std::size_t>(z - lo)] = up_prob<R>(w, -z);
  }
  auto p_at = [&](int z) { return p[static_cast<std::size_t>(z - lo)]; };
  auto q_at = [&](int z) { return q[static_cast<std::size_t>(z - lo)]; };

  lat.rows.assign(width, std::vector<R>(width, R(0)));
  lat.trunc.assign(width, R(0));
  for (int x = lo; x <= hi; ++x) {
    auto i = static_cast<std::size_t>(x - lo);
    auto& row = lat.rows[i];
    R out = R(0);
    if (x == lo)
      out += q_at(x);  // y = x - 1 falls off the bottom edge
    else
      row[i - 1] = q_at(x);
    R prod = R(1);
    for (int y = x; y <= hi; ++y) {
      prod *= p_at(y);
      row[static_cast<std::size_t>(y - lo)] = prod * q_at(y + 1);
    }
    out += prod * p_at(hi + 1);  // y > x_max scan tail
    lat.trunc[i] = out;
    R sum = R(0);
    for (const R& v : row) sum += v;
    for (R& v : row) v /= sum;
  }

  // Stationary terms t(n) = prod_{z=1}^{n} w(-z)/w(z), carried far enough for
  // both the normalization and the window fill.
  const int n_window = std::max(hi, -lo - 1);
  std::vector<R> terms{R(1)};
  lat.z = R(1);
  bool converged = false;
  for (int n = 1; n <= 1000000; ++n) {
    using std::exp;
    R next = terms.back() * exp(-R(w.log_ratio(n)));
    terms.push_back(next);
    if (!converged) lat.z += next;
    if (next < R(1e-140)) converged = true;
    if (converged && n >= n_window) break;
    if (n == 1000000)
      throw ConfigError("stationary series did not converge within 1e6 terms");
  }
  lat.z *= 2;

  lat.rho.assign(width, R(0));
  R in_window = R(0);
  for (int x = lo; x <= hi; ++x) {
    std::size_t n = static_cast<std::size_t>(x >= 0 ? x : -1 - x);
    R value = (n < terms.size() ? terms[n] : R(0)) / lat.z;
    lat.rho[static_cast<std::size_t>(x - lo)] = value;
    in_window += value;
  }
  lat.rho_tail = R(1) - in_window;
  if (lat.rho_tail < R(0)) lat.rho_tail = R(0);
  return lat;
}

// One kernel step of a window distribution; rows are zero below y = x - 1,
// so the inner loop starts there.
template <class R>
std::vector<R> kernel_step(const Lattice<R>& lat, const std::vector<R>& mu) {
  std::vector<R> next(mu.size(), R(0));
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0) continue;
    const auto& row = lat.rows[i];
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < mu.size(); ++j)
      next[j] += mu[i] * row[j];
  }
  return next;
}

template <class R>
std::vector<R> point_mass_at_zero(const Lattice<R>& lat) {
  std::vector<R> mu(lat.rows.size(), R(0));
  if (lat.x_min > 0 || lat.x_max < 0)
    throw ConfigError("kernel window does not contain state 0");
  mu[static_cast<std::size_t>(-lat.x_min)] = R(1);
  return mu;
}

}  // namespace

EtaKernel::EtaKernel(const WeightFunction& w, KernelOptions opt) {
  auto lat = build_lattice<double>(w, opt);
  x_min_ = lat.x_min;
  x_max_ = lat.x_max;
  rows_ = std::move(lat.rows);
  trunc_ = std::move(lat.trunc);
}

double EtaKernel::prob(int x, int y) const {
  if (x < x_min_ || x > x_max_ || y < x_min_ || y > x_max_ || y < x - 1)
    return 0.0;
  return rows_[static_cast<std::size_t>(x - x_min_)]
              [static_cast<std::size_t>(y - x_min_)];
}

double EtaKernel::truncation_mass(int x) const {
  if (x < x_min_ || x > x_max_) return 0.0;
  return trunc_[static_cast<std::size_t>(x - x_min_)];
}

double EtaKernel::max_truncation_mass() const {
  double worst = 0.0;
  for (double t : trunc_) worst = std::max(worst, t);
  return worst;
}

StationaryLaw::StationaryLaw(const WeightFunction& w) {
  terms_.push_back(1.0);
  double half_z = 1.0;
  for (int n = 1;; ++n) {
    double next = terms_.back() * std::exp(-w.log_ratio(n));
    if (!(next > 1e-320)) break;  // underflow: tail holds no double mass
    terms_.push_back(next);
    half_z += next;
    if (next < 1e-22 && n >= 64) break;
    if (n >= 200000)
      throw ConfigError("stationary series did not converge within 2e5 terms");
  }
  z_ = 2.0 * half_z;
  range_ = static_cast<int>(terms_.size()) - 1;

  cdf_.reserve(2 * terms_.size());
  double acc = 0.0;
  for (std::int64_t x = min_x(); x <= max_x(); ++x) {
    acc += prob_unnormalized(x);
    cdf_.push_back(acc);
  }
  for (double& c : cdf_) c /= acc;
}

double StationaryLaw::prob(std::int64_t x) const {
  return prob_unnormalized(x) / z_;
}

double StationaryLaw::prob_unnormalized(std::int64_t x) const {
  std::int64_t n = x >= 0 ? x : -1 - x;
  if (n >= static_cast<std::int64_t>(terms_.size())) return 0.0;
  return terms_[static_cast<std::size_t>(n)];
}

double StationaryLaw::mean() const {
  double acc = 0.0;
  for (std::int64_t x = min_x(); x <= max_x(); ++x)
    acc += static_cast<double>(x) * prob(x);
  return acc;
}

std::int64_t StationaryLaw::sample(Rng& rng) const {
  double u = rng.uniform01();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return min_x() + (it - cdf_.begin());
}

std::vector<TvPoint> tv_decay_curve(const WeightFunction& w, int m_max,
                                    KernelOptions opt) {
  auto lat = build_lattice<Real>(w, opt);
  std::vector<Real> mu = point_mass_at_zero(lat);
  std::vector<TvPoint> out;
  out.reserve(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) {
    using std::abs;
    using std::log;
    Real acc = lat.rho_tail;
    for (std::size_t i = 0; i < mu.size(); ++i) acc += abs(mu[i] - lat.rho[i]);
    Real tv = acc / 2;
    out.push_back({m, static_cast<double>(tv),
                   tv > 0 ? static_cast<double>(log(tv))
                          : -std::numeric_limits<double>::infinity()});
    if (m < m_max) mu = kernel_step(lat, mu);
  }
  return out;
}

double stationarity_l1_gap(const WeightFunction& w, KernelOptions opt) {
  auto lat = build_lattice<Real>(w, opt);
  auto next = kernel_step(lat, lat.rho);
  using std::abs;
  Real gap = Real(0);
  for (std::size_t i = 0; i < next.size(); ++i) gap += abs(next[i] - lat.rho[i]);
  return static_cast<double>(gap);
}

DominationReport check_stationary_domination(const WeightFunction& w,
                                             std::span<const int> ms,
                                             double rel_tol, KernelOptions opt) {
  auto lat = build_lattice<Real>(w, opt);
  int m_top = 0;
  for (int m : ms) m_top = std::max(m_top, m);
  std::vector<Real> mu = point_mass_at_zero(lat);

  DominationReport report;
  report.min_relative_margin = std::numeric_limits<double>::infinity();
  const Real rho0 = lat.rho[static_cast<std::size_t>(-lat.x_min)];
  for (int m = 1; m <= m_top; ++m) {
    mu = kernel_step(lat, mu);
    if (std::find(ms.begin(), ms.end(), m) == ms.end()) continue;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      Real bound = lat.rho[i] / rho0;
      double margin = static_cast<double>((bound - mu[i]) / bound);
      ++report.n_checked;
      if (margin < report.min_relative_margin) {
        report.min_relative_margin = margin;
        report.worst_m = m;
        report.worst_y = lat.x_min + static_cast<int>(i);
      }
      if (mu[i] > bound * (1 + Real(rel_tol))) report.ok = false;
    }
  }
  return report;
}

}  // namespace srw
