#include "adoption/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace adoption::stats {

Descriptives describe(std::span<const double> xs) {
  Descriptives d;
  d.n = xs.size();
  if (xs.empty()) return d;
  d.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return d;
  double ss = 0.0;
  for (double x : xs) ss += (x - d.mean) * (x - d.mean);
  d.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return d;
}

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// I_x(a, b) given both x and 1 - x, so callers can pass an exactly computed
// complement.
double incomplete_beta_split(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log(one_minus_x) - log_beta(a, b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

// P(T > |t|) for one tail.
double upper_tail(double t, double df) {
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double one_minus_x = t2 / (df + t2);
  return 0.5 * incomplete_beta_split(df / 2.0, 0.5, x, one_minus_x);
}

bool all_equal(std::span<const double> xs) {
  return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) == xs.end();
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::domain_error("incomplete_beta: a and b must be positive");
  if (x < 0.0 || x > 1.0) throw std::domain_error("incomplete_beta: x outside [0, 1]");
  return incomplete_beta_split(a, b, x, 1.0 - x);
}

double t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("t_cdf: df must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail = upper_tail(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("two_sided_p: df must be positive");
  if (std::isinf(t)) return 0.0;
  return std::clamp(2.0 * upper_tail(std::fabs(t), df), 0.0, 1.0);
}

TestOutcome paired_t(std::span<const double> diffs) {
  if (diffs.size() < 2) throw DegenerateSample("paired t-test needs at least two pairs");
  if (all_equal(diffs)) throw DegenerateSample("paired t-test: all differences are equal");
  const Descriptives d = describe(diffs);
  const double n = static_cast<double>(d.n);
  TestOutcome out;
  out.t = d.mean / (d.sd / std::sqrt(n));
  out.df = n - 1.0;
  out.p = two_sided_p(out.t, out.df);
  out.effect = d.mean / d.sd;
  return out;
}

StatResult compare_paired(std::span<const double> no_ai, std::span<const double> ai) {
  if (no_ai.size() != ai.size()) throw std::invalid_argument("compare_paired: groups differ in size");
  std::vector<double> diffs(ai.size());
  for (std::size_t i = 0; i < ai.size(); ++i) diffs[i] = ai[i] - no_ai[i];
  const TestOutcome test = paired_t(diffs);
  const Descriptives a = describe(no_ai);
  const Descriptives b = describe(ai);
  StatResult r;
  r.m_no_ai = a.mean;
  r.sd_no_ai = a.sd;
  r.m_ai = b.mean;
  r.sd_ai = b.sd;
  r.delta = r.m_ai - r.m_no_ai;
  r.t = test.t;
  r.df = test.df;
  r.p = test.p;
  r.effect = test.effect;
  r.significant = r.p < kAlpha;
  r.n_no_ai = a.n;
  r.n_ai = b.n;
  return r;
}

StatResult independent_t(std::span<const double> group_a, std::span<const double> group_b, Variance variant) {
  if (group_a.size() < 2 || group_b.size() < 2) {
    throw DegenerateSample("independent t-test needs at least two observations per group");
  }
  const Descriptives a = describe(group_a);
  const Descriptives b = describe(group_b);
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double va = a.sd * a.sd;
  const double vb = b.sd * b.sd;
  const double pooled_var = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
  if (pooled_var == 0.0) throw DegenerateSample("independent t-test: zero pooled variance");

  StatResult r;
  r.m_no_ai = a.mean;
  r.sd_no_ai = a.sd;
  r.m_ai = b.mean;
  r.sd_ai = b.sd;
  r.delta = r.m_ai - r.m_no_ai;
  r.n_no_ai = a.n;
  r.n_ai = b.n;
  if (variant == Variance::kPooled) {
    r.t = r.delta / std::sqrt(pooled_var * (1.0 / na + 1.0 / nb));
    r.df = na + nb - 2.0;
  } else {
    const double sa = va / na;
    const double sb = vb / nb;
    r.t = r.delta / std::sqrt(sa + sb);
    r.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  }
  r.p = two_sided_p(r.t, r.df);
  r.effect = r.delta / std::sqrt(pooled_var);
  r.significant = r.p < kAlpha;
  return r;
}

double tlx_total(std::span<const double> items) {
  if (items.size() != 6) {
    throw std::invalid_argument("tlx_total expects exactly 6 ratings, got " + std::to_string(items.size()));
  }
  return std::accumulate(items.begin(), items.end(), 0.0) / 6.0;
}

}  // namespace adoption::stats
