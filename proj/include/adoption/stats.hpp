#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace adoption::stats {

inline constexpr double kAlpha = 0.05;

/// Too few observations or zero variance where a test needs spread.
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Descriptives {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator; 0 when n < 2
};

Descriptives describe(std::span<const double> xs);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

/// Student t CDF. Throws std::domain_error for df <= 0.
double t_cdf(double t, double df);

/// Two-sided p-value for |t| with df degrees of freedom.
double two_sided_p(double t, double df);

/// Outcome of one test: statistic, degrees of freedom, two-sided p and the
/// effect size (d_z for paired, Cohen's d for independent designs).
struct TestOutcome {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  double effect = 0.0;
};

/// One-sample t on per-participant differences (AI - no-AI).
TestOutcome paired_t(std::span<const double> diffs);

enum class Variance { kPooled, kWelch };

struct StatResult {
  double m_no_ai = 0.0;
  double sd_no_ai = 0.0;
  double m_ai = 0.0;
  double sd_ai = 0.0;
  double delta = 0.0;  // m_ai - m_no_ai
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  double effect = 0.0;
  bool significant = false;  // p < kAlpha
  std::size_t n_no_ai = 0;
  std::size_t n_ai = 0;
};

/// Paired comparison; no_ai[i] and ai[i] belong to the same participant.
StatResult compare_paired(std::span<const double> no_ai, std::span<const double> ai);

/// Independent-samples comparison of group_b (AI) against group_a (no-AI).
/// Cohen's d uses the pooled SD in both variants.
StatResult independent_t(std::span<const double> group_a, std::span<const double> group_b,
                         Variance variant = Variance::kPooled);

/// Unweighted mean of the six NASA-TLX items. Throws std::invalid_argument
/// unless exactly six ratings are given.
double tlx_total(std::span<const double> items);

}  // namespace adoption::stats
