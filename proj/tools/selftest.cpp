// Runtime sanity checks for an installed build: the t distribution against
// direct numeric integration, known test statistics, TLX arithmetic and
// metric identities. Prints one line per check.

#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "adoption/metrics.hpp"
#include "adoption/stats.hpp"
#include "adoption/task_texts.hpp"

namespace adoption::tools {

namespace {

double t_pdf(double x, double df) {
  const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df));
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth) {
  const double m = (a + b) / 2;
  const double flm = f((a + m) / 2), frm = f((m + b) / 2);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * eps) return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double integrated_t_cdf(double t, double df) {
  const auto f = [df](double x) { return t_pdf(x, df); };
  const double b = std::fabs(t);
  const double half = simpson(f, 0, b, f(0), f(b / 2), f(b), b / 6 * (f(0) + 4 * f(b / 2) + f(b)), 1e-14, 60);
  return t >= 0 ? 0.5 + half : 0.5 - half;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

}  // namespace

int run_selftest() {
  std::vector<Check> checks;
  char buf[160];

  double worst = 0;
  for (double df : {1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
    for (double t = -8.0; t <= 8.0 + 1e-12; t += 0.25) {
      worst = std::max(worst, std::fabs(stats::t_cdf(t, df) - integrated_t_cdf(t, df)));
    }
  }
  std::snprintf(buf, sizeof buf, "max |error| %.2e", worst);
  checks.push_back({"t_cdf vs numeric integration", worst < 1e-8, buf});

  const std::vector<double> diffs{1, 2, 3, 4, 5};
  const auto paired = stats::paired_t(diffs);
  std::snprintf(buf, sizeof buf, "t=%.4f p=%.6f d_z=%.4f", paired.t, paired.p, paired.effect);
  checks.push_back({"paired t on 1..5",
                    std::fabs(paired.t - 4.242640687) < 1e-6 && std::fabs(paired.p - 0.0132356) < 1e-6 &&
                        std::fabs(paired.effect - 1.897366596) < 1e-6,
                    buf});

  const auto ind = stats::independent_t(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6});
  std::snprintf(buf, sizeof buf, "t=%.4f p=%.6f d=%.4f", ind.t, ind.p, ind.effect);
  checks.push_back({"independent t on 1..3 vs 4..6",
                    std::fabs(ind.t - 3.674234614) < 1e-6 && std::fabs(ind.p - 0.0213116) < 1e-6 &&
                        std::fabs(ind.effect - 3.0) < 1e-9,
                    buf});

  const double tlx = stats::tlx_total(std::vector<double>{5.043, 2.435, 2.652, 3.478, 5.087, 2.957});
  std::snprintf(buf, sizeof buf, "%.4f", tlx);
  checks.push_back({"TLX total is the item mean", std::fabs(tlx - 3.609) <= 0.001, buf});

  const auto scorer = metrics::Scorer::offline();
  bool identity = true;
  for (const auto text : {tasks::kAnalyticalSuggestion, tasks::kCreativeSuggestion}) {
    const Document doc = scorer->analyze(std::string(text));
    const auto m = scorer->score(doc, doc);
    identity = identity && std::fabs(m.jaccard - 1) < 1e-9 && std::fabs(m.pos_tf_isf_cosine - 1) < 1e-9 &&
               std::fabs(*m.embedding_cosine - 1) < 1e-9;
  }
  checks.push_back({"metrics of a text against itself", identity, "jaccard, tf-isf, embedding = 1"});

  const Document a = scorer->analyze("the cat sat");
  const Document b = scorer->analyze("the dog sat down");
  const double j = metrics::jaccard(a, b);
  std::snprintf(buf, sizeof buf, "%.6f", j);
  checks.push_back({"jaccard of overlapping token sets", std::fabs(j - 2.0 / 5.0) < 1e-12, buf});

  bool all = true;
  for (const auto& c : checks) {
    std::printf("%s  %-36s %s\n", c.ok ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    all = all && c.ok;
  }
  return all ? 0 : 1;
}

}  // namespace adoption::tools
