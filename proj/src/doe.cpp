#include "vibelab/doe.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vibelab/stats.hpp"

namespace vibelab {

void FactorialDesign::validate() const {
  const size_t k = factor_labels.size();
  if (k == 0) throw std::invalid_argument("design has no factors");
  if (runs.empty()) throw std::invalid_argument("design has no runs");
  for (const auto& run : runs) {
    if (run.size() != k)
      throw std::invalid_argument("design run width does not match the factor count");
    for (int level : run)
      if (level != -1 && level != 1)
        throw std::invalid_argument("design levels must be coded -1 or +1");
  }
  if (!responses.empty()) {
    if (responses.size() != runs.size())
      throw std::invalid_argument("responses must cover every run");
    for (const auto& reps : responses) {
      if (reps.empty())
        throw std::invalid_argument("every run needs at least one response replicate");
      for (double y : reps)
        if (!std::isfinite(y))
          throw std::invalid_argument("responses must be finite");
    }
  }
}

FactorialDesign full_factorial(int factor_count, std::vector<std::string> labels) {
  if (factor_count < 1 || factor_count > 20)
    throw std::domain_error("factor count must be between 1 and 20");
  if (!labels.empty() && labels.size() != static_cast<size_t>(factor_count))
    throw std::invalid_argument("label count does not match the factor count");

  FactorialDesign design;
  if (labels.empty()) {
    for (int j = 0; j < factor_count; ++j)
      design.factor_labels.push_back(std::string(1, static_cast<char>('A' + j)));
  } else {
    design.factor_labels = std::move(labels);
  }
  const size_t n = size_t{1} << factor_count;
  design.runs.resize(n);
  for (size_t r = 0; r < n; ++r) {
    design.runs[r].resize(factor_count);
    for (int j = 0; j < factor_count; ++j)
      design.runs[r][j] = (r >> j) & 1 ? 1 : -1;
  }
  return design;
}

namespace {

std::vector<RegressionTerm> model_terms(const FactorialDesign& design, int order) {
  std::vector<RegressionTerm> terms;
  terms.push_back({"(intercept)", {}});
  const size_t k = design.factor_count();
  for (size_t j = 0; j < k; ++j) terms.push_back({design.factor_labels[j], {j}});
  if (order >= 2) {
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        terms.push_back(
            {design.factor_labels[i] + ":" + design.factor_labels[j], {i, j}});
  }
  return terms;
}

double coded_value(const std::vector<int>& run, const RegressionTerm& term) {
  double v = 1.0;
  for (size_t f : term.factors) v *= static_cast<double>(run[f]);
  return v;
}

}  // namespace

EffectFit fit_effects(const FactorialDesign& design, int max_interaction_order) {
  design.validate();
  if (design.responses.empty())
    throw std::invalid_argument("fit_effects needs responses");
  if (max_interaction_order != 1 && max_interaction_order != 2)
    throw std::domain_error("max interaction order must be 1 or 2");

  EffectFit fit;
  fit.terms = model_terms(design, max_interaction_order);
  const size_t p = fit.terms.size();

  size_t rows = 0;
  for (const auto& reps : design.responses) rows += reps.size();
  if (rows < p)
    throw std::domain_error("model is singular: more terms than response rows");

  Eigen::MatrixXd x(rows, p);
  Eigen::VectorXd y(rows);
  size_t row = 0;
  for (size_t r = 0; r < design.runs.size(); ++r) {
    for (double rep : design.responses[r]) {
      for (size_t c = 0; c < p; ++c) x(row, c) = coded_value(design.runs[r], fit.terms[c]);
      y(row) = rep;
      ++row;
    }
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < static_cast<Eigen::Index>(p))
    throw std::domain_error("model is singular: design matrix is rank deficient");
  const Eigen::VectorXd beta = qr.solve(y);

  fit.coefficients.assign(beta.data(), beta.data() + p);
  fit.residual_df = static_cast<long>(rows) - static_cast<long>(p);

  if (fit.residual_df > 0) {
    const Eigen::VectorXd resid = y - x * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(fit.residual_df);
    fit.residual_stddev = std::sqrt(s2);
    const Eigen::MatrixXd xtx_inv =
        (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    // an exact fit leaves no scatter to test against: zero coefficients are
    // certainly null, nonzero ones certain
    const double zero_tol = 64.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, y.cwiseAbs().maxCoeff());
    std::vector<double> se(p), tv(p), pv(p);
    for (size_t c = 0; c < p; ++c) {
      se[c] = std::sqrt(s2 * xtx_inv(c, c));
      if (se[c] == 0.0) {
        const bool null_term = std::abs(fit.coefficients[c]) <= zero_tol;
        tv[c] = null_term ? 0.0
                          : std::copysign(std::numeric_limits<double>::infinity(),
                                          fit.coefficients[c]);
        pv[c] = null_term ? 1.0 : 0.0;
      } else {
        tv[c] = fit.coefficients[c] / se[c];
        pv[c] = student_t_two_sided_p(tv[c], static_cast<double>(fit.residual_df));
      }
    }
    fit.standard_errors = std::move(se);
    fit.t_values = std::move(tv);
    fit.p_values = std::move(pv);
  }
  return fit;
}

EffectSummary effect_summary(const FactorialDesign& design) {
  design.validate();
  if (design.responses.empty())
    throw std::invalid_argument("effect_summary needs responses");

  const size_t k = design.factor_count();
  EffectSummary summary;

  auto mean_where = [&](auto&& pred) {
    double sum = 0.0;
    size_t count = 0;
    for (size_t r = 0; r < design.runs.size(); ++r) {
      if (!pred(design.runs[r])) continue;
      for (double y : design.responses[r]) {
        sum += y;
        ++count;
      }
    }
    if (count == 0)
      throw std::invalid_argument("effect_summary: a level combination has no runs");
    return sum / static_cast<double>(count);
  };

  for (size_t j = 0; j < k; ++j) {
    MainEffect effect;
    effect.factor = design.factor_labels[j];
    effect.mean_low = mean_where([&](const auto& run) { return run[j] == -1; });
    effect.mean_high = mean_where([&](const auto& run) { return run[j] == 1; });
    summary.main_effects.push_back(std::move(effect));
  }
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      for (int li : {-1, 1}) {
        for (int lj : {-1, 1}) {
          InteractionCell cell;
          cell.factor_a = design.factor_labels[i];
          cell.factor_b = design.factor_labels[j];
          cell.level_a = li;
          cell.level_b = lj;
          cell.mean = mean_where(
              [&](const auto& run) { return run[i] == li && run[j] == lj; });
          summary.interaction_cells.push_back(std::move(cell));
        }
      }
    }
  }
  return summary;
}

SignificanceReport significance_report(const EffectFit& fit, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("alpha must be in (0, 1)");

  SignificanceReport report;
  report.alpha = alpha;
  report.estimable = fit.p_values.has_value();
  for (size_t i = 0; i < fit.terms.size(); ++i) {
    SignificanceEntry entry;
    entry.term = fit.terms[i].name;
    entry.coefficient = fit.coefficients[i];
    if (report.estimable) {
      entry.p_value = (*fit.p_values)[i];
      entry.significant = *entry.p_value < alpha;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace vibelab
