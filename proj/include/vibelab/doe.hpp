#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vibelab {

/// Two-level full factorial design with coded -1/+1 levels. Runs are in
/// standard order: the first factor alternates fastest.
struct FactorialDesign {
  std::vector<std::string> factor_labels;
  std::vector<std::vector<int>> runs;            // runs x factors, entries -1/+1
  std::vector<std::vector<double>> responses;    // per run, one entry per replicate

  size_t factor_count() const { return factor_labels.size(); }
  void validate() const;  // throws std::invalid_argument
};

FactorialDesign full_factorial(int factor_count, std::vector<std::string> labels = {});

struct RegressionTerm {
  std::string name;                 // "(intercept)", "A", or "A:B"
  std::vector<size_t> factors;      // empty for the intercept
};

struct EffectFit {
  std::vector<RegressionTerm> terms;
  std::vector<double> coefficients;
  long residual_df = 0;
  double residual_stddev = 0.0;  // meaningful only when residual_df > 0
  // Absent when residual_df == 0 (saturated fit: inference unavailable).
  std::optional<std::vector<double>> standard_errors;
  std::optional<std::vector<double>> t_values;
  std::optional<std::vector<double>> p_values;
};

/// Least squares on the coded design matrix. max_interaction_order 1 fits
/// main effects only, 2 adds all pairwise interactions.
EffectFit fit_effects(const FactorialDesign& design, int max_interaction_order = 2);

struct MainEffect {
  std::string factor;
  double mean_low = 0.0;   // mean response at -1
  double mean_high = 0.0;  // mean response at +1
};

struct InteractionCell {
  std::string factor_a, factor_b;
  int level_a = 0, level_b = 0;
  double mean = 0.0;
};

struct EffectSummary {
  std::vector<MainEffect> main_effects;
  std::vector<InteractionCell> interaction_cells;  // 4 cells per factor pair
};

EffectSummary effect_summary(const FactorialDesign& design);

struct SignificanceEntry {
  std::string term;
  double coefficient = 0.0;
  std::optional<double> p_value;
  bool significant = false;
};

struct SignificanceReport {
  double alpha = 0.0;
  bool estimable = false;  // false: saturated fit, no residual df
  std::vector<SignificanceEntry> entries;
};

SignificanceReport significance_report(const EffectFit& fit, double alpha = 0.05);

}  // namespace vibelab
