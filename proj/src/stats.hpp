#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metrics.hpp"

namespace vm {

// Regularized incomplete beta I_x(a, b), evaluated with the Lentz continued
// fraction (switching to the symmetric tail for convergence).
double incomplete_beta(double a, double b, double x);

// P(T <= t) for Student's t with (possibly fractional) df degrees of freedom.
double student_t_cdf(double t, double df);

struct ComparisonResult {
    std::string contrast;  // "pre vs post", "typical vs pre", "typical vs post"
    std::string response;  // "vai" or "log_vfd"
    std::optional<Vowel> phoneme;
    // Mean difference, second-named condition minus first-named
    // ("A vs B" reports mean(B) - mean(A)).
    double estimate = 0;
    double statistic = 0;
    double df = 0;
    double p_raw = 1;
    double p_adj = 1;
    bool paired = false;
    int n_a = 0, n_b = 0;
};

// Welch two-sample t; estimate = mean(a) - mean(b). Requires >= 2 values per
// group and a nonzero variance in at least one group.
ComparisonResult welch_t(std::span<const double> a, std::span<const double> b);

// One-sample t on paired differences d = a - b (inputs already aligned);
// estimate = mean(d). Requires >= 2 pairs and nonzero difference variance.
ComparisonResult paired_t(std::span<const double> a, std::span<const double> b);

// Benjamini-Hochberg step-up adjustment, input order preserved.
std::vector<double> fdr_adjust(std::span<const double> p_values);

struct Cell {
    std::string key;
    std::vector<double> values;
    std::vector<std::string> ids;  // parallel to values; may be empty
};

struct TrimReport {
    int n_removed = 0;
    int n_total = 0;
    double fraction = 0.0;
    std::vector<std::string> removed_ids;
};

// Single-pass residual trim: within each cell, drop values more than
// threshold_sd sample SDs from the cell mean. Cells with < 2 values or zero
// SD are left alone.
TrimReport trim_outliers(std::vector<Cell>& cells, double threshold_sd = 2.5);

struct DescriptiveRow {
    std::string cell;
    int n = 0;
    double mean = 0;
    double sd = 0;
};

struct AnalysisReport {
    std::vector<ComparisonResult> results;
    std::vector<DescriptiveRow> descriptives;
    TrimReport trim;                 // applied to the log-VFD cells only
    std::vector<std::string> gaps;   // contrasts that could not be computed
};

// The full contrast battery: VAI family {pre vs post (paired by speaker),
// typical vs pre, typical vs post} and the same three contrasts per phoneme
// on trimmed log-VFD (Welch). FDR correction runs within each family.
AnalysisReport run_analysis(std::span<const ClarityScore> clarity,
                            std::span<const VfdValue> vfd);

}  // namespace vm
