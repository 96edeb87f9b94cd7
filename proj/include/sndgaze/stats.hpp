#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sndgaze/error.hpp"
#include "sndgaze/gaze.hpp"
#include "sndgaze/partition.hpp"

namespace sndgaze {

/// Clamps values below the lower percentile up to it and above the upper
/// percentile down to it (type-7 percentiles). Length preserved.
std::vector<double> winsorize(std::vector<double> sample, double lower_pct = 5.0,
                              double upper_pct = 95.0);

enum class Alternative { Group1Greater, Group2Greater, TwoSided };

/// Monte-Carlo permutation test of the difference of means
/// T = mean(s1) - mean(s2), with +1 smoothing:
/// p = (1 + #{permuted T at least as extreme}) / (1 + n_perm).
double permutation_test_means(const std::vector<double>& s1,
                              const std::vector<double>& s2, int n_perm,
                              Alternative alternative, std::uint64_t seed);

/// Exhaustive version over all C(n1+n2, n1) label assignments;
/// p = #{at least as extreme} / total (the identity assignment counts itself).
double permutation_test_means_exhaustive(const std::vector<double>& s1,
                                         const std::vector<double>& s2,
                                         Alternative alternative);

/// |J * (mean1 - mean2) / s_pooled| with the small-sample correction
/// J = 1 - 3 / (4(n1+n2) - 9).
double hedges_g(const std::vector<double>& s1, const std::vector<double>& s2);

/// Benjamini-Hochberg step-up adjusted p-values, returned in input order.
std::vector<double> bh_fdr(const std::vector<double>& p_values);

struct ComparisonResult {
    GazeMetric metric = GazeMetric::SFD;
    std::string comparison;
    long n1 = 0, n2 = 0;
    double mu1 = 0.0, mu2 = 0.0;  // winsorized means
    double hedges_g = 0.0;
    double p = 1.0;
    double p_fdr = 1.0;
    Alternative direction = Alternative::Group1Greater;
    bool skipped = false;
    std::string note;
};

struct CompareConfig {
    int n_perm = 10000;
    std::uint64_t seed = 20240501;
    Alternative alternative = Alternative::Group1Greater;
    double winsor_lower_pct = 5.0;
    double winsor_upper_pct = 95.0;
    bool winsorize_lower_tail = true;  // clamp both tails by default
    bool g_on_winsorized = true;
};

/// One ComparisonResult per gaze metric: collect word-level observations for
/// each group, winsorize at 5/95, run the one-sided permutation test, compute
/// Hedges' g, then BH-FDR across the family of 4 metrics.
std::vector<ComparisonResult> compare_groups(
    const std::map<std::string, WordGazeRecord>& gaze,
    const GroupAssignment& assignment, const std::string& comparison_label,
    const CompareConfig& config);

/// CSV `metric,comparison,n1,n2,mu1,mu2,hedges_g,p,p_fdr,direction`.
void write_model_free_csv(const std::vector<ComparisonResult>& results,
                          const std::string& path);

}  // namespace sndgaze
