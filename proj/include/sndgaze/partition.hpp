#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sndgaze/error.hpp"
#include "sndgaze/gaze.hpp"

namespace sndgaze {

struct GroupAssignment {
    std::string scheme;
    std::set<std::string> group1;  // high
    std::set<std::string> group2;  // low / complement
    std::vector<double> cutpoints;
    bool degenerate = false;  // group1 empty for a joint split
};

/// Linear-interpolation (type-7) empirical quantile of a sample.
double quantile_type7(std::vector<double> values, double p);

/// group1 = { w : score >= median }, group2 = complement. Median is the
/// midpoint of the middle pair for even counts.
GroupAssignment median_split(const std::map<std::string, double>& scores);

/// group1 = hsnd ∩ lf, group2 = vocab \ group1.
GroupAssignment joint_group(const std::set<std::string>& hsnd,
                            const std::set<std::string>& lf,
                            const std::set<std::string>& vocab);

/// group1 = { w : score >= Q0.75 }, group2 = { w : score <= Q0.25 };
/// the middle half is excluded.
GroupAssignment quartile_split(const std::map<std::string, double>& scores);

enum class GazeMetric { SFD, FFD, GD, RPD };
const char* to_string(GazeMetric m);

enum class SplitKind { Median, Quartile };
const char* to_string(SplitKind s);

/// Extracts the word-level value of one metric; words without it are absent.
std::map<std::string, double> metric_values(
    const std::map<std::string, WordGazeRecord>& gaze, GazeMetric metric);

/// Binary labels for the prediction task: y=1 for the high group. Words with
/// the metric undefined are excluded; quartile mode drops the middle half.
std::vector<std::pair<std::string, int>> label_words_by_metric(
    const std::map<std::string, WordGazeRecord>& gaze, GazeMetric metric,
    SplitKind split);

/// JSON `{scheme, cutpoints, group1, group2}`.
void write_assignment_json(const GroupAssignment& assignment, const std::string& path);

}  // namespace sndgaze
