#include "sndgaze/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace sndgaze {

double quantile_type7(std::vector<double> values, double p) {
    if (values.empty()) throw Error("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

GroupAssignment median_split(const std::map<std::string, double>& scores) {
    if (scores.size() < 2) throw Error("median_split needs at least 2 scored words");
    std::vector<double> vals;
    vals.reserve(scores.size());
    for (const auto& [_, v] : scores) vals.push_back(v);
    const double median = quantile_type7(vals, 0.5);

    GroupAssignment a;
    a.scheme = "median";
    a.cutpoints = {median};
    for (const auto& [w, v] : scores)
        (v >= median ? a.group1 : a.group2).insert(w);
    if (a.group2.empty())
        throw DegenerateSplitError("all scores identical; median split degenerate");
    return a;
}

GroupAssignment joint_group(const std::set<std::string>& hsnd,
                            const std::set<std::string>& lf,
                            const std::set<std::string>& vocab) {
    GroupAssignment a;
    a.scheme = "joint_hsnd_lf";
    for (const auto& w : hsnd)
        if (lf.count(w)) a.group1.insert(w);
    for (const auto& w : vocab)
        if (!a.group1.count(w)) a.group2.insert(w);
    a.degenerate = a.group1.empty();
    return a;
}

GroupAssignment quartile_split(const std::map<std::string, double>& scores) {
    if (scores.size() < 4) throw Error("quartile_split needs at least 4 scored words");
    std::vector<double> vals;
    vals.reserve(scores.size());
    for (const auto& [_, v] : scores) vals.push_back(v);
    const double q25 = quantile_type7(vals, 0.25);
    const double q75 = quantile_type7(vals, 0.75);
    if (q25 == q75)
        throw DegenerateSplitError("quartiles coincide; quartile split degenerate");

    GroupAssignment a;
    a.scheme = "quartile";
    a.cutpoints = {q25, q75};
    for (const auto& [w, v] : scores) {
        if (v >= q75) a.group1.insert(w);
        else if (v <= q25) a.group2.insert(w);
    }
    return a;
}

const char* to_string(GazeMetric m) {
    switch (m) {
        case GazeMetric::SFD: return "sfd";
        case GazeMetric::FFD: return "ffd";
        case GazeMetric::GD: return "gd";
        case GazeMetric::RPD: return "rpd";
    }
    return "?";
}

const char* to_string(SplitKind s) {
    return s == SplitKind::Median ? "median" : "quartile";
}

std::map<std::string, double> metric_values(
    const std::map<std::string, WordGazeRecord>& gaze, GazeMetric metric) {
    std::map<std::string, double> out;
    for (const auto& [word, rec] : gaze) {
        const std::optional<double>* v = nullptr;
        switch (metric) {
            case GazeMetric::SFD: v = &rec.sfd_ms; break;
            case GazeMetric::FFD: v = &rec.ffd_ms; break;
            case GazeMetric::GD: v = &rec.gd_ms; break;
            case GazeMetric::RPD: v = &rec.rpd_ms; break;
        }
        if (*v) out[word] = **v;
    }
    return out;
}

std::vector<std::pair<std::string, int>> label_words_by_metric(
    const std::map<std::string, WordGazeRecord>& gaze, GazeMetric metric,
    SplitKind split) {
    auto values = metric_values(gaze, metric);
    if (values.size() < 4)
        throw Error(std::string("metric ") + to_string(metric) +
                    " defined for fewer than 4 words");
    GroupAssignment a =
        split == SplitKind::Median ? median_split(values) : quartile_split(values);
    std::vector<std::pair<std::string, int>> labeled;
    for (const auto& [w, _] : values) {
        if (a.group1.count(w)) labeled.emplace_back(w, 1);
        else if (a.group2.count(w)) labeled.emplace_back(w, 0);
    }
    return labeled;
}

void write_assignment_json(const GroupAssignment& assignment, const std::string& path) {
    nlohmann::json j = {
        {"scheme", assignment.scheme},
        {"cutpoints", assignment.cutpoints},
        {"group1", std::vector<std::string>(assignment.group1.begin(), assignment.group1.end())},
        {"group2", std::vector<std::string>(assignment.group2.begin(), assignment.group2.end())},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace sndgaze
