#include "sndgaze/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "sndgaze/csv.hpp"
#include "sndgaze/rng.hpp"

namespace sndgaze {

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mu) {
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return ss / (static_cast<double>(v.size()) - 1.0);
}

bool at_least_as_extreme(double t_perm, double t_obs, Alternative alt) {
    switch (alt) {
        case Alternative::Group1Greater: return t_perm >= t_obs;
        case Alternative::Group2Greater: return t_perm <= t_obs;
        case Alternative::TwoSided: return std::abs(t_perm) >= std::abs(t_obs);
    }
    return false;
}

}  // namespace

std::vector<double> winsorize(std::vector<double> sample, double lower_pct,
                              double upper_pct) {
    if (sample.empty()) throw Error("winsorize of empty sample");
    if (!(lower_pct >= 0.0 && lower_pct < upper_pct && upper_pct <= 100.0))
        throw Error("bad winsorize percentiles");
    const double lo = quantile_type7(sample, lower_pct / 100.0);
    const double hi = quantile_type7(sample, upper_pct / 100.0);
    for (double& x : sample) {
        if (x < lo) x = lo;
        else if (x > hi) x = hi;
    }
    return sample;
}

double permutation_test_means(const std::vector<double>& s1,
                              const std::vector<double>& s2, int n_perm,
                              Alternative alternative, std::uint64_t seed) {
    if (s1.empty() || s2.empty()) throw Error("permutation test on empty sample");
    if (n_perm < 1) throw Error("n_perm must be >= 1");

    const std::size_t n1 = s1.size();
    std::vector<double> pooled = s1;
    pooled.insert(pooled.end(), s2.begin(), s2.end());
    const double t_obs = mean_of(s1) - mean_of(s2);

    std::mt19937_64 gen(seed);
    long hits = 0;
    std::vector<double> work = pooled;
    const double inv_n1 = 1.0 / static_cast<double>(n1);
    const double inv_n2 = 1.0 / static_cast<double>(pooled.size() - n1);
    for (int k = 0; k < n_perm; ++k) {
        // partial Fisher-Yates: the first n1 positions form permuted group 1
        for (std::size_t i = 0; i < n1; ++i) {
            std::size_t j = i + rand_below(gen, work.size() - i);
            std::swap(work[i], work[j]);
        }
        double sum1 = 0.0;
        for (std::size_t i = 0; i < n1; ++i) sum1 += work[i];
        double total = std::accumulate(work.begin(), work.end(), 0.0);
        double t = sum1 * inv_n1 - (total - sum1) * inv_n2;
        if (at_least_as_extreme(t, t_obs, alternative)) ++hits;
    }
    return static_cast<double>(1 + hits) / static_cast<double>(1 + n_perm);
}

double permutation_test_means_exhaustive(const std::vector<double>& s1,
                                         const std::vector<double>& s2,
                                         Alternative alternative) {
    if (s1.empty() || s2.empty()) throw Error("permutation test on empty sample");
    const std::size_t n1 = s1.size();
    std::vector<double> pooled = s1;
    pooled.insert(pooled.end(), s2.begin(), s2.end());
    const std::size_t n = pooled.size();
    const double t_obs = mean_of(s1) - mean_of(s2);
    const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
    const double inv_n1 = 1.0 / static_cast<double>(n1);
    const double inv_n2 = 1.0 / static_cast<double>(n - n1);
    const double eps = 1e-12 * (1.0 + std::abs(t_obs));

    long hits = 0, count = 0;
    std::vector<std::size_t> idx(n1);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        double sum1 = 0.0;
        for (std::size_t i : idx) sum1 += pooled[i];
        double t = sum1 * inv_n1 - (total - sum1) * inv_n2;
        ++count;
        switch (alternative) {
            case Alternative::Group1Greater:
                if (t >= t_obs - eps) ++hits;
                break;
            case Alternative::Group2Greater:
                if (t <= t_obs + eps) ++hits;
                break;
            case Alternative::TwoSided:
                if (std::abs(t) >= std::abs(t_obs) - eps) ++hits;
                break;
        }
        // next combination in lexicographic order
        std::size_t i = n1;
        while (i > 0 && idx[i - 1] == n - n1 + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < n1; ++j) idx[j] = idx[j - 1] + 1;
    }
    return static_cast<double>(hits) / static_cast<double>(count);
}

double hedges_g(const std::vector<double>& s1, const std::vector<double>& s2) {
    const std::size_t n1 = s1.size(), n2 = s2.size();
    if (n1 < 1 || n2 < 1 || n1 + n2 < 3)
        throw Error("hedges_g needs n1 + n2 >= 3");
    const double m1 = mean_of(s1), m2 = mean_of(s2);
    const double v1 = n1 > 1 ? sample_variance(s1, m1) : 0.0;
    const double v2 = n2 > 1 ? sample_variance(s2, m2) : 0.0;
    const double pooled =
        ((static_cast<double>(n1) - 1.0) * v1 + (static_cast<double>(n2) - 1.0) * v2) /
        (static_cast<double>(n1 + n2) - 2.0);
    if (pooled <= 0.0) throw Error("hedges_g with zero pooled variance");
    const double j = 1.0 - 3.0 / (4.0 * static_cast<double>(n1 + n2) - 9.0);
    return std::abs(j * (m1 - m2) / std::sqrt(pooled));
}

std::vector<double> bh_fdr(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p > 0.0 && p <= 1.0)) throw Error("p-value outside (0,1]");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    std::vector<double> adj(m);
    double running_min = 1.0;
    for (std::size_t r = m; r > 0; --r) {
        const std::size_t i = order[r - 1];
        double v = p_values[i] * static_cast<double>(m) / static_cast<double>(r);
        if (v > 1.0) v = 1.0;
        running_min = std::min(running_min, v);
        adj[i] = running_min;
    }
    return adj;
}

std::vector<ComparisonResult> compare_groups(
    const std::map<std::string, WordGazeRecord>& gaze,
    const GroupAssignment& assignment, const std::string& comparison_label,
    const CompareConfig& config) {
    const GazeMetric metrics[] = {GazeMetric::SFD, GazeMetric::FFD, GazeMetric::GD,
                                  GazeMetric::RPD};
    std::vector<ComparisonResult> results;
    std::vector<double> family_p;
    std::vector<std::size_t> family_idx;

    for (std::size_t mi = 0; mi < 4; ++mi) {
        GazeMetric metric = metrics[mi];
        auto values = metric_values(gaze, metric);
        std::vector<double> s1, s2;
        for (const auto& [w, v] : values) {
            if (assignment.group1.count(w)) s1.push_back(v);
            else if (assignment.group2.count(w)) s2.push_back(v);
        }

        ComparisonResult r;
        r.metric = metric;
        r.comparison = comparison_label;
        r.direction = config.alternative;
        if (s1.size() < 2 || s2.size() < 2) {
            r.skipped = true;
            r.note = "undersized group";
            r.n1 = static_cast<long>(s1.size());
            r.n2 = static_cast<long>(s2.size());
            results.push_back(std::move(r));
            continue;
        }

        double lower = config.winsorize_lower_tail ? config.winsor_lower_pct : 0.0;
        auto w1 = winsorize(s1, lower, config.winsor_upper_pct);
        auto w2 = winsorize(s2, lower, config.winsor_upper_pct);

        r.n1 = static_cast<long>(w1.size());
        r.n2 = static_cast<long>(w2.size());
        r.mu1 = mean_of(w1);
        r.mu2 = mean_of(w2);
        // distinct permutation stream per metric, derived from the master seed
        r.p = permutation_test_means(w1, w2, config.n_perm, config.alternative,
                                     config.seed + mi);
        const auto& g1 = config.g_on_winsorized ? w1 : s1;
        const auto& g2 = config.g_on_winsorized ? w2 : s2;
        try {
            r.hedges_g = hedges_g(g1, g2);
        } catch (const Error&) {
            r.hedges_g = 0.0;
            r.note = "zero pooled variance";
        }
        family_p.push_back(r.p);
        family_idx.push_back(results.size());
        results.push_back(std::move(r));
    }

    if (!family_p.empty()) {
        auto adjusted = bh_fdr(family_p);
        for (std::size_t i = 0; i < family_idx.size(); ++i)
            results[family_idx[i]].p_fdr = adjusted[i];
    }
    return results;
}

void write_model_free_csv(const std::vector<ComparisonResult>& results,
                          const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    out << "metric,comparison,n1,n2,mu1,mu2,hedges_g,p,p_fdr,direction\n";
    for (const auto& r : results) {
        if (r.skipped) continue;
        const char* dir = r.direction == Alternative::Group1Greater ? "g1_greater"
                          : r.direction == Alternative::Group2Greater ? "g2_greater"
                                                                      : "two_sided";
        out << to_string(r.metric) << ',' << csv::escape_field(r.comparison) << ','
            << r.n1 << ',' << r.n2 << ',' << csv::format_double(r.mu1) << ','
            << csv::format_double(r.mu2) << ',' << csv::format_double(r.hedges_g)
            << ',' << csv::format_double(r.p) << ',' << csv::format_double(r.p_fdr)
            << ',' << dir << '\n';
    }
}

}  // namespace sndgaze
