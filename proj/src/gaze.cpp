#include "sndgaze/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sndgaze/csv.hpp"

namespace sndgaze {

std::vector<FixationEvent> ingest_fixations(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw IngestError("empty fixation file: " + path, 0);
    const std::vector<std::string> expected = {"participant", "trial", "index",
                                              "word", "aoi_order", "duration_ms"};
    if (rows[0] != expected)
        throw IngestError("bad fixation CSV header in " + path, 1);

    std::vector<FixationEvent> events;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        long row_no = static_cast<long>(i) + 1;
        if (r.size() != expected.size())
            throw IngestError("wrong column count", row_no);
        FixationEvent e;
        e.participant = r[0];
        e.trial = r[1];
        try {
            e.index = std::stoi(r[2]);
            e.aoi_order = std::stoi(r[4]);
            e.duration_ms = std::stod(r[5]);
        } catch (const std::exception&) {
            throw IngestError("unparsable numeric field", row_no);
        }
        e.word = r[3];
        if (e.word.empty()) throw IngestError("empty word", row_no);
        if (e.index < 0) throw IngestError("negative index", row_no);
        if (e.aoi_order < 0) throw IngestError("negative aoi_order", row_no);
        if (!(e.duration_ms > 0.0) || !std::isfinite(e.duration_ms))
            throw IngestError("non-positive duration_ms", row_no);
        events.push_back(std::move(e));
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const FixationEvent& a, const FixationEvent& b) {
                         if (a.participant != b.participant)
                             return a.participant < b.participant;
                         if (a.trial != b.trial) return a.trial < b.trial;
                         return a.index < b.index;
                     });

    // indices within each (participant, trial) must be consecutive from 0
    for (std::size_t i = 0; i < events.size(); ++i) {
        int expected_index =
            (i > 0 && events[i - 1].participant == events[i].participant &&
             events[i - 1].trial == events[i].trial)
                ? events[i - 1].index + 1
                : 0;
        if (events[i].index != expected_index)
            throw IngestError("non-consecutive fixation indices in trial " +
                                  events[i].participant + "/" + events[i].trial,
                              static_cast<long>(i) + 2);
    }
    return events;
}

void write_fixations_csv(const std::vector<FixationEvent>& events,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    out << "participant,trial,index,word,aoi_order,duration_ms\n";
    for (const auto& e : events) {
        out << csv::escape_field(e.participant) << ',' << csv::escape_field(e.trial)
            << ',' << e.index << ',' << csv::escape_field(e.word) << ','
            << e.aoi_order << ',' << csv::format_double(e.duration_ms) << '\n';
    }
}

std::map<AoiKey, TrialWordMetrics> trial_metrics(
    const std::vector<FixationEvent>& trial_events) {
    const std::size_t n = trial_events.size();
    std::map<AoiKey, TrialWordMetrics> out;

    std::map<AoiKey, std::size_t> first_fix;
    for (std::size_t i = 0; i < n; ++i) {
        AoiKey key{trial_events[i].word, trial_events[i].aoi_order};
        first_fix.try_emplace(key, i);
    }

    for (const auto& [key, first] : first_fix) {
        const int order = key.second;

        // regression path: [first, end) where end is the first later fixation
        // whose AOI lies beyond this one in reading order
        std::size_t end = n;
        for (std::size_t i = first + 1; i < n; ++i) {
            if (trial_events[i].aoi_order > order) {
                end = i;
                break;
            }
        }

        TrialWordMetrics m;
        m.ffd = trial_events[first].duration_ms;

        double gd = 0.0;
        for (std::size_t i = first; i < end; ++i) {
            if (trial_events[i].word == key.first && trial_events[i].aoi_order == order)
                gd += trial_events[i].duration_ms;
            else
                break;
        }
        m.gd = gd;

        double rpd = 0.0;
        int fix_count = 0;
        for (std::size_t i = first; i < end; ++i) {
            rpd += trial_events[i].duration_ms;
            if (trial_events[i].word == key.first && trial_events[i].aoi_order == order)
                ++fix_count;
        }
        m.rpd = rpd;

        if (fix_count == 1) m.sfd = m.ffd;
        out.emplace(key, m);
    }
    return out;
}

namespace {

struct Accum {
    double sum = 0.0;
    int n = 0;
    void add(double v) {
        sum += v;
        ++n;
    }
    std::optional<double> mean() const {
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    }
};

}  // namespace

std::map<std::string, WordGazeRecord> aggregate_word_level(
    const std::vector<FixationEvent>& events, RpdAggregate rpd_aggregate) {
    // group by (participant, trial) preserving index order
    std::map<std::pair<std::string, std::string>, std::vector<FixationEvent>> trials;
    for (const auto& e : events) trials[{e.participant, e.trial}].push_back(e);
    for (auto& [key, evs] : trials)
        std::sort(evs.begin(), evs.end(),
                  [](const FixationEvent& a, const FixationEvent& b) {
                      return a.index < b.index;
                  });

    std::map<std::string, Accum> sfd, ffd, gd, rpd;
    // participant -> word -> summed RPD (Sum mode)
    std::map<std::pair<std::string, std::string>, double> rpd_sums;

    for (const auto& [key, evs] : trials) {
        auto metrics = trial_metrics(evs);
        for (const auto& [aoi, m] : metrics) {
            const std::string& word = aoi.first;
            if (m.sfd) sfd[word].add(*m.sfd);
            if (m.ffd) ffd[word].add(*m.ffd);
            if (m.gd) gd[word].add(*m.gd);
            if (m.rpd) {
                if (rpd_aggregate == RpdAggregate::Mean)
                    rpd[word].add(*m.rpd);
                else
                    rpd_sums[{key.first, word}] += *m.rpd;
            }
        }
    }
    if (rpd_aggregate == RpdAggregate::Sum)
        for (const auto& [pw, total] : rpd_sums) rpd[pw.second].add(total);

    std::map<std::string, WordGazeRecord> out;
    auto fill = [&out](const std::map<std::string, Accum>& acc, auto value_field,
                       auto count_field) {
        for (const auto& [word, a] : acc) {
            WordGazeRecord& rec = out[word];
            rec.*value_field = a.mean();
            rec.*count_field = a.n;
        }
    };
    fill(sfd, &WordGazeRecord::sfd_ms, &WordGazeRecord::n_sfd);
    fill(ffd, &WordGazeRecord::ffd_ms, &WordGazeRecord::n_ffd);
    fill(gd, &WordGazeRecord::gd_ms, &WordGazeRecord::n_gd);
    fill(rpd, &WordGazeRecord::rpd_ms, &WordGazeRecord::n_rpd);
    return out;
}

void write_gaze_csv(const std::map<std::string, WordGazeRecord>& records,
                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write " + path);
    out << "word,metric,value_ms,n_observations\n";
    for (const auto& [word, rec] : records) {
        auto row = [&](const char* name, const std::optional<double>& v, int n) {
            if (!v) return;
            out << csv::escape_field(word) << ',' << name << ','
                << csv::format_double(*v) << ',' << n << '\n';
        };
        row("sfd", rec.sfd_ms, rec.n_sfd);
        row("ffd", rec.ffd_ms, rec.n_ffd);
        row("gd", rec.gd_ms, rec.n_gd);
        row("rpd", rec.rpd_ms, rec.n_rpd);
    }
}

std::map<std::string, WordGazeRecord> read_gaze_csv(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty() || rows[0].empty() || rows[0][0] != "word")
        throw Error("bad gaze CSV header in " + path);
    std::map<std::string, WordGazeRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 4) throw Error("short row in " + path);
        WordGazeRecord& rec = out[r[0]];
        double v = std::stod(r[2]);
        int n = std::stoi(r[3]);
        if (r[1] == "sfd") { rec.sfd_ms = v; rec.n_sfd = n; }
        else if (r[1] == "ffd") { rec.ffd_ms = v; rec.n_ffd = n; }
        else if (r[1] == "gd") { rec.gd_ms = v; rec.n_gd = n; }
        else if (r[1] == "rpd") { rec.rpd_ms = v; rec.n_rpd = n; }
        else throw Error("unknown metric '" + r[1] + "' in " + path);
    }
    return out;
}

}  // namespace sndgaze
