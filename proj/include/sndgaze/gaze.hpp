#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sndgaze/error.hpp"

namespace sndgaze {

struct FixationEvent {
    std::string participant;
    std::string trial;
    int index = 0;      // order within trial, 0-based, consecutive
    std::string word;
    int aoi_order = 0;  // reading-order position of the word's AOI, 0-based
    double duration_ms = 0.0;
};

/// Reads the fixation CSV (`participant,trial,index,word,aoi_order,duration_ms`),
/// validates it, and returns events ordered by (participant, trial, index).
std::vector<FixationEvent> ingest_fixations(const std::string& path);

void write_fixations_csv(const std::vector<FixationEvent>& events,
                         const std::string& path);

struct TrialWordMetrics {
    std::optional<double> sfd;
    std::optional<double> ffd;
    std::optional<double> gd;
    std::optional<double> rpd;
};

/// AOI occurrence within a trial: the word plus its reading-order slot.
using AoiKey = std::pair<std::string, int>;  // (word, aoi_order)

/// Computes SFD/FFD/GD/RPD for every AOI fixated in one (participant, trial)
/// fixation sequence. Events must be ordered by index.
///
/// SFD: duration of the single fixation when the AOI receives exactly one
///   fixation before the regression path completes.
/// FFD: duration of the first fixation on the AOI.
/// GD: sum of the maximal run of consecutive fixations on the AOI starting at
///   its first fixation.
/// RPD: sum of all fixation durations from the first fixation on the AOI up to
///   (exclusive) the first later fixation with a higher aoi_order; truncated at
///   trial end if gaze never progresses.
std::map<AoiKey, TrialWordMetrics> trial_metrics(
    const std::vector<FixationEvent>& trial_events);

struct WordGazeRecord {
    std::optional<double> sfd_ms;
    std::optional<double> ffd_ms;
    std::optional<double> gd_ms;
    std::optional<double> rpd_ms;
    int n_sfd = 0;
    int n_ffd = 0;
    int n_gd = 0;
    int n_rpd = 0;
};

enum class RpdAggregate {
    Mean,  // mean over all defined observations
    Sum    // per-participant sum over occurrences, then mean over participants
};

/// Groups events by (participant, trial), computes trial metrics, and
/// aggregates each metric to one word-level value (arithmetic mean of defined
/// observations; undefined values skipped).
std::map<std::string, WordGazeRecord> aggregate_word_level(
    const std::vector<FixationEvent>& events,
    RpdAggregate rpd_aggregate = RpdAggregate::Mean);

/// Long-format CSV `word,metric,value_ms,n_observations`.
void write_gaze_csv(const std::map<std::string, WordGazeRecord>& records,
                    const std::string& path);
std::map<std::string, WordGazeRecord> read_gaze_csv(const std::string& path);

}  // namespace sndgaze
