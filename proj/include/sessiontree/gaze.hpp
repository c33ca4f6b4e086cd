#ifndef SESSIONTREE_GAZE_HPP
#define SESSIONTREE_GAZE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sessiontree {

enum class Eye { left, right };

struct Fixation {
    std::string participant_id;
    Eye eye = Eye::left;
    std::string stimulus_id;
    double x = 0.0;  // screen pixels
    double y = 0.0;
    std::int64_t start_ms = 0;
    std::int64_t duration_ms = 0;  // > 0
};

struct Aoi {
    std::string name;
    std::string stimulus_id;
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;   // > 0
    double height = 0.0;  // > 0
};

// Analysis window on one stimulus visit: from entering the stimulus up to
// (exclusive) the first interaction with a clickable object, when any.
struct StimulusWindow {
    std::string participant_id;
    std::string stimulus_id;
    std::int64_t enter_ms = 0;
    std::optional<std::int64_t> first_interaction_ms;
};

struct AoiStats {
    std::string aoi;
    std::size_t n_participants = 0;
    std::size_t total_fixations = 0;
    double mean_fixations = 0.0;
    double total_dwell_s = 0.0;
    double mean_dwell_s = 0.0;
};

struct AoiReport {
    std::vector<AoiStats> stats;  // one per AOI, input order
    std::size_t multi_hit_fixations = 0;  // fixations that landed in several AOIs
};

constexpr std::int64_t kDefaultFixationThresholdMs = 104;

// Keeps fixations with duration_ms >= min_duration_ms (boundary inclusive).
std::vector<Fixation> filter_fixations(const std::vector<Fixation>& fixations,
                                       std::int64_t min_duration_ms = kDefaultFixationThresholdMs);

// Picks one participant's stable eye. Left and right fixations whose time
// spans overlap form binocular pairs; the divergence of an eye is the mean
// distance of its paired fixations from the centroid of all pair midpoints.
// The lower-divergence eye wins; one-sided data returns that eye; exact
// ties (and pairless two-sided data) return the left eye.
Eye select_stable_eye(const std::vector<Fixation>& samples);

// Keeps fixations with start_ms in [enter_ms, first_interaction_ms), or all
// with start_ms >= enter_ms when no interaction was recorded. A fixation
// straddling the boundary is kept whole; only its start decides.
std::vector<Fixation> clip_to_window(const std::vector<Fixation>& fixations,
                                     const StimulusWindow& window);

// AOI hit test uses half-open rectangles [x, x+w) x [y, y+h) on the AOI's
// stimulus. Means are taken over participants with at least one hit.
AoiReport aoi_stats(const std::vector<Fixation>& fixations, const std::vector<Aoi>& aois);

// File formats (see README): fixation CSV, window CSV and AOI JSON.
std::vector<Fixation> read_fixation_csv(std::istream& in);
std::vector<StimulusWindow> read_window_csv(std::istream& in);
std::vector<Aoi> read_aoi_json(std::istream& in);
void write_aoi_stats_csv(std::ostream& out, const AoiReport& report);

}  // namespace sessiontree

#endif  // SESSIONTREE_GAZE_HPP
