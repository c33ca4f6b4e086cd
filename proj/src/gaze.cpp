#include "sessiontree/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"
#include "sessiontree/errors.hpp"

namespace sessiontree {

std::vector<Fixation> filter_fixations(const std::vector<Fixation>& fixations,
                                       std::int64_t min_duration_ms) {
    std::vector<Fixation> kept;
    kept.reserve(fixations.size());
    for (const Fixation& f : fixations) {
        if (f.duration_ms >= min_duration_ms) kept.push_back(f);
    }
    return kept;
}

Eye select_stable_eye(const std::vector<Fixation>& samples) {
    std::vector<const Fixation*> left;
    std::vector<const Fixation*> right;
    for (const Fixation& f : samples) {
        (f.eye == Eye::left ? left : right).push_back(&f);
    }
    if (left.empty() && right.empty()) {
        throw NoSamples(samples.empty() ? "<unknown>" : samples.front().participant_id);
    }
    if (right.empty()) return Eye::left;
    if (left.empty()) return Eye::right;

    // Binocular pairs: overlapping [start, start+duration) spans.
    std::vector<std::pair<const Fixation*, const Fixation*>> pairs;
    for (const Fixation* l : left) {
        for (const Fixation* r : right) {
            if (l->start_ms < r->start_ms + r->duration_ms &&
                r->start_ms < l->start_ms + l->duration_ms) {
                pairs.emplace_back(l, r);
            }
        }
    }
    if (pairs.empty()) return Eye::left;

    double cx = 0.0;
    double cy = 0.0;
    for (const auto& [l, r] : pairs) {
        cx += (l->x + r->x) / 2.0;
        cy += (l->y + r->y) / 2.0;
    }
    cx /= static_cast<double>(pairs.size());
    cy /= static_cast<double>(pairs.size());

    double left_div = 0.0;
    double right_div = 0.0;
    for (const auto& [l, r] : pairs) {
        left_div += std::hypot(l->x - cx, l->y - cy);
        right_div += std::hypot(r->x - cx, r->y - cy);
    }
    return right_div < left_div ? Eye::right : Eye::left;
}

std::vector<Fixation> clip_to_window(const std::vector<Fixation>& fixations,
                                     const StimulusWindow& window) {
    std::vector<Fixation> kept;
    for (const Fixation& f : fixations) {
        if (f.start_ms < window.enter_ms) continue;
        if (window.first_interaction_ms && f.start_ms >= *window.first_interaction_ms) continue;
        kept.push_back(f);
    }
    return kept;
}

AoiReport aoi_stats(const std::vector<Fixation>& fixations, const std::vector<Aoi>& aois) {
    struct Tally {
        std::size_t fixations = 0;
        double dwell_s = 0.0;
        std::set<std::string> participants;
    };
    std::vector<Tally> tallies(aois.size());
    std::size_t multi_hits = 0;

    for (const Fixation& f : fixations) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < aois.size(); ++i) {
            const Aoi& a = aois[i];
            if (f.stimulus_id != a.stimulus_id) continue;
            if (f.x < a.x || f.x >= a.x + a.width) continue;
            if (f.y < a.y || f.y >= a.y + a.height) continue;
            ++hits;
            ++tallies[i].fixations;
            tallies[i].dwell_s += static_cast<double>(f.duration_ms) / 1000.0;
            tallies[i].participants.insert(f.participant_id);
        }
        if (hits > 1) ++multi_hits;
    }

    AoiReport report;
    report.multi_hit_fixations = multi_hits;
    for (std::size_t i = 0; i < aois.size(); ++i) {
        AoiStats s;
        s.aoi = aois[i].name;
        s.n_participants = tallies[i].participants.size();
        s.total_fixations = tallies[i].fixations;
        s.total_dwell_s = tallies[i].dwell_s;
        if (s.n_participants > 0) {
            const double n = static_cast<double>(s.n_participants);
            s.mean_fixations = static_cast<double>(s.total_fixations) / n;
            s.mean_dwell_s = s.total_dwell_s / n;
        }
        report.stats.push_back(std::move(s));
    }
    return report;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        std::string field = line.substr(start, comma - start);
        const auto f = field.find_first_not_of(" \t\r");
        const auto l = field.find_last_not_of(" \t\r");
        fields.push_back(f == std::string::npos ? "" : field.substr(f, l - f + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("bad");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad integer '" + s + "'");
    }
}

}  // namespace

std::vector<Fixation> read_fixation_csv(std::istream& in) {
    std::vector<Fixation> fixations;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected participant,eye,stimulus,x,y,start_ms,duration_ms");
        }
        const bool header = first_data_line && fields[0] == "participant";
        first_data_line = false;
        if (header) continue;

        Fixation f;
        f.participant_id = fields[0];
        if (fields[1] == "left") {
            f.eye = Eye::left;
        } else if (fields[1] == "right") {
            f.eye = Eye::right;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": eye must be left or right");
        }
        f.stimulus_id = fields[2];
        f.x = parse_double(fields[3], line_no);
        f.y = parse_double(fields[4], line_no);
        f.start_ms = parse_int(fields[5], line_no);
        f.duration_ms = parse_int(fields[6], line_no);
        if (f.duration_ms <= 0) {
            throw DataError("line " + std::to_string(line_no) + ": duration must be positive");
        }
        fixations.push_back(std::move(f));
    }
    return fixations;
}

std::vector<StimulusWindow> read_window_csv(std::istream& in) {
    std::vector<StimulusWindow> windows;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected participant,stimulus,enter_ms,first_interaction_ms");
        }
        const bool header = first_data_line && fields[0] == "participant";
        first_data_line = false;
        if (header) continue;

        StimulusWindow w;
        w.participant_id = fields[0];
        w.stimulus_id = fields[1];
        w.enter_ms = parse_int(fields[2], line_no);
        if (!fields[3].empty()) {
            w.first_interaction_ms = parse_int(fields[3], line_no);
            if (*w.first_interaction_ms < w.enter_ms) {
                throw DataError("line " + std::to_string(line_no) +
                                ": first interaction precedes entry");
            }
        }
        windows.push_back(std::move(w));
    }
    return windows;
}

std::vector<Aoi> read_aoi_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("AOI JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("AOI JSON: expected a top-level array");

    std::vector<Aoi> aois;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("name") || !item.contains("stimulus") ||
            !item.contains("rect") || !item["rect"].is_array() || item["rect"].size() != 4) {
            throw ParseError("AOI JSON: each entry needs name, stimulus, rect:[x,y,w,h]");
        }
        Aoi a;
        a.name = item["name"].get<std::string>();
        a.stimulus_id = item["stimulus"].get<std::string>();
        a.x = item["rect"][0].get<double>();
        a.y = item["rect"][1].get<double>();
        a.width = item["rect"][2].get<double>();
        a.height = item["rect"][3].get<double>();
        if (a.width <= 0.0 || a.height <= 0.0) {
            throw DataError("AOI '" + a.name + "': width and height must be positive");
        }
        aois.push_back(std::move(a));
    }
    return aois;
}

void write_aoi_stats_csv(std::ostream& out, const AoiReport& report) {
    out << "aoi,n_participants,total_fixations,mean_fixations,total_dwell_s,mean_dwell_s\n";
    char buf[64];
    for (const AoiStats& s : report.stats) {
        out << s.aoi << ',' << s.n_participants << ',' << s.total_fixations << ',';
        std::snprintf(buf, sizeof(buf), "%.4f", s.mean_fixations);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.3f", s.total_dwell_s);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.3f", s.mean_dwell_s);
        out << buf << '\n';
    }
}

}  // namespace sessiontree
