#include "sessiontree/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include "sessiontree/errors.hpp"

namespace sessiontree {

namespace {

// Midranks of the pooled sample, in the pooled (a then b) index order.
std::vector<double> midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

bool has_ties(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) != values.end();
}

// Number of 0/1 sequences with n1 zeros, n2 ones and U = u, via the
// classical recurrence c(n1,n2,u) = c(n1-1,n2,u-n2) + c(n1,n2-1,u).
// Tie-free exact distribution only.
class ExactCounter {
public:
    ExactCounter(std::size_t n1, std::size_t n2) : table_(n1 + 1) {
        for (std::size_t i = 0; i <= n1; ++i) {
            table_[i].resize(n2 + 1, std::vector<std::int64_t>(i * n2 + 1, -1));
        }
    }

    std::int64_t count(std::size_t n1, std::size_t n2, std::int64_t u) {
        if (u < 0 || static_cast<std::size_t>(u) > n1 * n2) return 0;
        if (n1 == 0 || n2 == 0) return u == 0 ? 1 : 0;
        std::int64_t& slot = table_[n1][n2][static_cast<std::size_t>(u)];
        if (slot >= 0) return slot;
        slot = count(n1 - 1, n2, u - static_cast<std::int64_t>(n2)) + count(n1, n2 - 1, u);
        return slot;
    }

private:
    std::vector<std::vector<std::vector<std::int64_t>>> table_;
};

double exact_p_no_ties(std::size_t n1, std::size_t n2, double u_stat) {
    // Sequence counts fit signed 64-bit integers only up to N around 64.
    if (n1 + n2 > 64) {
        throw DataError("exact method infeasible for these sample sizes; use normal");
    }
    const double full = static_cast<double>(n1 * n2);
    const std::int64_t u_min =
        static_cast<std::int64_t>(std::llround(std::min(u_stat, full - u_stat)));
    ExactCounter counter(n1, n2);
    std::int64_t tail = 0;
    for (std::int64_t u = 0; u <= u_min; ++u) tail += counter.count(n1, n2, u);
    double total = 1.0;
    for (std::size_t k = 1; k <= n1; ++k) {
        total *= static_cast<double>(n2 + k) / static_cast<double>(k);
    }
    return std::min(1.0, 2.0 * static_cast<double>(tail) / total);
}

// Exact permutation p over the observed midranks: every n1-subset of the
// pooled ranks is one relabeling. Handles ties; symmetric around n1*n2/2,
// so the two-sided p doubles the lower tail.
double exact_p_subsets(const std::vector<double>& ranks, std::size_t n1, double u_stat) {
    const std::size_t n = ranks.size();
    double combinations = 1.0;
    for (std::size_t k = 1; k <= n1; ++k) {
        combinations *= static_cast<double>(n - n1 + k) / static_cast<double>(k);
    }
    if (combinations > 2e7) {
        throw DataError("exact method infeasible for these sample sizes; use normal");
    }
    const double offset = static_cast<double>(n1 * (n1 + 1)) / 2.0;
    const double full = static_cast<double>(n1 * (n - n1));
    const double u_min = std::min(u_stat, full - u_stat) + 1e-9;

    std::uint64_t seen = 0;
    std::uint64_t at_most = 0;
    std::vector<std::size_t> pick(n1);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        double r1 = 0.0;
        for (const std::size_t idx : pick) r1 += ranks[idx];
        ++seen;
        if (r1 - offset <= u_min) ++at_most;

        // next combination
        std::size_t i = n1;
        while (i-- > 0) {
            if (pick[i] != i + n - n1) break;
            if (i == 0) {
                return std::min(1.0, 2.0 * static_cast<double>(at_most) /
                                         static_cast<double>(seen));
            }
        }
        ++pick[i];
        for (std::size_t k = i + 1; k < n1; ++k) pick[k] = pick[k - 1] + 1;
    }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_p(const std::vector<double>& pooled, std::size_t n1, std::size_t n2,
                double u_stat) {
    const double n = static_cast<double>(n1 + n2);
    const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

    std::map<double, std::size_t> tally;
    for (const double v : pooled) ++tally[v];
    double tie_term = 0.0;
    for (const auto& [value, t] : tally) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double variance = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                            ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (variance <= 0.0) return 1.0;

    const double z = std::max(0.0, std::abs(u_stat - mu) - 0.5) / std::sqrt(variance);
    return std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
}

}  // namespace

TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                          TestMethod method, double alpha) {
    if (a.empty() || b.empty()) {
        throw DataError("mann_whitney_u: both samples must be non-empty");
    }
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();

    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    double r1 = 0.0;
    for (std::size_t i = 0; i < n1; ++i) r1 += ranks[i];
    const double u_stat = r1 - static_cast<double>(n1 * (n1 + 1)) / 2.0;

    const bool tied = has_ties(pooled);
    const bool use_exact = method == TestMethod::exact ||
                           (method == TestMethod::automatic && n1 + n2 <= 20 && !tied);

    TestResult result;
    result.u_statistic = u_stat;
    result.n1 = n1;
    result.n2 = n2;
    result.alpha = alpha;
    result.method = use_exact ? TestResult::Used::exact : TestResult::Used::normal_approx;
    result.degenerate =
        std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled[0]; });

    if (result.degenerate) {
        result.p_value = 1.0;
        return result;
    }
    if (use_exact) {
        result.p_value = tied ? exact_p_subsets(ranks, n1, u_stat)
                              : exact_p_no_ties(n1, n2, u_stat);
    } else {
        result.p_value = normal_p(pooled, n1, n2, u_stat);
    }
    return result;
}

std::vector<GroupComparison> compare_groups(const std::vector<GroupRow>& rows,
                                            TestMethod method, double alpha) {
    std::vector<GroupComparison> out;
    out.reserve(rows.size());
    for (const GroupRow& row : rows) {
        GroupComparison c;
        c.feature = row.feature;
        c.n1 = row.group_a.size();
        c.n2 = row.group_b.size();
        if (row.group_a.empty() || row.group_b.empty()) {
            c.skipped = true;
        } else {
            c.result = mann_whitney_u(row.group_a, row.group_b, method, alpha);
        }
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
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

}  // namespace

std::vector<GroupRow> read_long_csv(std::istream& in) {
    std::vector<GroupRow> rows;
    std::map<std::string, std::size_t> row_index;
    std::vector<std::string> groups;  // first two labels encountered

    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected feature,group,value");
        }
        const bool header = first_data_line && fields[0] == "feature" && fields[1] == "group";
        first_data_line = false;
        if (header) continue;

        const std::string& feature = fields[0];
        const std::string& group = fields[1];
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad value '" +
                             fields[2] + "'");
        }

        if (std::find(groups.begin(), groups.end(), group) == groups.end()) {
            groups.push_back(group);
            if (groups.size() > 2) {
                throw DataError("more than two groups in input (saw '" + group + "')");
            }
        }
        auto [it, fresh] = row_index.try_emplace(feature, rows.size());
        if (fresh) rows.push_back(GroupRow{feature, {}, {}});
        GroupRow& row = rows[it->second];
        (group == groups[0] ? row.group_a : row.group_b).push_back(value);
    }
    return rows;
}

void write_comparison_csv(std::ostream& out, const std::vector<GroupComparison>& rows) {
    out << "feature,U,n1,n2,p,method,significant\n";
    char buf[64];
    for (const GroupComparison& c : rows) {
        if (c.skipped) {
            out << c.feature << ",," << c.n1 << ',' << c.n2 << ",,skipped,\n";
            continue;
        }
        out << c.feature << ',';
        std::snprintf(buf, sizeof(buf), "%.4f", c.result.u_statistic);
        out << buf << ',' << c.n1 << ',' << c.n2 << ',';
        std::snprintf(buf, sizeof(buf), "%.6f", c.result.p_value);
        out << buf << ','
            << (c.result.method == TestResult::Used::exact ? "exact" : "normal_approx") << ','
            << (c.result.significant() ? "yes" : "no") << '\n';
    }
}

}  // namespace sessiontree
