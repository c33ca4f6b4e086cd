#ifndef SESSIONTREE_STATS_HPP
#define SESSIONTREE_STATS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sessiontree {

enum class TestMethod { automatic, exact, normal };

struct TestResult {
    double u_statistic = 0.0;  // U of the first sample
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double p_value = 1.0;  // two-sided
    enum class Used { exact, normal_approx } method = Used::exact;
    bool degenerate = false;  // every value identical across both samples
    double alpha = 0.05;

    bool significant() const { return !degenerate && p_value <= alpha; }
};

// Two-sided Mann-Whitney U with midrank tie handling. The exact method
// evaluates the permutation distribution (chosen automatically for
// n1+n2 <= 20 without ties; with ties a forced exact run enumerates
// subsets of the observed midranks). The normal approximation applies
// the tie-corrected variance and a continuity correction.
TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                          TestMethod method = TestMethod::automatic, double alpha = 0.05);

struct GroupRow {
    std::string feature;
    std::vector<double> group_a;
    std::vector<double> group_b;
};

struct GroupComparison {
    std::string feature;
    bool skipped = false;  // one side had no values
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    TestResult result;  // valid when !skipped
};

// One test per row, output order = input order. Rows with an empty side
// are reported as skipped rather than tested.
std::vector<GroupComparison> compare_groups(const std::vector<GroupRow>& rows,
                                            TestMethod method = TestMethod::automatic,
                                            double alpha = 0.05);

// Long-format CSV `feature,group,value` (header optional). Exactly two
// distinct group labels are expected; the first one encountered becomes
// group A. Features keep their first-appearance order.
std::vector<GroupRow> read_long_csv(std::istream& in);

// CSV table `feature,U,n1,n2,p,method,significant`.
void write_comparison_csv(std::ostream& out, const std::vector<GroupComparison>& rows);

}  // namespace sessiontree

#endif  // SESSIONTREE_STATS_HPP
