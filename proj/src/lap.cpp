#include "wpalign/lap.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace wpalign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cost(const CostMatrix& cost) {
    if (cost.values.rows() != cost.values.cols() || cost.values.rows() < 1)
        fail("DimensionMismatch", "cost matrix must be square and non-empty");
    if (!cost.values.allFinite())
        fail("NonFinite", "cost matrix contains NaN or infinite entries");
}

double assignment_total(const Eigen::MatrixXf& c, const std::vector<Index>& p) {
    double total = 0.0;
    for (Index i = 0; i < c.rows(); ++i) total += static_cast<double>(c(i, p[static_cast<std::size_t>(i)]));
    return total;
}

// Shortest augmenting path from `source` in the reduced-cost graph; returns
// the sink column and leaves predecessor/visit state for the dual update.
struct PathScratch {
    std::vector<double> shortest;
    std::vector<Index> pred;
    std::vector<Index> remaining;
    std::vector<char> visited_row;
    std::vector<char> visited_col;
};

std::vector<Index> jv_assign(const Eigen::MatrixXf& c) {
    const Index n = c.rows();
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    std::vector<Index> col_at_row(static_cast<std::size_t>(n), -1);
    std::vector<Index> row_at_col(static_cast<std::size_t>(n), -1);
    PathScratch s;
    s.shortest.resize(static_cast<std::size_t>(n));
    s.pred.resize(static_cast<std::size_t>(n));
    s.remaining.resize(static_cast<std::size_t>(n));
    s.visited_row.resize(static_cast<std::size_t>(n));
    s.visited_col.resize(static_cast<std::size_t>(n));

    for (Index source = 0; source < n; ++source) {
        std::fill(s.shortest.begin(), s.shortest.end(), kInf);
        std::fill(s.visited_row.begin(), s.visited_row.end(), 0);
        std::fill(s.visited_col.begin(), s.visited_col.end(), 0);
        std::iota(s.remaining.begin(), s.remaining.end(), Index{0});
        Index num_remaining = n;

        double path_cost = 0.0;
        Index i = source;
        Index sink = -1;
        while (sink < 0) {
            s.visited_row[static_cast<std::size_t>(i)] = 1;
            Index best_pos = -1;
            double lowest = kInf;
            for (Index pos = 0; pos < num_remaining; ++pos) {
                const Index j = s.remaining[static_cast<std::size_t>(pos)];
                const double reduced = path_cost + static_cast<double>(c(i, j)) -
                                       u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)];
                if (reduced < s.shortest[static_cast<std::size_t>(j)]) {
                    s.shortest[static_cast<std::size_t>(j)] = reduced;
                    s.pred[static_cast<std::size_t>(j)] = i;
                }
                bool better = s.shortest[static_cast<std::size_t>(j)] < lowest;
                if (!better && best_pos >= 0 && s.shortest[static_cast<std::size_t>(j)] == lowest) {
                    // ascending scan already keeps the lowest index; on ties an
                    // unassigned column still wins so augmentation can finish
                    const Index bj = s.remaining[static_cast<std::size_t>(best_pos)];
                    better = row_at_col[static_cast<std::size_t>(bj)] >= 0 &&
                             row_at_col[static_cast<std::size_t>(j)] < 0;
                }
                if (better) {
                    lowest = s.shortest[static_cast<std::size_t>(j)];
                    best_pos = pos;
                }
            }
            if (best_pos < 0 || lowest == kInf)
                fail("NonFinite", "assignment search failed to close an augmenting path");
            path_cost = lowest;
            const Index j = s.remaining[static_cast<std::size_t>(best_pos)];
            if (row_at_col[static_cast<std::size_t>(j)] < 0)
                sink = j;
            else
                i = row_at_col[static_cast<std::size_t>(j)];
            s.visited_col[static_cast<std::size_t>(j)] = 1;
            // order-preserving removal keeps the remaining scan ascending
            std::copy(s.remaining.begin() + best_pos + 1, s.remaining.begin() + num_remaining,
                      s.remaining.begin() + best_pos);
            --num_remaining;
        }

        u[static_cast<std::size_t>(source)] += path_cost;
        for (Index r = 0; r < n; ++r) {
            if (s.visited_row[static_cast<std::size_t>(r)] && r != source)
                u[static_cast<std::size_t>(r)] +=
                    path_cost - s.shortest[static_cast<std::size_t>(col_at_row[static_cast<std::size_t>(r)])];
        }
        for (Index j = 0; j < n; ++j) {
            if (s.visited_col[static_cast<std::size_t>(j)])
                v[static_cast<std::size_t>(j)] -= path_cost - s.shortest[static_cast<std::size_t>(j)];
        }

        Index j = sink;
        while (true) {
            const Index r = s.pred[static_cast<std::size_t>(j)];
            row_at_col[static_cast<std::size_t>(j)] = r;
            std::swap(col_at_row[static_cast<std::size_t>(r)], j);
            if (r == source) break;
        }
    }
    return col_at_row;
}

}  // namespace

AssignmentResult solve_assignment(const CostMatrix& cost) {
    check_cost(cost);
    std::vector<Index> p = jv_assign(cost.values);
    const double total = assignment_total(cost.values, p);
    return AssignmentResult{PermutationMap(std::move(p)), total};
}

AssignmentResult brute_force_assignment(const CostMatrix& cost) {
    check_cost(cost);
    const Index n = cost.n();
    if (n > 9) {
        std::ostringstream msg;
        msg << "brute force assignment is capped at n = 9, got " << n;
        fail("TooLarge", msg.str());
    }
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::vector<Index> best = perm;
    double best_total = assignment_total(cost.values, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        const double total = assignment_total(cost.values, perm);
        if (total < best_total) {
            best_total = total;
            best = perm;
        }
    }
    return AssignmentResult{PermutationMap(std::move(best)), best_total};
}

CostMatrix negative_gram_cost(const Matrix& x, const Matrix& y) {
    const Eigen::MatrixXf xf = x.cast<float>();
    const Eigen::MatrixXf yf = y.cast<float>();
    CostMatrix cost;
    cost.values.noalias() = -(xf * yf.transpose());
    return cost;
}

PermutationMap match_step(const EmbeddingSpace& x, const EmbeddingSpace& y) {
    if (x.dim() != y.dim() || x.size() != y.size())
        fail("DimensionMismatch", "matching requires identical N and d");
    return solve_assignment(negative_gram_cost(x.vectors(), y.vectors())).assignment;
}

}  // namespace wpalign
