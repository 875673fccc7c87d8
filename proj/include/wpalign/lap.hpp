#pragma once

#include "wpalign/types.hpp"

namespace wpalign {

/// Dense square cost matrix for the assignment problem. Entries are stored
/// in 32-bit floats: assignment decisions tolerate the rounding, and a
/// vocabulary-scale matrix in 64 bits would double the memory bill.
struct CostMatrix {
    Eigen::MatrixXf values;

    Index n() const noexcept { return values.rows(); }

    static CostMatrix from(const Matrix& m) { return CostMatrix{m.cast<float>()}; }
};

struct AssignmentResult {
    PermutationMap assignment;
    double total_cost;  // sum of cost(i, assignment[i]), accumulated in index order
};

// Minimum-cost bijection via shortest augmenting paths with dual potentials
// (Jonker-Volgenant style), O(N^3) worst case. Equal-cost choices resolve to
// the lowest column index. Throws NonFinite on NaN/Inf entries.
AssignmentResult solve_assignment(const CostMatrix& cost);

// Exhaustive minimum over all n! permutations; the test oracle.
// Throws TooLarge for n > 9.
AssignmentResult brute_force_assignment(const CostMatrix& cost);

// The matching step of the alignment iteration: the permutation maximizing
// sum_i x_i . y_{p(i)}, solved as an assignment on cost(i, j) = -x_i . y_j.
PermutationMap match_step(const EmbeddingSpace& x, const EmbeddingSpace& y);

// cost(i, j) = -(x row i) . (y row j), built in float.
CostMatrix negative_gram_cost(const Matrix& x, const Matrix& y);

}  // namespace wpalign
