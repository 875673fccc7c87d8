#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpalign/types.hpp"

namespace wpalign {

/// The four starting transformations induced by the SVDs X = Ux Sx Vxt and
/// Y = Uy Sy Vyt. With W0 the externally supplied start, the mapped source
/// cloud begins at X W0, X Vx W0, X W0 Vyt, or X Vx W0 Vyt; all four share
/// the same optimal matching, but start the iteration from different maps.
enum class InitVariant { I, VX, VYT, VX_VYT };

/// One of the eight iteration branches: an init variant plus the sign of the
/// source cloud (matching on -X minimizes the pairwise costs instead of
/// maximizing them, which sometimes climbs to a higher trace norm).
struct BranchId {
    InitVariant variant = InitVariant::I;
    int sign = +1;

    // Canonical order for tie-breaking: (I,+), (VX,+), (VYT,+), (VX_VYT,+),
    // then the same four with sign -1.
    int rank() const noexcept {
        return static_cast<int>(variant) + (sign < 0 ? 4 : 0);
    }

    bool operator==(const BranchId& other) const noexcept {
        return variant == other.variant && sign == other.sign;
    }
};

std::array<BranchId, 8> all_branches();
std::string to_string(BranchId branch);

struct SolveConfig {
    int max_iterations = 50;
    // Relative trace-norm gain required to accept an iteration.
    double min_objective_gain = 1e-6;
    // Rows used by the iteration; the prefix of a frequency-ordered
    // vocabulary. Unset means all rows.
    std::optional<Index> subsample_size;
    std::uint64_t rng_seed = 0;
};

/// Pinned (source row, target row) pairs: a partial injection that the
/// matching step must honor exactly.
struct SeedConstraints {
    std::vector<std::pair<Index, Index>> pinned;
};

/// Outcome of an iterative solve. w_total maps the original X onto the
/// matched Y rows (X * w_total approximates row p_total(i) of Y at row i),
/// and is the Procrustes optimum for p_total in original coordinates.
struct AlignmentRun {
    OrthogonalMap w_total;
    PermutationMap p_total;
    std::vector<double> objective_trace;  // one value per accepted iteration, strictly increasing
    BranchId branch;
    int iterations = 0;
};

/// Final working matrices of the loop, for tests that check the
/// original-coordinate reconstruction.
struct AlignmentDebug {
    Matrix x_final;
    Matrix y_final;
};

// Single-branch alternation: X <- X W0, then repeat
//   P <- match_step(X, Y), W <- procrustes(X, PY)
// accepting (X <- XW, Y <- PY) only while the trace norm keeps increasing.
AlignmentRun cih(const EmbeddingSpace& x, const EmbeddingSpace& y, const OrthogonalMap& w0,
                 const SolveConfig& cfg, AlignmentDebug* debug = nullptr);

// Runs one trial iteration on each of the eight branches, keeps the branch
// with the highest trace norm, and continues the alternation on it. The
// returned run is expressed in original (X, Y) coordinates.
AlignmentRun ih(const EmbeddingSpace& x, const EmbeddingSpace& y, const OrthogonalMap& w0,
                const SolveConfig& cfg, AlignmentDebug* debug = nullptr);

// Supervised variant: W0 comes from Procrustes on the pinned rows alone, the
// matching step never reassigns a pinned source, and every Procrustes step
// uses all rows. Pins below d trigger a warning (rank-deficient W0).
AlignmentRun sih(const EmbeddingSpace& x, const EmbeddingSpace& y, const SeedConstraints& seeds,
                 const SolveConfig& cfg, AlignmentDebug* debug = nullptr);

// Frobenius distance between each sign-positive natural initialization
// (with W0 = I) and that branch's own optimum derived from w_star, pulled
// back to original coordinates: |T_b - w_star|_F for T_b in
// {I, Vx, Vyt, Vx Vyt}. Order: I, VX, VYT, VX_VYT.
std::array<double, 4> branch_distance_report(const EmbeddingSpace& x, const EmbeddingSpace& y,
                                             const OrthogonalMap& w_star);

}  // namespace wpalign
