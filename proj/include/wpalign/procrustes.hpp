#pragma once

#include <cstdint>

#include "wpalign/types.hpp"

namespace wpalign {

struct ProcrustesResult {
    OrthogonalMap map;
    // XtY had singular values at or below 1e-10 * sigma_max. The minimizer is
    // then non-unique; UVt is still returned as a valid optimum.
    bool rank_deficient = false;
};

// Closed-form orthogonal Procrustes: W = UVt from the SVD of Xt * Y, the
// orthogonal minimizer of |XW - Y|_F^2 for row-matched X and Y.
ProcrustesResult procrustes(const Matrix& x, const Matrix& y_matched);

// min over `trials` random orthogonal Q of |XQ - Y|_F^2 - |XW - Y|_F^2.
// Non-negative when w is optimal; a probe for broken solvers.
double optimality_gap(const Matrix& x, const Matrix& y_matched, const OrthogonalMap& w,
                      int trials, std::uint64_t seed);

}  // namespace wpalign
