#pragma once

#include <random>

#include "wpalign/types.hpp"

namespace wpalign {

// Copy of `space` with every row scaled to unit Euclidean norm.
// Throws ZeroVector if a row norm is below 1e-12.
EmbeddingSpace normalize_rows(const EmbeddingSpace& space);

// Pairwise inner products: entry (i, j) = x_i . y_j. Requires identical N and d.
Matrix gram_cross(const EmbeddingSpace& x, const EmbeddingSpace& y);

// Permuted row copy: result row i = y row p(i) (this is PY for the matrix P
// encoded by p).
Matrix apply_permutation(const PermutationMap& p, const Matrix& y);
EmbeddingSpace apply_permutation(const PermutationMap& p, const EmbeddingSpace& y);

// Sum of singular values.
double nuclear_norm(const Matrix& m);

SvdFactors thin_svd(const Matrix& m);

// |Xt P Y|_* -- the trace-norm matching objective for a fixed permutation.
double nuclear_norm_objective(const EmbeddingSpace& x, const PermutationMap& p,
                              const EmbeddingSpace& y);

// |XW - PY|_F^2.
double frobenius_alignment_cost(const EmbeddingSpace& x, const OrthogonalMap& w,
                                const PermutationMap& p, const EmbeddingSpace& y);

Matrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
// of R's diagonal fixed).
Matrix random_orthogonal(Index d, std::mt19937_64& rng);

}  // namespace wpalign
