#pragma once

#include <vector>

#include "wpalign/types.hpp"

namespace wpalign {

struct CslsConfig {
    int k = 10;  // neighborhood size for the similarity correction terms
};

// Plain cosine retrieval: for each source row s, the target index maximizing
// cos(W x_s, y_t). Ties resolve to the lowest index. Rows are normalized
// internally, so unnormalized inputs are accepted.
std::vector<Index> nn_translate(const EmbeddingSpace& x, const OrthogonalMap& w,
                                const EmbeddingSpace& y);

// Retrieval by cross-domain similarity local scaling:
//   score(s, t) = 2 cos(W x_s, y_t) - muT(s) - muS(t)
// where muT(s) is the mean cosine from W x_s to its k nearest target rows and
// muS(t) the mean cosine from y_t to its k nearest mapped source rows.
// Demotes hub targets that are near everything. k must satisfy
// 1 <= k <= min(N_src, N_tgt) - 1.
std::vector<Index> csls_translate(const EmbeddingSpace& x, const OrthogonalMap& w,
                                  const EmbeddingSpace& y, const CslsConfig& cfg);

// Full score matrix for a precomputed similarity matrix; the small-scale
// path used by diagnostics and tests. The blocked translate above computes
// identical scores without materializing the matrix.
Matrix csls_score_matrix(const Matrix& similarity, int k);

}  // namespace wpalign
