#include "wpalign/types.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace wpalign {

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> words, Matrix vectors, bool normalized)
    : words_(std::move(words)), vectors_(std::move(vectors)), normalized_(normalized) {
    if (vectors_.rows() < 1 || vectors_.cols() < 1)
        fail("InvalidEmbeddingSpace", "embedding matrix must have at least one row and one column");
    if (static_cast<Index>(words_.size()) != vectors_.rows()) {
        std::ostringstream msg;
        msg << "word count (" << words_.size() << ") does not match row count (" << vectors_.rows() << ")";
        fail("InvalidEmbeddingSpace", msg.str());
    }
    index_.reserve(words_.size());
    for (Index i = 0; i < static_cast<Index>(words_.size()); ++i) {
        auto [it, inserted] = index_.emplace(words_[static_cast<std::size_t>(i)], i);
        (void)it;
        if (!inserted)
            fail("DuplicateWord", "duplicate word '" + words_[static_cast<std::size_t>(i)] + "'");
    }
    if (normalized_) {
        for (Index i = 0; i < vectors_.rows(); ++i) {
            const double norm = vectors_.row(i).norm();
            if (std::abs(norm - 1.0) > 1e-6) {
                std::ostringstream msg;
                msg << "normalized flag set but row " << i << " has norm " << norm;
                fail("InvalidEmbeddingSpace", msg.str());
            }
        }
    }
}

Index EmbeddingSpace::index_of(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? Index{-1} : it->second;
}

OrthogonalMap::OrthogonalMap(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
        fail("NonOrthogonal", "orthogonal map must be square");
    const Index d = matrix_.rows();
    const double deviation =
        (matrix_.transpose() * matrix_ - Matrix::Identity(d, d)).norm();
    if (!(deviation <= 1e-6 * static_cast<double>(d))) {
        std::ostringstream msg;
        msg << "matrix is not orthogonal: |WtW - I|_F = " << deviation;
        fail("NonOrthogonal", msg.str());
    }
}

PermutationMap::PermutationMap(std::vector<Index> forward) : forward_(std::move(forward)) {
    const Index n = static_cast<Index>(forward_.size());
    if (n < 1) fail("InvalidPermutation", "permutation must be non-empty");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
        const Index j = forward_[static_cast<std::size_t>(i)];
        if (j < 0 || j >= n) {
            std::ostringstream msg;
            msg << "entry " << i << " maps outside {0.." << n - 1 << "}: " << j;
            fail("InvalidPermutation", msg.str());
        }
        if (seen[static_cast<std::size_t>(j)]) {
            std::ostringstream msg;
            msg << "target index " << j << " appears more than once";
            fail("InvalidPermutation", msg.str());
        }
        seen[static_cast<std::size_t>(j)] = 1;
    }
}

PermutationMap PermutationMap::identity(Index n) {
    std::vector<Index> forward(static_cast<std::size_t>(n));
    std::iota(forward.begin(), forward.end(), Index{0});
    return PermutationMap(std::move(forward));
}

PermutationMap PermutationMap::inverse() const {
    std::vector<Index> inv(forward_.size());
    for (Index i = 0; i < size(); ++i)
        inv[static_cast<std::size_t>(forward_[static_cast<std::size_t>(i)])] = i;
    return PermutationMap(std::move(inv));
}

PermutationMap PermutationMap::compose(const PermutationMap& a, const PermutationMap& b) {
    if (a.size() != b.size())
        fail("DimensionMismatch", "cannot compose permutations of different sizes");
    std::vector<Index> out(a.forward_.size());
    for (Index i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(i)] = a[b[i]];
    return PermutationMap(std::move(out));
}

}  // namespace wpalign
