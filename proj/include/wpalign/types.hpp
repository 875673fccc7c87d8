#pragma once

#include <Eigen/Dense>
#include <string>
#include <unordered_map>
#include <vector>

#include "wpalign/error.hpp"

namespace wpalign {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// An ordered word list plus one row vector per word. Immutable after
/// construction; safe to share across threads.
class EmbeddingSpace {
public:
    // Words must be unique and match the row count. When `normalized` is set,
    // every row must have unit Euclidean norm within 1e-6.
    EmbeddingSpace(std::vector<std::string> words, Matrix vectors, bool normalized = false);

    const std::vector<std::string>& words() const noexcept { return words_; }
    const Matrix& vectors() const noexcept { return vectors_; }
    bool normalized() const noexcept { return normalized_; }

    Index size() const noexcept { return vectors_.rows(); }
    Index dim() const noexcept { return vectors_.cols(); }

    const std::string& word(Index i) const { return words_.at(static_cast<std::size_t>(i)); }

    // Row index of `word`, or -1 if absent.
    Index index_of(const std::string& word) const;

private:
    std::vector<std::string> words_;
    Matrix vectors_;
    bool normalized_ = false;
    std::unordered_map<std::string, Index> index_;
};

/// A d x d matrix W with WtW = I within 1e-6 * d in Frobenius norm,
/// checked on construction.
class OrthogonalMap {
public:
    explicit OrthogonalMap(Matrix matrix);

    static OrthogonalMap identity(Index d) { return OrthogonalMap(Matrix::Identity(d, d)); }

    const Matrix& matrix() const noexcept { return matrix_; }
    Index dim() const noexcept { return matrix_.rows(); }

private:
    Matrix matrix_;
};

/// A bijection on {0..N-1}: forward[i] is the target row matched to source
/// row i. With P the corresponding permutation matrix, (PY) row i equals
/// Y row forward[i].
class PermutationMap {
public:
    explicit PermutationMap(std::vector<Index> forward);

    static PermutationMap identity(Index n);

    Index size() const noexcept { return static_cast<Index>(forward_.size()); }
    Index operator[](Index i) const { return forward_[static_cast<std::size_t>(i)]; }
    const std::vector<Index>& forward() const noexcept { return forward_; }

    PermutationMap inverse() const;

    // compose(a, b)(i) = a(b(i)) -- b acts first.
    static PermutationMap compose(const PermutationMap& a, const PermutationMap& b);

    bool operator==(const PermutationMap& other) const { return forward_ == other.forward_; }

private:
    std::vector<Index> forward_;
};

/// Thin SVD factors: m = u * sigma.asDiagonal() * v.transpose(), with sigma
/// non-increasing and u, v column-orthonormal.
struct SvdFactors {
    Matrix u;
    Vector sigma;
    Matrix v;
};

}  // namespace wpalign
