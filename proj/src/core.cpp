#include "wpalign/core.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <sstream>

namespace wpalign {

namespace {

void check_same_shape(const EmbeddingSpace& x, const EmbeddingSpace& y) {
    if (x.dim() != y.dim() || x.size() != y.size()) {
        std::ostringstream msg;
        msg << "spaces have shapes " << x.size() << "x" << x.dim() << " and " << y.size() << "x"
            << y.dim();
        fail("DimensionMismatch", msg.str());
    }
}

}  // namespace

EmbeddingSpace normalize_rows(const EmbeddingSpace& space) {
    Matrix m = space.vectors();
    for (Index i = 0; i < m.rows(); ++i) {
        const double norm = m.row(i).norm();
        if (norm < 1e-12)
            fail("ZeroVector", "cannot normalize zero vector for word '" + space.word(i) + "'");
        m.row(i) /= norm;
    }
    return EmbeddingSpace(space.words(), std::move(m), true);
}

Matrix gram_cross(const EmbeddingSpace& x, const EmbeddingSpace& y) {
    check_same_shape(x, y);
    return x.vectors() * y.vectors().transpose();
}

Matrix apply_permutation(const PermutationMap& p, const Matrix& y) {
    if (p.size() != y.rows())
        fail("DimensionMismatch", "permutation size does not match row count");
    Matrix out(y.rows(), y.cols());
    for (Index i = 0; i < y.rows(); ++i) out.row(i) = y.row(p[i]);
    return out;
}

EmbeddingSpace apply_permutation(const PermutationMap& p, const EmbeddingSpace& y) {
    Matrix m = apply_permutation(p, y.vectors());
    std::vector<std::string> words(static_cast<std::size_t>(y.size()));
    for (Index i = 0; i < y.size(); ++i) words[static_cast<std::size_t>(i)] = y.word(p[i]);
    return EmbeddingSpace(std::move(words), std::move(m), y.normalized());
}

double nuclear_norm(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

SvdFactors thin_svd(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdFactors{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double nuclear_norm_objective(const EmbeddingSpace& x, const PermutationMap& p,
                              const EmbeddingSpace& y) {
    check_same_shape(x, y);
    if (p.size() != x.size())
        fail("DimensionMismatch", "permutation size does not match point count");
    const Matrix product = x.vectors().transpose() * apply_permutation(p, y.vectors());
    return nuclear_norm(product);
}

double frobenius_alignment_cost(const EmbeddingSpace& x, const OrthogonalMap& w,
                                const PermutationMap& p, const EmbeddingSpace& y) {
    check_same_shape(x, y);
    if (w.dim() != x.dim())
        fail("DimensionMismatch", "map dimension does not match embedding dimension");
    if (p.size() != x.size())
        fail("DimensionMismatch", "permutation size does not match point count");
    return (x.vectors() * w.matrix() - apply_permutation(p, y.vectors())).squaredNorm();
}

Matrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

Matrix random_orthogonal(Index d, std::mt19937_64& rng) {
    const Matrix g = random_gaussian(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}

}  // namespace wpalign
