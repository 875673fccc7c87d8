#include "wpalign/procrustes.hpp"

#include <Eigen/SVD>
#include <limits>
#include <random>

#include "wpalign/core.hpp"

namespace wpalign {

ProcrustesResult procrustes(const Matrix& x, const Matrix& y_matched) {
    if (x.rows() != y_matched.rows() || x.cols() != y_matched.cols())
        fail("DimensionMismatch", "x and y_matched must have identical shape");
    const Matrix product = x.transpose() * y_matched;
    Eigen::BDCSVD<Matrix> svd(product, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& sigma = svd.singularValues();
    const bool deficient = sigma(sigma.size() - 1) <= 1e-10 * sigma(0);
    return ProcrustesResult{OrthogonalMap(svd.matrixU() * svd.matrixV().transpose()), deficient};
}

double optimality_gap(const Matrix& x, const Matrix& y_matched, const OrthogonalMap& w,
                      int trials, std::uint64_t seed) {
    if (x.rows() != y_matched.rows() || x.cols() != y_matched.cols())
        fail("DimensionMismatch", "x and y_matched must have identical shape");
    if (w.dim() != x.cols())
        fail("DimensionMismatch", "map dimension does not match column count");
    const double base = (x * w.matrix() - y_matched).squaredNorm();
    std::mt19937_64 rng(seed);
    double gap = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const Matrix q = random_orthogonal(x.cols(), rng);
        gap = std::min(gap, (x * q - y_matched).squaredNorm() - base);
    }
    return gap;
}

}  // namespace wpalign
