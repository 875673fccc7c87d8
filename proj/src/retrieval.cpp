#include "wpalign/retrieval.hpp"

#include <algorithm>
#include <sstream>

namespace wpalign {

namespace {

// Rows per similarity block, sized so a block stays around 256 MB.
Index block_rows(Index n_targets) {
    const Index budget = (Index{256} << 20) / (8 * std::max<Index>(n_targets, 1));
    return std::max<Index>(1, budget);
}

Matrix normalized_copy(const Matrix& m) {
    Matrix out = m;
    for (Index i = 0; i < out.rows(); ++i) {
        const double norm = out.row(i).norm();
        if (norm < 1e-12) {
            std::ostringstream msg;
            msg << "row " << i << " has zero norm; cosine similarity undefined";
            fail("ZeroVector", msg.str());
        }
        out.row(i) /= norm;
    }
    return out;
}

void check_retrieval_inputs(const EmbeddingSpace& x, const OrthogonalMap& w,
                            const EmbeddingSpace& y) {
    if (x.dim() != y.dim() || w.dim() != x.dim())
        fail("DimensionMismatch", "source, map and target dimensions must agree");
}

void check_k(int k, Index n_src, Index n_tgt) {
    const Index limit = std::min(n_src, n_tgt) - 1;
    if (k < 1 || static_cast<Index>(k) > limit) {
        std::ostringstream msg;
        msg << "k = " << k << " outside the valid range [1, " << limit << "]";
        fail("InvalidK", msg.str());
    }
}

// Keeps the k best entries by (value descending, index ascending). The kept
// set is independent of offer order, so streaming blocks stays exact.
class TopK {
public:
    explicit TopK(int k) : k_(static_cast<std::size_t>(k)) {}

    void offer(double value, Index index) {
        if (values_.size() < k_) {
            values_.push_back(value);
            indices_.push_back(index);
            if (values_.size() == k_) locate_worst();
            return;
        }
        if (value < values_[worst_] || (value == values_[worst_] && index > indices_[worst_]))
            return;
        values_[worst_] = value;
        indices_[worst_] = index;
        locate_worst();
    }

    // Mean over the kept entries, accumulated in (value desc, index asc)
    // order so that every computation path sums identically.
    double mean() const {
        std::vector<std::size_t> order(values_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (values_[a] != values_[b]) return values_[a] > values_[b];
            return indices_[a] < indices_[b];
        });
        double sum = 0.0;
        for (std::size_t i : order) sum += values_[i];
        return sum / static_cast<double>(values_.size());
    }

private:
    void locate_worst() {
        worst_ = 0;
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (values_[i] < values_[worst_] ||
                (values_[i] == values_[worst_] && indices_[i] > indices_[worst_]))
                worst_ = i;
        }
    }

    std::size_t k_;
    std::size_t worst_ = 0;
    std::vector<double> values_;
    std::vector<Index> indices_;
};

}  // namespace

std::vector<Index> nn_translate(const EmbeddingSpace& x, const OrthogonalMap& w,
                                const EmbeddingSpace& y) {
    check_retrieval_inputs(x, w, y);
    const Matrix source = normalized_copy(x.vectors() * w.matrix());
    const Matrix target_t = normalized_copy(y.vectors()).transpose();

    std::vector<Index> out(static_cast<std::size_t>(source.rows()));
    const Index block = block_rows(target_t.cols());
    Matrix sim;
    for (Index r0 = 0; r0 < source.rows(); r0 += block) {
        const Index rows = std::min(block, source.rows() - r0);
        sim.noalias() = source.middleRows(r0, rows) * target_t;
        for (Index r = 0; r < rows; ++r) {
            Index best = 0;
            for (Index t = 1; t < sim.cols(); ++t)
                if (sim(r, t) > sim(r, best)) best = t;
            out[static_cast<std::size_t>(r0 + r)] = best;
        }
    }
    return out;
}

std::vector<Index> csls_translate(const EmbeddingSpace& x, const OrthogonalMap& w,
                                  const EmbeddingSpace& y, const CslsConfig& cfg) {
    check_retrieval_inputs(x, w, y);
    check_k(cfg.k, x.size(), y.size());
    const Matrix source = normalized_copy(x.vectors() * w.matrix());
    const Matrix target_t = normalized_copy(y.vectors()).transpose();
    const Index n_src = source.rows();
    const Index n_tgt = target_t.cols();
    const Index block = block_rows(n_tgt);

    // Pass 1: neighborhood means on both sides.
    std::vector<double> mu_src(static_cast<std::size_t>(n_src));
    std::vector<TopK> tgt_top(static_cast<std::size_t>(n_tgt), TopK(cfg.k));
    Matrix sim;
    for (Index r0 = 0; r0 < n_src; r0 += block) {
        const Index rows = std::min(block, n_src - r0);
        sim.noalias() = source.middleRows(r0, rows) * target_t;
        for (Index r = 0; r < rows; ++r) {
            TopK row_top(cfg.k);
            for (Index t = 0; t < n_tgt; ++t) {
                row_top.offer(sim(r, t), t);
                tgt_top[static_cast<std::size_t>(t)].offer(sim(r, t), r0 + r);
            }
            mu_src[static_cast<std::size_t>(r0 + r)] = row_top.mean();
        }
    }
    std::vector<double> mu_tgt(static_cast<std::size_t>(n_tgt));
    for (Index t = 0; t < n_tgt; ++t) mu_tgt[static_cast<std::size_t>(t)] = tgt_top[static_cast<std::size_t>(t)].mean();

    // Pass 2: argmax of the corrected scores.
    std::vector<Index> out(static_cast<std::size_t>(n_src));
    for (Index r0 = 0; r0 < n_src; r0 += block) {
        const Index rows = std::min(block, n_src - r0);
        sim.noalias() = source.middleRows(r0, rows) * target_t;
        for (Index r = 0; r < rows; ++r) {
            Index best = 0;
            double best_score = 2.0 * sim(r, 0) - mu_src[static_cast<std::size_t>(r0 + r)] - mu_tgt[0];
            for (Index t = 1; t < n_tgt; ++t) {
                const double score =
                    2.0 * sim(r, t) - mu_src[static_cast<std::size_t>(r0 + r)] - mu_tgt[static_cast<std::size_t>(t)];
                if (score > best_score) {
                    best_score = score;
                    best = t;
                }
            }
            out[static_cast<std::size_t>(r0 + r)] = best;
        }
    }
    return out;
}

Matrix csls_score_matrix(const Matrix& similarity, int k) {
    check_k(k, similarity.rows(), similarity.cols());
    const Index n_src = similarity.rows();
    const Index n_tgt = similarity.cols();

    std::vector<double> mu_src(static_cast<std::size_t>(n_src));
    for (Index s = 0; s < n_src; ++s) {
        TopK top(k);
        for (Index t = 0; t < n_tgt; ++t) top.offer(similarity(s, t), t);
        mu_src[static_cast<std::size_t>(s)] = top.mean();
    }
    std::vector<double> mu_tgt(static_cast<std::size_t>(n_tgt));
    for (Index t = 0; t < n_tgt; ++t) {
        TopK top(k);
        for (Index s = 0; s < n_src; ++s) top.offer(similarity(s, t), s);
        mu_tgt[static_cast<std::size_t>(t)] = top.mean();
    }

    Matrix scores(n_src, n_tgt);
    for (Index s = 0; s < n_src; ++s)
        for (Index t = 0; t < n_tgt; ++t)
            scores(s, t) = 2.0 * similarity(s, t) - mu_src[static_cast<std::size_t>(s)] -
                           mu_tgt[static_cast<std::size_t>(t)];
    return scores;
}

}  // namespace wpalign
