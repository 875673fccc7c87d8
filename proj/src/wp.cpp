#include "wpalign/wp.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include "wpalign/core.hpp"
#include "wpalign/lap.hpp"
#include "wpalign/procrustes.hpp"

namespace wpalign {

namespace {

struct Pin {
    Index src;
    Index tgt;  // in current Y coordinates; moves to src after an accepted iteration
};

void check_inputs(const EmbeddingSpace& x, const EmbeddingSpace& y, Index w_dim) {
    if (x.dim() != y.dim() || x.size() != y.size()) {
        std::ostringstream msg;
        msg << "spaces have shapes " << x.size() << "x" << x.dim() << " and " << y.size() << "x"
            << y.dim();
        fail("DimensionMismatch", msg.str());
    }
    if (w_dim >= 0 && w_dim != x.dim())
        fail("DimensionMismatch", "initial map dimension does not match embedding dimension");
}

void check_config(const SolveConfig& cfg) {
    if (cfg.max_iterations < 1) fail("InvalidConfig", "max_iterations must be at least 1");
    if (!(cfg.min_objective_gain >= 0.0)) fail("InvalidConfig", "min_objective_gain must be >= 0");
    if (cfg.subsample_size && *cfg.subsample_size < 1)
        fail("InvalidConfig", "subsample_size must be at least 1");
}

Index working_rows(const EmbeddingSpace& x, const SolveConfig& cfg) {
    return cfg.subsample_size ? std::min(*cfg.subsample_size, x.size()) : x.size();
}

Matrix gather_rows(const Matrix& m, const std::vector<Index>& p) {
    Matrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) out.row(i) = m.row(p[static_cast<std::size_t>(i)]);
    return out;
}

// One alternation step: matching (honoring pins), then the Procrustes map and
// trace norm from a single SVD of Xt(PY).
struct StepOutcome {
    std::vector<Index> p;
    Matrix w;
    double objective;
};

std::vector<Index> constrained_match(const Matrix& x, const Matrix& y,
                                     const std::vector<Pin>& pins) {
    const Index n = x.rows();
    if (pins.empty())
        return solve_assignment(negative_gram_cost(x, y)).assignment.forward();

    std::vector<char> src_pinned(static_cast<std::size_t>(n), 0);
    std::vector<char> tgt_pinned(static_cast<std::size_t>(n), 0);
    std::vector<Index> p(static_cast<std::size_t>(n), -1);
    for (const Pin& pin : pins) {
        src_pinned[static_cast<std::size_t>(pin.src)] = 1;
        tgt_pinned[static_cast<std::size_t>(pin.tgt)] = 1;
        p[static_cast<std::size_t>(pin.src)] = pin.tgt;
    }
    std::vector<Index> free_src, free_tgt;
    free_src.reserve(static_cast<std::size_t>(n) - pins.size());
    free_tgt.reserve(static_cast<std::size_t>(n) - pins.size());
    for (Index i = 0; i < n; ++i) {
        if (!src_pinned[static_cast<std::size_t>(i)]) free_src.push_back(i);
        if (!tgt_pinned[static_cast<std::size_t>(i)]) free_tgt.push_back(i);
    }
    if (!free_src.empty()) {
        const Matrix xf = gather_rows(x, free_src);
        const Matrix yf = gather_rows(y, free_tgt);
        const PermutationMap sub = solve_assignment(negative_gram_cost(xf, yf)).assignment;
        for (Index r = 0; r < static_cast<Index>(free_src.size()); ++r)
            p[static_cast<std::size_t>(free_src[static_cast<std::size_t>(r)])] =
                free_tgt[static_cast<std::size_t>(sub[r])];
    }
    return p;
}

StepOutcome iterate_once(const Matrix& x, const Matrix& y, const std::vector<Pin>& pins) {
    StepOutcome out;
    out.p = constrained_match(x, y, pins);
    const Matrix product = x.transpose() * gather_rows(y, out.p);
    Eigen::BDCSVD<Matrix> svd(product, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.w = svd.matrixU() * svd.matrixV().transpose();
    out.objective = svd.singularValues().sum();
    return out;
}

struct LoopResult {
    Matrix w_acc;               // product of accepted per-iteration maps
    std::vector<Index> p_acc;   // accumulated matching in starting coordinates
    std::vector<double> trace;
    Matrix x_final;
    Matrix y_final;
};

// The alternation of Algorithm "match then Procrustes", accepting updates
// only while the trace norm keeps increasing. The first iteration is always
// accepted (there is nothing to compare against).
LoopResult run_loop(Matrix x, Matrix y, const SolveConfig& cfg, std::vector<Pin> pins) {
    const Index n = x.rows();
    const Index d = x.cols();
    LoopResult res;
    res.w_acc = Matrix::Identity(d, d);
    res.p_acc.resize(static_cast<std::size_t>(n));
    std::iota(res.p_acc.begin(), res.p_acc.end(), Index{0});

    double prev = 0.0;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        const StepOutcome out = iterate_once(x, y, pins);
        if (!res.trace.empty()) {
            const double gain = out.objective - prev;
            const bool accepted =
                out.objective > prev && gain >= cfg.min_objective_gain * std::abs(prev);
            if (!accepted) break;
        }
        x *= out.w;
        y = gather_rows(y, out.p);
        res.w_acc *= out.w;
        std::vector<Index> composed(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i)
            composed[static_cast<std::size_t>(i)] =
                res.p_acc[static_cast<std::size_t>(out.p[static_cast<std::size_t>(i)])];
        res.p_acc = std::move(composed);
        for (Pin& pin : pins) pin.tgt = pin.src;
        res.trace.push_back(out.objective);
        prev = out.objective;
    }
    res.x_final = std::move(x);
    res.y_final = std::move(y);
    return res;
}

AlignmentRun assemble_run(const Matrix& branch_transform, int sign, LoopResult loop,
                          BranchId branch, AlignmentDebug* debug) {
    Matrix w_total = branch_transform * loop.w_acc;
    if (sign < 0) w_total = -w_total;
    if (debug) {
        debug->x_final = std::move(loop.x_final);
        debug->y_final = std::move(loop.y_final);
    }
    return AlignmentRun{OrthogonalMap(std::move(w_total)), PermutationMap(std::move(loop.p_acc)),
                        std::move(loop.trace), branch, static_cast<int>(loop.trace.size())};
}

std::vector<Pin> validate_pins(const SeedConstraints& seeds, Index n) {
    if (seeds.pinned.empty()) fail("NoResolvableSeeds", "seed constraint list is empty");
    std::vector<char> src_seen(static_cast<std::size_t>(n), 0);
    std::vector<char> tgt_seen(static_cast<std::size_t>(n), 0);
    std::vector<Pin> pins;
    pins.reserve(seeds.pinned.size());
    for (const auto& [src, tgt] : seeds.pinned) {
        if (src < 0 || src >= n || tgt < 0 || tgt >= n) {
            std::ostringstream msg;
            msg << "seed pair (" << src << ", " << tgt << ") outside the working set of " << n
                << " rows";
            fail("InvalidSeedIndex", msg.str());
        }
        if (src_seen[static_cast<std::size_t>(src)] || tgt_seen[static_cast<std::size_t>(tgt)]) {
            std::ostringstream msg;
            msg << "seed pair (" << src << ", " << tgt << ") repeats a pinned row";
            fail("DuplicateSeed", msg.str());
        }
        src_seen[static_cast<std::size_t>(src)] = 1;
        tgt_seen[static_cast<std::size_t>(tgt)] = 1;
        pins.push_back(Pin{src, tgt});
    }
    return pins;
}

AlignmentRun ih_impl(const Matrix& xs, const Matrix& ys, const Matrix& w0,
                     const SolveConfig& cfg, const std::vector<Pin>& pins,
                     AlignmentDebug* debug) {
    const SvdFactors fx = thin_svd(xs);
    const SvdFactors fy = thin_svd(ys);
    const std::array<Matrix, 4> transforms = {
        w0,
        fx.v * w0,
        w0 * fy.v.transpose(),
        fx.v * w0 * fy.v.transpose(),
    };

    // One trial iteration each; highest trace norm wins, earlier branch on ties.
    BranchId best{};
    double best_objective = -std::numeric_limits<double>::infinity();
    for (const BranchId& branch : all_branches()) {
        Matrix x0 = xs * transforms[static_cast<std::size_t>(branch.variant)];
        if (branch.sign < 0) x0 = -x0;
        const StepOutcome trial = iterate_once(x0, ys, pins);
        if (trial.objective > best_objective + 1e-12) {
            best_objective = trial.objective;
            best = branch;
        }
    }

    Matrix x0 = xs * transforms[static_cast<std::size_t>(best.variant)];
    if (best.sign < 0) x0 = -x0;
    LoopResult loop = run_loop(std::move(x0), ys, cfg, pins);
    return assemble_run(transforms[static_cast<std::size_t>(best.variant)], best.sign,
                        std::move(loop), best, debug);
}

}  // namespace

std::array<BranchId, 8> all_branches() {
    return {BranchId{InitVariant::I, +1},      BranchId{InitVariant::VX, +1},
            BranchId{InitVariant::VYT, +1},    BranchId{InitVariant::VX_VYT, +1},
            BranchId{InitVariant::I, -1},      BranchId{InitVariant::VX, -1},
            BranchId{InitVariant::VYT, -1},    BranchId{InitVariant::VX_VYT, -1}};
}

std::string to_string(BranchId branch) {
    static const char* names[] = {"I", "VX", "VYT", "VXVYT"};
    std::string out = names[static_cast<int>(branch.variant)];
    out += branch.sign < 0 ? '-' : '+';
    return out;
}

AlignmentRun cih(const EmbeddingSpace& x, const EmbeddingSpace& y, const OrthogonalMap& w0,
                 const SolveConfig& cfg, AlignmentDebug* debug) {
    check_inputs(x, y, w0.dim());
    check_config(cfg);
    const Index rows = working_rows(x, cfg);
    LoopResult loop =
        run_loop(x.vectors().topRows(rows) * w0.matrix(), y.vectors().topRows(rows), cfg, {});
    return assemble_run(w0.matrix(), +1, std::move(loop), BranchId{InitVariant::I, +1}, debug);
}

AlignmentRun ih(const EmbeddingSpace& x, const EmbeddingSpace& y, const OrthogonalMap& w0,
                const SolveConfig& cfg, AlignmentDebug* debug) {
    check_inputs(x, y, w0.dim());
    check_config(cfg);
    const Index rows = working_rows(x, cfg);
    return ih_impl(x.vectors().topRows(rows), y.vectors().topRows(rows), w0.matrix(), cfg, {},
                   debug);
}

AlignmentRun sih(const EmbeddingSpace& x, const EmbeddingSpace& y, const SeedConstraints& seeds,
                 const SolveConfig& cfg, AlignmentDebug* debug) {
    check_inputs(x, y, -1);
    check_config(cfg);
    const Index rows = working_rows(x, cfg);
    const std::vector<Pin> pins = validate_pins(seeds, rows);
    if (static_cast<Index>(pins.size()) < x.dim())
        std::cerr << "warning: " << pins.size() << " seed pairs for dimension " << x.dim()
                  << "; the seed Procrustes start is rank-deficient\n";

    std::vector<Index> seed_src, seed_tgt;
    seed_src.reserve(pins.size());
    seed_tgt.reserve(pins.size());
    for (const Pin& pin : pins) {
        seed_src.push_back(pin.src);
        seed_tgt.push_back(pin.tgt);
    }
    const Matrix xs = x.vectors().topRows(rows);
    const Matrix ys = y.vectors().topRows(rows);
    const Matrix w0 = procrustes(gather_rows(xs, seed_src), gather_rows(ys, seed_tgt)).map.matrix();
    return ih_impl(xs, ys, w0, cfg, pins, debug);
}

std::array<double, 4> branch_distance_report(const EmbeddingSpace& x, const EmbeddingSpace& y,
                                             const OrthogonalMap& w_star) {
    check_inputs(x, y, w_star.dim());
    const SvdFactors fx = thin_svd(x.vectors());
    const SvdFactors fy = thin_svd(y.vectors());
    const Index d = x.dim();
    const std::array<Matrix, 4> transforms = {
        Matrix::Identity(d, d),
        fx.v,
        fy.v.transpose(),
        fx.v * fy.v.transpose(),
    };
    std::array<double, 4> distances{};
    for (std::size_t b = 0; b < transforms.size(); ++b)
        distances[b] = (transforms[b] - w_star.matrix()).norm();
    return distances;
}

}  // namespace wpalign
