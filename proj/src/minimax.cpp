#include "ffsalem/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ffsalem/errors.hpp"
#include "ffsalem/fourier.hpp"
#include "ffsalem/grassmannian.hpp"
#include "ffsalem/salem.hpp"

namespace ffsalem {

namespace {

constexpr std::uint64_t kDenseIterLimit = 2401;

// Euclidean projection onto the probability simplex (sort-based).
void project_simplex(std::vector<double>& w) {
    std::vector<double> u(w);
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0;
    double theta = 0;
    std::size_t rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / double(i + 1);
        if (u[i] - t > 0) {
            rho = i + 1;
            theta = t;
        }
    }
    (void)rho;
    for (double& x : w) x = std::max(0.0, x - theta);
}

// sup_{xi != 0} |mu_hat| with mu given by weights on the support cells.
// Returns (value, argmax encoding, phase at argmax).
struct SupEval {
    double value;
    std::uint64_t argmax;
    double phase;
};

SupEval eval_sup(const std::vector<std::uint64_t>& cells, const std::vector<double>& w,
                 GridFunction& scratch) {
    std::fill(scratch.values.begin(), scratch.values.end(), cplx(0));
    for (std::size_t i = 0; i < cells.size(); ++i) scratch.values[cells[i]] = w[i];
    const GridFunction hat = dft_fast(scratch);
    SupEval s{-1.0, 0, 0.0};
    for (std::uint64_t idx = 1; idx < hat.values.size(); ++idx) {
        const double v = std::abs(hat.values[idx]);
        if (v > s.value) {
            s.value = v;
            s.argmax = idx;
            s.phase = std::arg(hat.values[idx]);
        }
    }
    return s;
}

} // namespace

MinimaxResult minimax_measure(const PointSet& E, const MinimaxOptions& opts) {
    if (E.cardinality() == 0)
        throw Error(ErrorCode::EmptySupport, "minimax: empty point set");
    if (E.cells() > kDenseIterLimit)
        throw Error(ErrorCode::TooLarge, "minimax: q^d > " + std::to_string(kDenseIterLimit));
    const FieldCtx& F = *E.field();
    const std::uint32_t d = E.dim();
    const std::vector<std::uint64_t> cells = E.members();
    const std::size_t m = cells.size();

    std::vector<double> w(m, 0.0);
    if (opts.warm_start) {
        const Measure& ws = *opts.warm_start;
        if (ws.grid.ctx.get() != E.field().get() || ws.grid.d != d)
            throw Error(ErrorCode::ContextMismatch, "minimax: warm start on another grid");
        std::vector<char> in(E.cells(), 0);
        for (std::uint64_t c : cells) in[c] = 1;
        for (std::uint64_t idx = 0; idx < ws.grid.values.size(); ++idx) {
            const double v = ws.grid.values[idx].real();
            if (v > 0 && !in[idx])
                throw Error(ErrorCode::InvalidArgument,
                            "minimax: warm start puts mass outside the set");
        }
        for (std::size_t i = 0; i < m; ++i) w[i] = ws.grid.values[cells[i]].real();
    } else if (opts.seed != 0) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double sum = 0;
        for (double& x : w) {
            x = -std::log(1.0 - uni(rng));
            sum += x;
        }
        for (double& x : w) x /= sum;
    } else {
        std::fill(w.begin(), w.end(), 1.0 / double(m));
    }

    std::vector<Point> pts;
    pts.reserve(m);
    for (std::uint64_t c : cells) pts.push_back(decode_point(F, d, c));

    GridFunction scratch(E.field(), d);
    const double lower = min_sup_lower_bound(m, F, d);

    std::vector<double> best_w = w;
    SupEval cur = eval_sup(cells, w, scratch);
    double best = cur.value;

    std::size_t t = 0;
    for (; t < opts.max_iters && best - lower > opts.tol; ++t) {
        if (opts.on_iterate) opts.on_iterate(t, std::span<const double>(w), cur.value);
        const Point xi = decode_point(F, d, cur.argmax);
        const cplx rot = std::polar(1.0, -cur.phase);
        const double eta = opts.eta0 / std::sqrt(double(t + 1));
        for (std::size_t i = 0; i < m; ++i) {
            const cplx g = rot * F.char_value(F.neg(dot(F, xi, pts[i])));
            w[i] -= eta * g.real();
        }
        project_simplex(w);
        cur = eval_sup(cells, w, scratch);
        if (cur.value < best) {
            best = cur.value;
            best_w = w;
        }
    }

    GridFunction g(E.field(), d);
    for (std::size_t i = 0; i < m; ++i) g.values[cells[i]] = best_w[i];
    MinimaxResult r{Measure::from_grid(std::move(g)),
                    best,
                    lower,
                    t,
                    best - lower,
                    best * double(F.q()),
                    best - lower <= opts.tol};
    return r;
}

SharpnessReport sharpness_report(const PointSet& K0, std::uint32_t d,
                                 const MinimaxOptions& opts, double window_slack) {
    if (K0.dim() != 2)
        throw Error(ErrorCode::BadDimension, "sharpness_report: K0 must be planar");
    if (d < 2) throw Error(ErrorCode::BadDimension, "sharpness_report: d < 2");
    if (!is_kakeya(K0))
        throw Error(ErrorCode::NotKakeya, "sharpness_report: K0 misses a direction");
    const FieldRef ctx = K0.field();
    const FieldCtx& F = *ctx;

    const PointSet K = d == 2 ? K0 : product_with_full(K0, d);

    // Line family inside K, one direction each, to warm-start the optimizer.
    std::vector<Subspace> gamma = enumerate_grassmannian(d, 1, ctx);
    const DkWitness wit = is_dk_set(K, gamma);
    if (!wit.ok)
        throw Error(ErrorCode::NotKakeya, "sharpness_report: product set misses a direction");
    std::vector<AffinePlane> planes;
    planes.reserve(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i)
        planes.push_back({gamma[i], decode_point(F, d, wit.shifts[i])});
    const AffinePlaneFamily fam =
        AffinePlaneFamily::create(ctx, d, 1, std::move(planes));
    const Measure inc = incidence_measure(fam);
    const auto [inc_sup, inc_arg] = sup_nonzero(dft_fast(inc.grid));
    (void)inc_arg;

    MinimaxOptions run = opts;
    run.warm_start = &inc;
    const MinimaxResult res = minimax_measure(K, run);

    SharpnessReport rep;
    rep.p = F.p();
    rep.n = F.n();
    rep.q = F.q();
    rep.d = d;
    rep.k0_size = K0.cardinality();
    rep.k_size = K.cardinality();
    rep.c = double(K0.cardinality()) / double(grid_size(F, 2));
    rep.lower_bound = std::sqrt((1.0 - rep.c) / rep.c) / double(F.q());
    rep.upper_bound = 1.0 / double(F.q());
    rep.incidence_sup = inc_sup;
    rep.v_star = res.value;
    rep.kappa_effective = res.kappa_effective;
    rep.gap = res.gap;
    rep.iterations = res.iterations;
    rep.converged = res.converged;

    if (d > 2) {
        const Measure nu = project(res.measure, 2);
        const GridFunction mu_hat = dft_fast(res.measure.grid);
        const GridFunction nu_hat = dft_fast(nu.grid);
        double defect = 0;
        for (std::uint64_t i = 0; i < nu_hat.values.size(); ++i)
            defect = std::max(defect, std::abs(mu_hat.values[i] - nu_hat.values[i]));
        rep.projection_defect = defect;
    }

    rep.in_window = res.value >= rep.lower_bound - window_slack &&
                    res.value <= rep.upper_bound + window_slack;
    return rep;
}

} // namespace ffsalem
