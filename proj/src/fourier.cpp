#include "ffsalem/fourier.hpp"

#include <cmath>

namespace ffsalem {

namespace {

// One-dimensional transform matrix M[u*q+v] = kernel(u*v), materialized when
// small enough to pay for itself.
std::vector<cplx> kernel_matrix(const FieldCtx& F, const cplx* kernel) {
    const std::uint64_t q = F.q();
    std::vector<cplx> M;
    if (q <= 1024) {
        M.resize(q * q);
        for (std::uint64_t u = 0; u < q; ++u)
            for (std::uint64_t v = 0; v < q; ++v)
                M[u * q + v] = kernel[F.mul(elem_t(u), elem_t(v))];
    }
    return M;
}

// Applies the 1-D kernel along every axis in turn.
GridFunction axis_transform(const GridFunction& f, const cplx* kernel) {
    const FieldCtx& F = *f.ctx;
    const std::uint64_t q = F.q();
    const std::uint64_t N = f.size();
    GridFunction out = f;
    std::vector<cplx> M = kernel_matrix(F, kernel);
    std::vector<cplx> line(q), tmp(q);

    std::uint64_t stride = 1;
    for (std::uint32_t axis = 0; axis < f.d; ++axis) {
        const std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < N; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                cplx* p = out.values.data() + base + off;
                for (std::uint64_t v = 0; v < q; ++v) line[v] = p[v * stride];
                if (!M.empty()) {
                    for (std::uint64_t u = 0; u < q; ++u) {
                        const cplx* row = M.data() + u * q;
                        cplx acc(0.0, 0.0);
                        for (std::uint64_t v = 0; v < q; ++v) acc += row[v] * line[v];
                        tmp[u] = acc;
                    }
                } else {
                    for (std::uint64_t u = 0; u < q; ++u) {
                        cplx acc(0.0, 0.0);
                        for (std::uint64_t v = 0; v < q; ++v)
                            acc += kernel[F.mul(elem_t(u), elem_t(v))] * line[v];
                        tmp[u] = acc;
                    }
                }
                for (std::uint64_t u = 0; u < q; ++u) p[u * stride] = tmp[u];
            }
        }
        stride *= q;
    }
    return out;
}

} // namespace

GridFunction dft_naive(const GridFunction& f) {
    const FieldCtx& F = *f.ctx;
    const std::uint64_t N = f.size();
    const std::uint32_t p = F.p();
    const std::uint32_t n = F.n();
    const std::uint32_t d = f.d;
    GridFunction out(f.ctx, d);
    const cplx* chin = F.chi_neg_data();
    const cplx* src = f.values.data();
    // x walks a base-p odometer over all n*d polynomial digits; bumping the
    // digit for t^m in coordinate j adds xi_j * t^m to the dot product, and p
    // such adds cancel in characteristic p, so carries are clean. (A base-q
    // walk would not be: +1 on an element encoding is not field +1 once
    // n > 1.)
    std::vector<std::uint32_t> xdig(std::size_t(d) * n);
    std::vector<elem_t> delta(std::size_t(d) * n);

    for (std::uint64_t xi_idx = 0; xi_idx < N; ++xi_idx) {
        Point xi = decode_point(F, d, xi_idx);
        for (std::uint32_t j = 0; j < d; ++j) {
            elem_t tm = 1;
            for (std::uint32_t m = 0; m < n; ++m) {
                delta[std::size_t(j) * n + m] = F.mul(xi[j], tm);
                tm = elem_t(std::uint64_t(tm) * p); // t^(m+1) encodes as p^(m+1)
            }
        }
        cplx acc(0.0, 0.0);
        elem_t dotv = 0;
        std::fill(xdig.begin(), xdig.end(), 0);
        for (std::uint64_t x = 0; x < N; ++x) {
            acc += chin[dotv] * src[x];
            if (x + 1 == N) break;
            std::uint32_t s = 0;
            while (true) {
                dotv = F.add(dotv, delta[s]);
                if (++xdig[s] < p) break;
                xdig[s] = 0;
                ++s;
            }
        }
        out.values[xi_idx] = acc;
    }
    return out;
}

GridFunction dft_fast(const GridFunction& f) {
    return axis_transform(f, f.ctx->chi_neg_data());
}

GridFunction idft_fast(const GridFunction& fhat) {
    GridFunction out = axis_transform(fhat, fhat.ctx->chi_data());
    const double scale = 1.0 / double(out.size());
    for (cplx& v : out.values) v *= scale;
    return out;
}

double plancherel_defect(const GridFunction& f) {
    GridFunction fhat = dft_fast(f);
    double lhs = 0.0, l2 = 0.0;
    for (const cplx& v : fhat.values) lhs += std::norm(v);
    for (const cplx& v : f.values) l2 += std::norm(v);
    const double rhs = double(f.size()) * l2;
    return std::abs(lhs - rhs) / (rhs + 1.0);
}

std::pair<double, std::uint64_t> sup_nonzero(const GridFunction& fhat) {
    if (fhat.size() <= 1)
        throw Error(ErrorCode::DimensionZero, "no nonzero frequencies on this grid");
    double best = -1.0;
    std::uint64_t arg = 1;
    for (std::uint64_t i = 1; i < fhat.size(); ++i) {
        double m = std::abs(fhat.values[i]);
        if (m > best) {
            best = m;
            arg = i;
        }
    }
    return {best, arg};
}

Measure project(const Measure& mu, std::uint32_t m) {
    const std::uint32_t d = mu.grid.d;
    if (m < 1 || m >= d)
        throw Error(ErrorCode::BadDimensionSplit,
                    "projection target must satisfy 1 <= m < d");
    const FieldCtx& F = *mu.grid.ctx;
    std::uint64_t inner = 1;
    for (std::uint32_t i = 0; i < m; ++i) inner *= F.q();
    const std::uint64_t outer = mu.size() / inner;

    if (mu.exact) {
        std::vector<std::uint64_t> counts(inner, 0);
        for (std::uint64_t y = 0; y < outer; ++y)
            for (std::uint64_t x = 0; x < inner; ++x) counts[x] += mu.exact->num[y * inner + x];
        return Measure::from_counts(mu.grid.ctx, m, std::move(counts), mu.exact->den);
    }
    GridFunction g(mu.grid.ctx, m);
    for (std::uint64_t y = 0; y < outer; ++y)
        for (std::uint64_t x = 0; x < inner; ++x)
            g.values[x] += mu.grid.values[y * inner + x];
    for (cplx& v : g.values) v = cplx(v.real(), 0.0);
    return Measure::from_grid(std::move(g));
}

} // namespace ffsalem
