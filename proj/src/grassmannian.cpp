#include "ffsalem/grassmannian.hpp"

#include <algorithm>

#include "ffsalem/errors.hpp"

namespace ffsalem {

namespace {

using u128 = unsigned __int128;

u128 upow_checked(std::uint64_t base, std::uint32_t exp) {
    u128 r = 1;
    const u128 limit = ~u128(0);
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw Error(ErrorCode::Overflow, "q^e exceeds 128 bits");
        r *= base;
    }
    return r;
}

} // namespace

RrefResult rref(const FieldCtx& F, std::uint32_t d, std::vector<elem_t> rows) {
    if (d == 0) throw Error(ErrorCode::BadDimensions, "rref: d = 0");
    if (rows.size() % d != 0)
        throw Error(ErrorCode::DimensionMismatch, "rref: row data not a multiple of d");
    const std::size_t r = rows.size() / d;
    auto at = [&](std::size_t i, std::size_t j) -> elem_t& { return rows[i * d + j]; };

    RrefResult out;
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < d && rank < r; ++col) {
        std::size_t piv = r;
        for (std::size_t i = rank; i < r; ++i) {
            if (at(i, col) != 0) { piv = i; break; }
        }
        if (piv == r) continue;
        if (piv != rank) {
            for (std::uint32_t j = 0; j < d; ++j)
                std::swap(at(piv, j), at(rank, j));
        }
        const elem_t s = F.inv(at(rank, col));
        if (s != 1) {
            for (std::uint32_t j = col; j < d; ++j)
                at(rank, j) = F.mul(at(rank, j), s);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank) continue;
            const elem_t f = at(i, col);
            if (f == 0) continue;
            for (std::uint32_t j = col; j < d; ++j)
                at(i, j) = F.sub(at(i, j), F.mul(f, at(rank, j)));
        }
        out.pivots.push_back(col);
        ++rank;
    }
    rows.resize(std::size_t(rank) * d);
    out.rows = std::move(rows);
    out.rank = rank;
    return out;
}

Subspace Subspace::from_rows(FieldRef ctx, std::uint32_t d, std::vector<elem_t> data) {
    if (!ctx) throw Error(ErrorCode::InvalidArgument, "from_rows: null field");
    if (d == 0) throw Error(ErrorCode::BadDimensions, "from_rows: d = 0");
    for (elem_t v : data) {
        if (v >= ctx->q())
            throw Error(ErrorCode::InvalidArgument, "from_rows: entry out of field range");
    }
    const std::size_t given = data.size() / d;
    RrefResult r = rref(*ctx, d, std::move(data));
    if (r.rank != given)
        throw Error(ErrorCode::InvalidArgument, "from_rows: rows are linearly dependent");
    Subspace V;
    V.ctx = std::move(ctx);
    V.d = d;
    V.k = r.rank;
    V.rows = std::move(r.rows);
    V.pivots = std::move(r.pivots);
    return V;
}

bool Subspace::contains(std::span<const elem_t> v) const {
    if (v.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "contains: vector length != d");
    // Reduce v against the RREF basis; membership iff the remainder is zero.
    std::vector<elem_t> w(v.begin(), v.end());
    const FieldCtx& F = *ctx;
    for (std::uint32_t i = 0; i < k; ++i) {
        const elem_t c = w[pivots[i]];
        if (c == 0) continue;
        auto ri = row(i);
        for (std::uint32_t j = 0; j < d; ++j)
            w[j] = F.sub(w[j], F.mul(c, ri[j]));
    }
    return std::all_of(w.begin(), w.end(), [](elem_t x) { return x == 0; });
}

std::uint64_t gaussian_binomial(std::uint32_t d, std::uint32_t k, std::uint64_t q) {
    if (q < 2) throw Error(ErrorCode::InvalidArgument, "gaussian_binomial: q < 2");
    if (k > d) return 0;
    if (k == 0 || k == d) return 1;
    const u128 limit = ~u128(0);
    u128 r = 1;
    // Prefix products are the binomials [d-k+i choose i]_q, so each division
    // is exact.
    for (std::uint32_t i = 1; i <= k; ++i) {
        const u128 num = upow_checked(q, d - k + i) - 1;
        const u128 den = upow_checked(q, i) - 1;
        if (num != 0 && r > limit / num)
            throw Error(ErrorCode::Overflow, "gaussian_binomial: intermediate overflow");
        r = r * num / den;
    }
    if (r > u128(UINT64_MAX))
        throw Error(ErrorCode::Overflow, "gaussian_binomial: result exceeds 64 bits");
    return std::uint64_t(r);
}

std::vector<Subspace> enumerate_grassmannian(std::uint32_t d, std::uint32_t k,
                                             const FieldRef& ctx, std::uint64_t cap) {
    if (!ctx) throw Error(ErrorCode::InvalidArgument, "enumerate_grassmannian: null field");
    if (d == 0 || k < 1 || k >= d)
        throw Error(ErrorCode::BadDimensions, "enumerate_grassmannian: need 1 <= k <= d-1");
    const std::uint64_t total = gaussian_binomial(d, k, ctx->q());
    if (total > cap)
        throw Error(ErrorCode::TooManySubspaces,
                    "enumerate_grassmannian: " + std::to_string(total) +
                        " subspaces exceeds cap " + std::to_string(cap));

    const std::uint64_t q = ctx->q();
    std::vector<Subspace> out;
    out.reserve(total);

    // One Schubert cell per pivot pattern: pivot columns get the identity,
    // entries right of a pivot in non-pivot columns run over all of F_q.
    std::vector<std::uint32_t> piv(k);
    for (std::uint32_t i = 0; i < k; ++i) piv[i] = i;
    for (;;) {
        std::vector<char> is_piv(d, 0);
        for (std::uint32_t c : piv) is_piv[c] = 1;

        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = piv[i] + 1; j < d; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);

        std::vector<elem_t> base(std::size_t(k) * d, 0);
        for (std::uint32_t i = 0; i < k; ++i) base[std::size_t(i) * d + piv[i]] = 1;

        std::vector<elem_t> digits(free_pos.size(), 0);
        for (;;) {
            Subspace V;
            V.ctx = ctx;
            V.d = d;
            V.k = k;
            V.rows = base;
            V.pivots.assign(piv.begin(), piv.end());
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                V.rows[std::size_t(free_pos[t].first) * d + free_pos[t].second] = digits[t];
            out.push_back(std::move(V));

            std::size_t pos = 0;
            while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
            if (pos == digits.size()) break;
        }

        // next pivot combination, lexicographic
        std::uint32_t i = k;
        while (i > 0) {
            --i;
            if (piv[i] + (k - i) < d) break;
            if (i == 0) { i = k; break; }
        }
        if (i == k) break;
        ++piv[i];
        for (std::uint32_t j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }

    std::sort(out.begin(), out.end());
    return out;
}

Subspace perp(const Subspace& V) {
    if (!V.ctx) throw Error(ErrorCode::InvalidArgument, "perp: null field");
    const FieldCtx& F = *V.ctx;
    const std::uint32_t d = V.d, k = V.k;
    std::vector<char> is_piv(d, 0);
    for (std::uint32_t c : V.pivots) is_piv[c] = 1;

    // One nullspace vector per free column: 1 there, -V[i][free] at pivot i.
    std::vector<elem_t> rows;
    rows.reserve(std::size_t(d - k) * d);
    for (std::uint32_t f = 0; f < d; ++f) {
        if (is_piv[f]) continue;
        std::vector<elem_t> w(d, 0);
        w[f] = 1;
        for (std::uint32_t i = 0; i < k; ++i)
            w[V.pivots[i]] = F.neg(V.row(i)[f]);
        rows.insert(rows.end(), w.begin(), w.end());
    }
    return Subspace::from_rows(V.ctx, d, std::move(rows));
}

bool in_perp(const FieldCtx& F, std::span<const elem_t> xi, const Subspace& V) {
    if (xi.size() != V.d)
        throw Error(ErrorCode::DimensionMismatch, "in_perp: frequency length != d");
    for (std::uint32_t i = 0; i < V.k; ++i)
        if (dot(F, xi, V.row(i)) != 0) return false;
    return true;
}

std::uint64_t stabbing_count(const FieldCtx& F, std::span<const elem_t> xi,
                             const std::vector<Subspace>& gamma) {
    if (std::all_of(xi.begin(), xi.end(), [](elem_t x) { return x == 0; }))
        throw Error(ErrorCode::ZeroFrequency, "stabbing_count: xi = 0");
    std::uint64_t c = 0;
    for (const Subspace& V : gamma)
        if (in_perp(F, xi, V)) ++c;
    return c;
}

std::vector<Point> subspace_points(const Subspace& V) {
    if (!V.ctx) throw Error(ErrorCode::InvalidArgument, "subspace_points: null field");
    const FieldCtx& F = *V.ctx;
    const std::uint64_t q = F.q();
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < V.k; ++i) {
        if (n > max_grid_cells() / q)
            throw Error(ErrorCode::TooLarge, "subspace_points: q^k too large");
        n *= q;
    }
    // Base-p digit odometer over the coefficients: bumping digit m of
    // coefficient i adds t^m * row_i, and p such adds cancel in
    // characteristic p, so wraps need no correction. (Bumping a whole base-q
    // coefficient encoding would not be a field increment once n > 1.)
    const std::uint32_t pp = F.p();
    const std::uint32_t nn = F.n();
    std::vector<Point> scaled;
    scaled.reserve(std::size_t(V.k) * nn);
    for (std::uint32_t i = 0; i < V.k; ++i) {
        auto r = V.row(i);
        elem_t tm = 1;
        for (std::uint32_t m = 0; m < nn; ++m) {
            Point s(V.d);
            for (std::uint32_t j = 0; j < V.d; ++j) s[j] = F.mul(tm, r[j]);
            scaled.push_back(std::move(s));
            tm = elem_t(std::uint64_t(tm) * pp); // t^(m+1) encodes as p^(m+1)
        }
    }
    std::vector<Point> pts;
    pts.reserve(n);
    Point cur(V.d, 0);
    std::vector<std::uint32_t> digits(scaled.size(), 0);
    for (std::uint64_t idx = 0;; ++idx) {
        pts.push_back(cur);
        if (idx + 1 == n) break;
        std::uint32_t pos = 0;
        for (;;) {
            const Point& s = scaled[pos];
            for (std::uint32_t j = 0; j < V.d; ++j) cur[j] = F.add(cur[j], s[j]);
            if (++digits[pos] == pp) {
                digits[pos] = 0;
                ++pos;
            } else {
                break;
            }
        }
    }
    return pts;
}

} // namespace ffsalem
