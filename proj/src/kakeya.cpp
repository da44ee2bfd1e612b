#include "ffsalem/kakeya.hpp"

#include <algorithm>
#include <random>

#include "ffsalem/errors.hpp"

namespace ffsalem {

PointSet::PointSet(FieldRef ctx, std::uint32_t d) : ctx_(std::move(ctx)), d_(d) {
    if (!ctx_) throw Error(ErrorCode::InvalidArgument, "PointSet: null field");
    if (d_ == 0) throw Error(ErrorCode::DimensionZero, "PointSet: d = 0");
    cells_ = grid_size(*ctx_, d_);
    bits_.assign((cells_ + 63) / 64, 0);
}

PointSet PointSet::full(FieldRef ctx, std::uint32_t d) {
    PointSet s(std::move(ctx), d);
    for (std::uint64_t i = 0; i < s.cells_; ++i) s.insert(i);
    return s;
}

void PointSet::insert(std::uint64_t idx) {
    if (idx >= cells_)
        throw Error(ErrorCode::InvalidArgument, "PointSet::insert: index out of range");
    std::uint64_t& w = bits_[idx >> 6];
    const std::uint64_t m = std::uint64_t(1) << (idx & 63);
    if (!(w & m)) {
        w |= m;
        ++card_;
    }
}

void PointSet::insert_point(std::span<const elem_t> pt) {
    if (pt.size() != d_)
        throw Error(ErrorCode::DimensionMismatch, "PointSet::insert_point: length != d");
    insert(encode_point(*ctx_, pt));
}

std::vector<std::uint64_t> PointSet::members() const {
    std::vector<std::uint64_t> out;
    out.reserve(card_);
    for (std::uint64_t i = 0; i < cells_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

AffinePlaneFamily AffinePlaneFamily::create(FieldRef ctx, std::uint32_t d, std::uint32_t k,
                                            std::vector<AffinePlane> planes) {
    if (!ctx) throw Error(ErrorCode::InvalidArgument, "family: null field");
    if (d == 0 || k < 1 || k >= d)
        throw Error(ErrorCode::BadDimensions, "family: need 1 <= k <= d-1");
    for (const AffinePlane& pl : planes) {
        if (pl.V.ctx.get() != ctx.get())
            throw Error(ErrorCode::ContextMismatch, "family: plane from another field");
        if (pl.V.d != d || pl.V.k != k)
            throw Error(ErrorCode::DimensionMismatch, "family: plane has wrong (d,k)");
        if (pl.shift.size() != d)
            throw Error(ErrorCode::DimensionMismatch, "family: shift length != d");
        for (elem_t v : pl.shift)
            if (v >= ctx->q())
                throw Error(ErrorCode::InvalidArgument, "family: shift entry out of range");
    }
    for (std::size_t i = 0; i < planes.size(); ++i)
        for (std::size_t j = i + 1; j < planes.size(); ++j)
            if (planes[i].V == planes[j].V)
                throw Error(ErrorCode::DuplicateSubspace,
                            "family: repeated direction subspace");
    AffinePlaneFamily f;
    f.ctx = std::move(ctx);
    f.d = d;
    f.k = k;
    f.planes = std::move(planes);
    return f;
}

PointSet expand(const AffinePlaneFamily& fam) {
    PointSet out(fam.ctx, fam.d);
    const FieldCtx& F = *fam.ctx;
    Point sum(fam.d);
    for (const AffinePlane& pl : fam.planes) {
        for (const Point& p : subspace_points(pl.V)) {
            for (std::uint32_t j = 0; j < fam.d; ++j)
                sum[j] = F.add(p[j], pl.shift[j]);
            out.insert_point(sum);
        }
    }
    return out;
}

DkWitness is_dk_set(const PointSet& E, const std::vector<Subspace>& gamma) {
    const FieldCtx& F = *E.field();
    const std::uint32_t d = E.dim();
    DkWitness w;
    w.shifts.reserve(gamma.size());
    const std::vector<std::uint64_t> mem = E.members();
    Point s(d);
    for (std::size_t gi = 0; gi < gamma.size(); ++gi) {
        const Subspace& V = gamma[gi];
        if (V.d != d)
            throw Error(ErrorCode::DimensionMismatch, "is_dk_set: subspace dim != d");
        if (V.ctx.get() != E.field().get())
            throw Error(ErrorCode::ContextMismatch, "is_dk_set: field mismatch");
        const std::vector<Point> pts = subspace_points(V);
        bool found = false;
        // A suitable shift can always be taken inside E itself (any point of
        // the translate works), so only members need scanning.
        for (std::uint64_t cand : mem) {
            const Point u = decode_point(F, d, cand);
            bool all = true;
            for (const Point& p : pts) {
                for (std::uint32_t j = 0; j < d; ++j) s[j] = F.add(u[j], p[j]);
                if (!E.test(encode_point(F, s))) {
                    all = false;
                    break;
                }
            }
            if (all) {
                w.shifts.push_back(cand);
                found = true;
                break;
            }
        }
        if (!found) {
            w.ok = false;
            w.missing = gi;
            w.shifts.clear();
            return w;
        }
    }
    w.ok = true;
    return w;
}

bool is_kakeya(const PointSet& E) {
    return is_dk_set(E, enumerate_grassmannian(E.dim(), 1, E.field())).ok;
}

AffinePlaneFamily construct_mt_kakeya_2d(const FieldRef& ctx) {
    if (!ctx) throw Error(ErrorCode::InvalidArgument, "mt_kakeya: null field");
    if (ctx->p() == 2)
        throw Error(ErrorCode::EvenCharacteristic, "mt_kakeya: needs odd characteristic");
    const FieldCtx& F = *ctx;
    const elem_t quarter = F.inv(F.from_int(4));
    std::vector<AffinePlane> planes;
    planes.reserve(F.q() + 1);
    for (std::uint64_t m = 0; m < F.q(); ++m) {
        AffinePlane pl;
        pl.V = Subspace::from_rows(ctx, 2, {1, elem_t(m)});
        pl.shift = {0, F.neg(F.mul(F.mul(elem_t(m), elem_t(m)), quarter))};
        planes.push_back(std::move(pl));
    }
    AffinePlane vert;
    vert.V = Subspace::from_rows(ctx, 2, {0, 1});
    vert.shift = {0, 0};
    planes.push_back(std::move(vert));
    return AffinePlaneFamily::create(ctx, 2, 1, std::move(planes));
}

PointSet product_with_full(const PointSet& K0, std::uint32_t d) {
    const std::uint32_t d0 = K0.dim();
    if (d <= d0)
        throw Error(ErrorCode::BadDimension, "product_with_full: need d > dim of factor");
    PointSet out(K0.field(), d);
    const std::uint64_t base = K0.cells();
    const std::uint64_t rest = out.cells() / base;
    for (std::uint64_t m : K0.members())
        for (std::uint64_t t = 0; t < rest; ++t)
            out.insert(m + t * base);
    return out;
}

std::vector<Subspace> random_gamma(std::uint32_t d, std::uint32_t k, const FieldRef& ctx,
                                   std::uint64_t m, std::uint64_t seed) {
    std::vector<Subspace> all = enumerate_grassmannian(d, k, ctx);
    if (m == 0) throw Error(ErrorCode::EmptyFamily, "random_gamma: m = 0");
    if (m > all.size())
        throw Error(ErrorCode::TooMany, "random_gamma: m exceeds |G(d,k)| = " +
                                            std::to_string(all.size()));
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t j = i + rng() % (all.size() - i);
        std::swap(all[i], all[j]);
    }
    all.resize(m);
    std::sort(all.begin(), all.end());
    return all;
}

InterceptSpec parse_intercepts(const std::string& text) {
    InterceptSpec s;
    if (text == "zero") {
        s.kind = InterceptKind::Zero;
    } else if (text == "mt") {
        s.kind = InterceptKind::Mt;
    } else if (text.rfind("random:", 0) == 0) {
        s.kind = InterceptKind::Random;
        const std::string tail = text.substr(7);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::ParseError, "intercepts: bad seed in '" + text + "'");
        s.seed = std::stoull(tail);
    } else {
        throw Error(ErrorCode::ParseError,
                    "intercepts: expected zero|random:<seed>|mt, got '" + text + "'");
    }
    return s;
}

AffinePlaneFamily attach_intercepts(FieldRef ctx, std::uint32_t d,
                                    std::vector<Subspace> gamma, const InterceptSpec& spec) {
    if (!ctx) throw Error(ErrorCode::InvalidArgument, "attach_intercepts: null field");
    const FieldCtx& F = *ctx;
    std::vector<AffinePlane> planes;
    planes.reserve(gamma.size());
    std::mt19937_64 rng(spec.seed);
    const std::uint64_t cells =
        spec.kind == InterceptKind::Random ? grid_size(F, d) : 0;
    elem_t quarter = 0;
    if (spec.kind == InterceptKind::Mt) {
        if (d != 2)
            throw Error(ErrorCode::BadDimension, "attach_intercepts: mt needs d = 2");
        if (F.p() == 2)
            throw Error(ErrorCode::EvenCharacteristic,
                        "attach_intercepts: mt needs odd characteristic");
        quarter = F.inv(F.from_int(4));
    }
    for (Subspace& V : gamma) {
        AffinePlane pl;
        Point shift(d, 0);
        switch (spec.kind) {
            case InterceptKind::Zero:
                break;
            case InterceptKind::Random:
                shift = decode_point(F, d, rng() % cells);
                break;
            case InterceptKind::Mt:
                if (V.k == 1 && V.pivots.size() == 1 && V.pivots[0] == 0) {
                    const elem_t m = V.row(0)[1];
                    shift[1] = F.neg(F.mul(F.mul(m, m), quarter));
                }
                break;
        }
        pl.V = std::move(V);
        pl.shift = std::move(shift);
        planes.push_back(std::move(pl));
    }
    const std::uint32_t k = planes.empty() ? 1 : planes.front().V.k;
    return AffinePlaneFamily::create(std::move(ctx), d, k, std::move(planes));
}

std::vector<Subspace> subspaces_in_hyperplane(std::uint32_t d, std::uint32_t k,
                                              const FieldRef& ctx,
                                              std::span<const elem_t> normal,
                                              std::uint64_t cap) {
    if (normal.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "subspaces_in_hyperplane: normal length != d");
    if (std::all_of(normal.begin(), normal.end(), [](elem_t x) { return x == 0; }))
        throw Error(ErrorCode::InvalidArgument, "subspaces_in_hyperplane: normal = 0");
    std::vector<Subspace> out;
    for (Subspace& V : enumerate_grassmannian(d, k, ctx, cap)) {
        bool inside = true;
        for (std::uint32_t i = 0; i < V.k && inside; ++i)
            inside = dot(*ctx, normal, V.row(i)) == 0;
        if (inside) out.push_back(std::move(V));
    }
    return out;
}

} // namespace ffsalem
