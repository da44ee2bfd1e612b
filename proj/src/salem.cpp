#include "ffsalem/salem.hpp"

#include <algorithm>
#include <cmath>

#include "ffsalem/errors.hpp"
#include "ffsalem/fourier.hpp"
#include "ffsalem/grassmannian.hpp"

namespace ffsalem {

namespace {

std::uint64_t pow_u64_checked(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (b != 0 && r > UINT64_MAX / b)
            throw Error(ErrorCode::Overflow, "q^k exceeds 64 bits");
        r *= b;
    }
    return r;
}

} // namespace

IncidenceFunction incidence_counts(const AffinePlaneFamily& fam) {
    if (fam.planes.empty())
        throw Error(ErrorCode::EmptyFamily, "incidence_counts: no planes");
    const FieldCtx& F = *fam.ctx;
    IncidenceFunction phi;
    phi.ctx = fam.ctx;
    phi.d = fam.d;
    phi.k = fam.k;
    phi.counts.assign(grid_size(F, fam.d), 0);
    Point sum(fam.d);
    for (const AffinePlane& pl : fam.planes) {
        for (const Point& p : subspace_points(pl.V)) {
            for (std::uint32_t j = 0; j < fam.d; ++j)
                sum[j] = F.add(p[j], pl.shift[j]);
            ++phi.counts[encode_point(F, sum)];
        }
    }
    const std::uint64_t qk = pow_u64_checked(F.q(), fam.k);
    phi.total = fam.planes.size() * qk;
    return phi;
}

Measure incidence_measure(const AffinePlaneFamily& fam) {
    IncidenceFunction phi = incidence_counts(fam);
    return Measure::from_counts(fam.ctx, fam.d, std::move(phi.counts), phi.total);
}

cplx incidence_ft_closed_form(const AffinePlaneFamily& fam, std::span<const elem_t> xi) {
    if (fam.planes.empty())
        throw Error(ErrorCode::EmptyFamily, "closed form: no planes");
    if (xi.size() != fam.d)
        throw Error(ErrorCode::DimensionMismatch, "closed form: xi length != d");
    if (std::all_of(xi.begin(), xi.end(), [](elem_t x) { return x == 0; }))
        throw Error(ErrorCode::ZeroFrequency, "closed form: xi = 0");
    const FieldCtx& F = *fam.ctx;
    cplx acc = 0;
    for (const AffinePlane& pl : fam.planes) {
        if (!in_perp(F, xi, pl.V)) continue;
        acc += F.char_value(F.neg(dot(F, xi, pl.shift)));
    }
    return acc / double(fam.planes.size());
}

std::optional<Rational> incidence_sup_exact(const AffinePlaneFamily& fam) {
    if (fam.planes.empty())
        throw Error(ErrorCode::EmptyFamily, "sup exact: no planes");
    const FieldCtx& F = *fam.ctx;
    const std::uint64_t cells = grid_size(F, fam.d);
    const std::int64_t m = std::int64_t(fam.planes.size());
    Rational best(0);
    for (std::uint64_t idx = 1; idx < cells; ++idx) {
        const Point xi = decode_point(F, fam.d, idx);
        std::uint64_t stab = 0;
        bool all_trivial = true;
        for (const AffinePlane& pl : fam.planes) {
            if (!in_perp(F, xi, pl.V)) continue;
            ++stab;
            if (F.trace(dot(F, xi, pl.shift)) != 0) all_trivial = false;
        }
        Rational here(0);
        if (stab == 0) {
            continue;
        } else if (all_trivial) {
            here = Rational(std::int64_t(stab), m);
        } else if (stab == 1) {
            here = Rational(1, m); // one unit character, modulus known exactly
        } else {
            return std::nullopt;
        }
        if (best < here) best = here;
    }
    return best;
}

std::pair<Rational, Rational> salem_bound_dk(std::uint32_t d, std::uint32_t k,
                                             std::uint64_t gamma_size, const FieldCtx& F) {
    if (gamma_size == 0)
        throw Error(ErrorCode::EmptyFamily, "salem_bound_dk: |Gamma| = 0");
    if (d == 0 || k < 1 || k >= d)
        throw Error(ErrorCode::BadDimensions, "salem_bound_dk: need 1 <= k <= d-1");
    const std::uint64_t stab = gaussian_binomial(d - 1, k, F.q());
    const std::uint64_t full = gaussian_binomial(d, k, F.q());
    const std::uint64_t qk = pow_u64_checked(F.q(), k);
    const Rational tight{std::int64_t(stab), std::int64_t(gamma_size)};
    const Rational weak =
        Rational(std::int64_t(full), std::int64_t(gamma_size)) / Rational(std::int64_t(qk));
    return {tight, weak};
}

double min_sup_lower_bound(std::uint64_t support, const FieldCtx& F, std::uint32_t d) {
    if (support == 0) throw Error(ErrorCode::EmptySet, "min_sup_lower_bound: |E| = 0");
    const std::uint64_t cells = grid_size(F, d);
    if (support > cells)
        throw Error(ErrorCode::InvalidArgument, "min_sup_lower_bound: |E| > q^d");
    if (support == cells) return 0.0;
    const double N = double(cells);
    return std::sqrt((N / double(support) - 1.0) / (N - 1.0));
}

double size_estimate(double C, double beta, const FieldCtx& F, std::uint32_t d) {
    const double N = double(grid_size(F, d));
    return N / (C * C * std::pow(double(F.q()), -beta) * (N - 1.0) + 1.0);
}

double salem_constant(const Measure& mu) {
    const auto [sup, arg] = sup_nonzero(dft_fast(mu.grid));
    (void)arg;
    return sup * std::sqrt(double(mu.support_size()));
}

bool is_salem_witness(const Measure& mu, double c_const) {
    if (c_const <= 0)
        throw Error(ErrorCode::InvalidArgument, "is_salem_witness: c_const <= 0");
    const auto [sup, arg] = sup_nonzero(dft_fast(mu.grid));
    (void)arg;
    return sup <= c_const / std::sqrt(double(mu.support_size())) + 1e-12;
}

namespace {

void fill_common(BoundReport& r, const FieldCtx& F, std::uint32_t d,
                 std::uint64_t support, double sup) {
    r.q = F.q();
    r.p = F.p();
    r.n = F.n();
    r.d = d;
    r.support_size = support;
    r.sup_value = sup;
    r.lowerb1 = min_sup_lower_bound(support, F, d);
    const double N = double(grid_size(F, d));
    r.sizeest = N / (sup * sup * (N - 1.0) + 1.0);
    r.salem_constant = sup * std::sqrt(double(support));
}

} // namespace

BoundReport verify_salem_bound(const Measure& mu, double bound) {
    BoundReport r;
    const auto [sup, arg] = sup_nonzero(dft_fast(mu.grid));
    fill_common(r, *mu.grid.ctx, mu.grid.d, mu.support_size(), sup);
    r.sup_argmax = arg;
    r.tight_bound = bound;
    r.weak_bound = bound;
    r.pass = sup <= bound + kBoundSlack;
    return r;
}

BoundReport analyze_family(const AffinePlaneFamily& fam) {
    const Measure mu = incidence_measure(fam);
    const FieldCtx& F = *fam.ctx;

    const std::uint64_t cells = grid_size(F, fam.d);
    double sup = 0;
    std::uint64_t arg = 0;
    for (std::uint64_t idx = 1; idx < cells; ++idx) {
        const Point xi = decode_point(F, fam.d, idx);
        const double v = std::abs(incidence_ft_closed_form(fam, xi));
        if (v > sup) {
            sup = v;
            arg = idx;
        }
    }
    std::optional<Rational> exact = incidence_sup_exact(fam);
    if (exact) sup = exact->to_double();

    BoundReport r;
    fill_common(r, F, fam.d, mu.support_size(), sup);
    r.k = fam.k;
    r.gamma_size = fam.planes.size();
    r.sup_argmax = arg;
    auto [tight, weak] = salem_bound_dk(fam.d, fam.k, fam.planes.size(), F);
    r.tight_bound = tight.to_double();
    r.weak_bound = weak.to_double();
    r.sup_exact = exact;
    r.pass = sup <= r.tight_bound + kBoundSlack;
    return r;
}

} // namespace ffsalem
