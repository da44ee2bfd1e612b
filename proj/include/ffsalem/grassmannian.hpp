#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffsalem/field.hpp"

namespace ffsalem {

// A k-dimensional linear subspace of F_q^d, stored as its reduced row-echelon
// basis (row-major, k*d). RREF is canonical: two Subspace values are equal
// iff their matrices are identical.
struct Subspace {
    FieldRef ctx;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::vector<elem_t> rows;          // k * d
    std::vector<std::uint32_t> pivots; // ascending

    std::span<const elem_t> row(std::uint32_t i) const {
        return {rows.data() + std::size_t(i) * d, d};
    }

    // RREF-reduces arbitrary spanning rows; throws if they are dependent.
    static Subspace from_rows(FieldRef ctx, std::uint32_t d, std::vector<elem_t> rows);

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.d == b.d && a.k == b.k && a.rows == b.rows;
    }
    friend bool operator<(const Subspace& a, const Subspace& b) { return a.rows < b.rows; }

    bool contains(std::span<const elem_t> v) const;
};

struct RrefResult {
    std::vector<elem_t> rows;
    std::vector<std::uint32_t> pivots;
    std::uint32_t rank = 0;
};

// In-place Gaussian elimination to reduced row-echelon form.
RrefResult rref(const FieldCtx& F, std::uint32_t d, std::vector<elem_t> rows);

// Exact Gaussian binomial [d choose k]_q; throws on uint64 overflow.
std::uint64_t gaussian_binomial(std::uint32_t d, std::uint32_t k, std::uint64_t q);

// All k-dimensional subspaces of F_q^d in lexicographic RREF order,
// generated cell by cell over pivot patterns.
std::vector<Subspace> enumerate_grassmannian(std::uint32_t d, std::uint32_t k,
                                             const FieldRef& ctx,
                                             std::uint64_t cap = 1000000);

// Orthogonal complement under the standard dot product; dim d-k,
// perp(perp(V)) == V.
Subspace perp(const Subspace& V);

// |{V in gamma : xi in V^perp}| for nonzero xi.
std::uint64_t stabbing_count(const FieldCtx& F, std::span<const elem_t> xi,
                             const std::vector<Subspace>& gamma);

// Whether xi is orthogonal to every basis row of V.
bool in_perp(const FieldCtx& F, std::span<const elem_t> xi, const Subspace& V);

// The q^k points of V, as coordinate vectors, in coefficient-odometer order.
std::vector<Point> subspace_points(const Subspace& V);

} // namespace ffsalem
