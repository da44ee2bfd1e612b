#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ffsalem/field.hpp"
#include "ffsalem/grassmannian.hpp"

namespace ffsalem {

// Subset of the grid F_q^d, stored as a bitset over point encodings.
class PointSet {
  public:
    PointSet(FieldRef ctx, std::uint32_t d);

    static PointSet full(FieldRef ctx, std::uint32_t d);

    const FieldRef& field() const { return ctx_; }
    std::uint32_t dim() const { return d_; }
    std::uint64_t cells() const { return cells_; }
    std::uint64_t cardinality() const { return card_; }

    bool test(std::uint64_t idx) const {
        return (bits_[idx >> 6] >> (idx & 63)) & 1;
    }
    void insert(std::uint64_t idx);
    void insert_point(std::span<const elem_t> pt);

    // Encoded indices of all members, ascending.
    std::vector<std::uint64_t> members() const;

  private:
    FieldRef ctx_;
    std::uint32_t d_;
    std::uint64_t cells_;
    std::uint64_t card_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Affine k-plane u + V.
struct AffinePlane {
    Subspace V;
    Point shift; // length d
};

// Finite family of affine k-planes over one field, with pairwise distinct
// direction subspaces.
struct AffinePlaneFamily {
    FieldRef ctx;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::vector<AffinePlane> planes;

    static AffinePlaneFamily create(FieldRef ctx, std::uint32_t d, std::uint32_t k,
                                    std::vector<AffinePlane> planes);
    std::size_t size() const { return planes.size(); }
};

// Union of the planes as a point set.
PointSet expand(const AffinePlaneFamily& fam);

struct DkWitness {
    bool ok = false;
    // For each V in gamma (same order) the encoded shift u with u+V inside the
    // set; meaningful only when ok.
    std::vector<std::uint64_t> shifts;
    // Index into gamma of the first direction with no translate inside the
    // set; meaningful only when !ok.
    std::size_t missing = 0;
};

// Does E contain a translate of every V in gamma? Witness shifts are the
// smallest (by encoding) members of E that work.
DkWitness is_dk_set(const PointSet& E, const std::vector<Subspace>& gamma);

// Kakeya = (d,1,G(d,1))-set.
bool is_kakeya(const PointSet& E);

// Planar Kakeya set of size q(q+1)/2 + (q-1)/2 for odd q: the line of slope m
// gets intercept -m^2/4, plus the vertical line x0 = 0.
AffinePlaneFamily construct_mt_kakeya_2d(const FieldRef& ctx);

// K0 x F_q^(d-2) inside F_q^d, for K0 in the plane.
PointSet product_with_full(const PointSet& K0, std::uint32_t d);

// m distinct subspaces drawn uniformly from G(d,k) without replacement,
// deterministically from the seed, returned sorted.
std::vector<Subspace> random_gamma(std::uint32_t d, std::uint32_t k, const FieldRef& ctx,
                                   std::uint64_t m, std::uint64_t seed);

enum class InterceptKind { Zero, Random, Mt };

struct InterceptSpec {
    InterceptKind kind = InterceptKind::Zero;
    std::uint64_t seed = 0;
};

// "zero", "random:<seed>" or "mt".
InterceptSpec parse_intercepts(const std::string& text);

// Attaches shifts to a direction family. Random shifts are uniform over the
// grid, drawn in family order from the seed. Mt requires d = 2, k = 1 and odd
// characteristic and gives the slope-m line the parabola intercept; lines
// without the (0,1) pivot pattern get shift 0.
AffinePlaneFamily attach_intercepts(FieldRef ctx, std::uint32_t d,
                                    std::vector<Subspace> gamma, const InterceptSpec& spec);

// The k-dim subspaces lying inside the hyperplane normal^perp.
std::vector<Subspace> subspaces_in_hyperplane(std::uint32_t d, std::uint32_t k,
                                              const FieldRef& ctx,
                                              std::span<const elem_t> normal,
                                              std::uint64_t cap = 1000000);

} // namespace ffsalem
