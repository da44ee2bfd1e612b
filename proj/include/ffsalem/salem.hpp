#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "ffsalem/grid.hpp"
#include "ffsalem/kakeya.hpp"
#include "ffsalem/rational.hpp"

namespace ffsalem {

// Incidence counts phi(z) = #{planes containing z}; total is |Gamma| * q^k.
struct IncidenceFunction {
    FieldRef ctx;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
};

IncidenceFunction incidence_counts(const AffinePlaneFamily& fam);

// mu(z) = phi(z) / (|Gamma| q^k), with exact weights attached.
Measure incidence_measure(const AffinePlaneFamily& fam);

// mu_hat(xi) = |Gamma|^-1 sum over {V : xi in V_perp} of chi(-xi . u_V),
// for nonzero xi.
cplx incidence_ft_closed_form(const AffinePlaneFamily& fam, std::span<const elem_t> xi);

// sup over nonzero xi of |mu_hat(xi)| in exact rational arithmetic, when every
// frequency is certifiable: the stabbing set at xi is empty, a single plane
// (modulus 1/|Gamma| whatever its character argument), or all-real
// (every character trivial, modulus count/|Gamma|). Returns nullopt when some
// xi mixes nontrivial characters.
std::optional<Rational> incidence_sup_exact(const AffinePlaneFamily& fam);

// Transform bounds for an incidence measure over gamma_size directions:
// tight = |G(d-1,k)| / |Gamma|, weak = q^-k |G(d,k)| / |Gamma|.
std::pair<Rational, Rational> salem_bound_dk(std::uint32_t d, std::uint32_t k,
                                             std::uint64_t gamma_size, const FieldCtx& F);

// sqrt((q^d/|E| - 1)/(q^d - 1)): no measure supported on |E| points beats this.
double min_sup_lower_bound(std::uint64_t support, const FieldCtx& F, std::uint32_t d);

// q^d / (C^2 q^-beta (q^d - 1) + 1): support size forced by a transform bound
// of C q^(-beta/2).
double size_estimate(double C, double beta, const FieldCtx& F, std::uint32_t d);

// sup * sqrt(support): the least c making mu a Salem witness.
double salem_constant(const Measure& mu);

// sup_{xi != 0} |mu_hat| <= c_const / sqrt(|support|)?
bool is_salem_witness(const Measure& mu, double c_const);

struct BoundReport {
    std::uint64_t q = 0;
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::uint64_t gamma_size = 0;
    std::uint64_t support_size = 0;
    double sup_value = 0;
    std::uint64_t sup_argmax = 0;
    double tight_bound = 0;
    double weak_bound = 0;
    double lowerb1 = 0;      // forced sup for this support size
    double sizeest = 0;      // support size forced by the measured sup
    double salem_constant = 0;
    bool pass = false;
    // Set when the sup was certified in rational arithmetic.
    std::optional<Rational> sup_exact;
};

inline constexpr double kBoundSlack = 1e-8;

// Measures mu against an externally supplied bound; k and gamma_size are not
// knowable from a bare measure and stay 0.
BoundReport verify_salem_bound(const Measure& mu, double bound);

// Full report for an incidence measure: sup from the closed form (exact
// rational path when certifiable), bounds from salem_bound_dk, pass keyed on
// the tight bound.
BoundReport analyze_family(const AffinePlaneFamily& fam);

} // namespace ffsalem
