#pragma once

#include <cstdint>
#include <utility>

#include "ffsalem/grid.hpp"

namespace ffsalem {

// Reference transform: fhat(xi) = sum_x chi(-xi.x) f(x), evaluated as the
// defining double loop. O(q^(2d)); the oracle everything else is tested against.
GridFunction dft_naive(const GridFunction& f);

// Axis-by-axis factorization of the same transform, O(d q^(d+1)).
// Agrees with dft_naive within 1e-9 * max(1, sum|f|) per entry.
GridFunction dft_fast(const GridFunction& f);

// Inverse transform: f(x) = q^-d sum_xi chi(xi.x) fhat(xi).
GridFunction idft_fast(const GridFunction& fhat);

// |sum_xi |fhat|^2 - q^d sum_x |f|^2| / (q^d sum_x |f|^2 + 1).
double plancherel_defect(const GridFunction& f);

// Max of |fhat| over nonzero frequencies; argmax is the smallest encoding
// achieving the max.
std::pair<double, std::uint64_t> sup_nonzero(const GridFunction& fhat);

// Marginal onto the first m coordinates: nu(x) = sum_y mu(x, y).
// Satisfies nu_hat(xi1) = mu_hat(xi1, 0).
Measure project(const Measure& mu, std::uint32_t m);

} // namespace ffsalem
