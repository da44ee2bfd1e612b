#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ffsalem/field.hpp"

namespace ffsalem {

using cplx = std::complex<double>;

// A complex-valued function on F_q^d, stored densely and indexed by the
// canonical base-q point encoding.
struct GridFunction {
    FieldRef ctx;
    std::uint32_t d = 0;
    std::vector<cplx> values;

    GridFunction() = default;
    GridFunction(FieldRef c, std::uint32_t dim);

    std::uint64_t size() const { return values.size(); }
    cplx& operator[](std::uint64_t i) { return values[i]; }
    const cplx& operator[](std::uint64_t i) const { return values[i]; }
};

// Exact weights num[i]/den attached to a measure built from integer counts.
struct ExactWeights {
    std::vector<std::uint64_t> num;
    std::uint64_t den = 1;
};

// A probability measure: nonnegative real values summing to 1 (within 1e-12
// on the float path; exactly when exact weights are present).
struct Measure {
    GridFunction grid;
    std::optional<ExactWeights> exact;

    static constexpr double kSumTolerance = 1e-12;

    // Validates nonnegativity and total mass.
    static Measure from_grid(GridFunction g);
    static Measure from_counts(FieldRef ctx, std::uint32_t d, std::vector<std::uint64_t> counts,
                               std::uint64_t total);

    std::uint64_t size() const { return grid.size(); }
    double weight(std::uint64_t i) const { return grid.values[i].real(); }
    std::uint64_t support_size() const;

    // Point mass at one encoding; uniform over a support bitmask-less index list.
    static Measure point_mass(FieldRef ctx, std::uint32_t d, std::uint64_t at);
    static Measure uniform(FieldRef ctx, std::uint32_t d);
};

} // namespace ffsalem
