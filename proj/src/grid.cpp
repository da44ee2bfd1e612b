#include "ffsalem/grid.hpp"

#include <cmath>

namespace ffsalem {

GridFunction::GridFunction(FieldRef c, std::uint32_t dim) : ctx(std::move(c)), d(dim) {
    if (d == 0) throw Error(ErrorCode::DimensionZero, "grid dimension must be positive");
    values.assign(grid_size(*ctx, d), cplx(0.0, 0.0));
}

Measure Measure::from_grid(GridFunction g) {
    double sum = 0.0;
    for (const cplx& v : g.values) {
        if (v.imag() != 0.0 || v.real() < 0.0)
            throw Error(ErrorCode::InvalidArgument, "measure values must be nonnegative reals");
        sum += v.real();
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw Error(ErrorCode::InvalidArgument, "measure does not sum to 1");
    Measure m;
    m.grid = std::move(g);
    return m;
}

Measure Measure::from_counts(FieldRef ctx, std::uint32_t d, std::vector<std::uint64_t> counts,
                             std::uint64_t total) {
    if (total == 0) throw Error(ErrorCode::InvalidArgument, "zero total count");
    std::uint64_t check = 0;
    for (std::uint64_t c : counts) check += c;
    if (check != total) throw Error(ErrorCode::InvalidArgument, "counts do not sum to total");
    GridFunction g(std::move(ctx), d);
    if (counts.size() != g.size())
        throw Error(ErrorCode::DimensionMismatch, "count vector length != q^d");
    for (std::uint64_t i = 0; i < g.size(); ++i)
        g.values[i] = cplx(double(counts[i]) / double(total), 0.0);
    Measure m;
    m.grid = std::move(g);
    m.exact = ExactWeights{std::move(counts), total};
    return m;
}

std::uint64_t Measure::support_size() const {
    if (exact) {
        std::uint64_t s = 0;
        for (std::uint64_t c : exact->num) s += (c > 0) ? 1 : 0;
        return s;
    }
    std::uint64_t s = 0;
    for (const cplx& v : grid.values) s += (v.real() > 0.0) ? 1 : 0;
    return s;
}

Measure Measure::point_mass(FieldRef ctx, std::uint32_t d, std::uint64_t at) {
    GridFunction g(std::move(ctx), d);
    if (at >= g.size()) throw Error(ErrorCode::InvalidArgument, "point index out of range");
    std::vector<std::uint64_t> counts(g.size(), 0);
    counts[at] = 1;
    return from_counts(g.ctx, d, std::move(counts), 1);
}

Measure Measure::uniform(FieldRef ctx, std::uint32_t d) {
    GridFunction g(std::move(ctx), d);
    std::vector<std::uint64_t> counts(g.size(), 1);
    std::uint64_t total = g.size();
    return from_counts(g.ctx, d, std::move(counts), total);
}

} // namespace ffsalem
