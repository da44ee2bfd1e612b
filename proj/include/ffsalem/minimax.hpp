#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "ffsalem/grid.hpp"
#include "ffsalem/kakeya.hpp"

namespace ffsalem {

struct MinimaxOptions {
    std::size_t max_iters = 50000;
    double tol = 1e-3;
    // 0: uniform cold start. Nonzero: random simplex start drawn from the seed.
    std::uint64_t seed = 0;
    double eta0 = 1.0;
    // Starting measure; must be supported inside E. Overrides seed.
    const Measure* warm_start = nullptr;
    // Called once per iteration with the current support weights, before the
    // subgradient step. For instrumentation and property tests.
    std::function<void(std::size_t iter, std::span<const double> w, double objective)> on_iterate;
};

struct MinimaxResult {
    Measure measure;            // best iterate
    double value = 0;           // its sup_{xi != 0} |mu_hat|
    double certified_lower = 0; // forced sup for |E| support points
    std::size_t iterations = 0;
    double gap = 0;             // value - certified_lower
    double kappa_effective = 0; // value * q
    bool converged = false;     // gap <= tol
};

// Minimizes sup_{xi != 0} |mu_hat(xi)| over probability measures supported in
// E by projected subgradient descent on the simplex, tracking the best
// iterate. A gap above tol at max_iters is reported, not thrown.
MinimaxResult minimax_measure(const PointSet& E, const MinimaxOptions& opts = {});

struct SharpnessReport {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint64_t q = 0;
    std::uint32_t d = 0;
    std::uint64_t k0_size = 0;
    std::uint64_t k_size = 0;
    double c = 0;            // |K0| / q^2
    double lower_bound = 0;  // sqrt((1-c)/c) / q
    double upper_bound = 0;  // 1 / q
    double incidence_sup = 0;
    double v_star = 0;
    double kappa_effective = 0;
    double gap = 0;
    double projection_defect = 0;
    std::size_t iterations = 0;
    bool converged = false;
    bool in_window = false;
};

// For a planar Kakeya set K0 of density c: builds K = K0 x F_q^(d-2),
// optimizes over measures on K, and checks v* against the window
// [sqrt((1-c)/c)/q, 1/q]. The planar marginal of the optimizer's output is
// verified against the restriction of its transform to (xi1, 0).
SharpnessReport sharpness_report(const PointSet& K0, std::uint32_t d,
                                 const MinimaxOptions& opts = {},
                                 double window_slack = 1e-3);

} // namespace ffsalem
