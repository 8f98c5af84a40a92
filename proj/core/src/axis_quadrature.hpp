#pragma once

#include <span>
#include <vector>

#include "lgate/types.hpp"

namespace lgate::detail {

/// Panel breakpoints on [0, H]: geometric grading towards eta = 0 (where
/// F may have a branch point), then panels growing by half their left end
/// until they reach width_cap.
std::vector<double> axis_breakpoints(double H, double width_cap);

struct AxisSums {
    std::vector<Complex> kronrod;
    std::vector<Complex> gauss;
    std::size_t nodes = 0;
};

/// Gauss-Kronrod 7/15 sums of int_{-H}^{H} e^{i eta t} F(i eta) d eta for
/// every t, with each panel split into 2^level equal pieces. F is sampled
/// once per node; nodes are streamed in fixed-size blocks and accumulated
/// in index order, so a given t grid always reproduces the same bits.
/// Throws DomainError when F is not finite at a node.
AxisSums axis_fourier_sums(const TransformFunction& F, double H, double width_cap, int level,
                           std::span<const double> t);

}  // namespace lgate::detail
