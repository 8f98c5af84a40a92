#pragma once

#include <array>
#include <functional>

#include "lgate/types.hpp"

namespace lgate::quad {

/// 7-point Gauss / 15-point Kronrod pair on [-1, 1]. Abscissae are listed
/// from the right end towards the centre; the Gauss nodes are the odd
/// entries of `kronrod_nodes`.
struct GaussKronrod15 {
    static constexpr std::array<double, 8> kronrod_nodes = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> kronrod_weights = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> gauss_weights = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    static constexpr int points = 15;

    /// Node k (0..14) on [-1, 1], ordered left to right.
    static double node(int k);
    static double kronrod_weight(int k);
    /// Zero for nodes that are not part of the 7-point Gauss rule.
    static double gauss_weight(int k);
};

struct PanelEstimate {
    Complex kronrod;
    Complex gauss;
};

/// Both rule estimates of int_a^b g(x) dx on a single panel.
PanelEstimate gk15(const std::function<Complex(double)>& g, double a, double b);

struct AdaptiveResult {
    Complex value;
    double error = 0.0;     // sum of |kronrod - gauss| over accepted panels
    bool converged = true;  // false when max_depth was reached somewhere
    int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod integration of a complex-valued g over
/// [a, b]: bisects the worst panel until the summed error estimate drops
/// below max(abs_tol, rel_tol |value|) or the panel budget is exhausted.
AdaptiveResult integrate(const std::function<Complex(double)>& g, double a, double b,
                         double abs_tol, double rel_tol = 0.0, int max_panels = 2000);

}  // namespace lgate::quad
