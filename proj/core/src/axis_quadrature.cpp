#include "axis_quadrature.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>
#include <string>

#include "lgate/quadrature.hpp"

namespace lgate::detail {
namespace {

constexpr int grading_levels = 40;
constexpr std::size_t block_size = 512;
constexpr std::size_t reseed_every = 128;

bool is_uniform(std::span<const double> t) {
    if (t.size() < 3) return t.size() == 2;
    const double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(step > 0.0)) return false;
    const double slack = 1e-9 * step;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (std::abs((t[k] - t[k - 1]) - step) > slack) return false;
    }
    return true;
}

// Nodes are stored for eta > 0 only; the mirrored node -eta is folded in via
// e^{+-i eta t} = cos(eta t) +- i sin(eta t), so with
//   A = w (F(i eta) + F(-i eta)),  B = w (F(i eta) - F(-i eta))
// the pair contributes cos(eta t) A + i sin(eta t) B.
struct Block {
    std::array<double, block_size> eta{}, a_re{}, a_im{}, b_re{}, b_im{};
    std::array<double, block_size> c{}, s{}, step_c{}, step_s{};
    // Gauss-weighted copies exist for every node; zero weight off the Gauss nodes
    std::array<double, block_size> ga_re{}, ga_im{}, gb_re{}, gb_im{};
    std::size_t size = 0;
};

void accumulate(Block& b, std::span<const double> t, bool uniform, AxisSums& sums) {
    const std::size_t m = b.size;
    const std::size_t nt = t.size();
    if (uniform) {
        const double dt = t[1] - t[0];
        for (std::size_t j = 0; j < m; ++j) {
            b.step_c[j] = std::cos(b.eta[j] * dt);
            b.step_s[j] = std::sin(b.eta[j] * dt);
        }
    }
    for (std::size_t k = 0; k < nt; ++k) {
        if (!uniform || k % reseed_every == 0) {
            for (std::size_t j = 0; j < m; ++j) {
                const double phase = b.eta[j] * t[k];
                b.c[j] = std::cos(phase);
                b.s[j] = std::sin(phase);
            }
        } else {
            for (std::size_t j = 0; j < m; ++j) {
                const double c = b.c[j] * b.step_c[j] - b.s[j] * b.step_s[j];
                const double s = b.c[j] * b.step_s[j] + b.s[j] * b.step_c[j];
                b.c[j] = c;
                b.s[j] = s;
            }
        }
        // interleaved partial sums; fixed order keeps results reproducible
        constexpr std::size_t lanes = 4;
        double kr[lanes] = {}, ki[lanes] = {}, gr[lanes] = {}, gi[lanes] = {};
        std::size_t j = 0;
        for (; j + lanes <= m; j += lanes) {
            for (std::size_t l = 0; l < lanes; ++l) {
                const std::size_t i = j + l;
                kr[l] += b.c[i] * b.a_re[i] - b.s[i] * b.b_im[i];
                ki[l] += b.c[i] * b.a_im[i] + b.s[i] * b.b_re[i];
                gr[l] += b.c[i] * b.ga_re[i] - b.s[i] * b.gb_im[i];
                gi[l] += b.c[i] * b.ga_im[i] + b.s[i] * b.gb_re[i];
            }
        }
        for (; j < m; ++j) {
            kr[0] += b.c[j] * b.a_re[j] - b.s[j] * b.b_im[j];
            ki[0] += b.c[j] * b.a_im[j] + b.s[j] * b.b_re[j];
            gr[0] += b.c[j] * b.ga_re[j] - b.s[j] * b.gb_im[j];
            gi[0] += b.c[j] * b.ga_im[j] + b.s[j] * b.gb_re[j];
        }
        sums.kronrod[k] += Complex{(kr[0] + kr[1]) + (kr[2] + kr[3]), (ki[0] + ki[1]) + (ki[2] + ki[3])};
        sums.gauss[k] += Complex{(gr[0] + gr[1]) + (gr[2] + gr[3]), (gi[0] + gi[1]) + (gi[2] + gi[3])};
    }
    b.size = 0;
}

}  // namespace

std::vector<double> axis_breakpoints(double H, double width_cap) {
    std::vector<double> bp{0.0};
    const double start = std::min({1.0, H, width_cap});
    for (int k = grading_levels; k >= 1; --k) bp.push_back(std::ldexp(start, -k));
    bp.push_back(start);
    double x = start;
    while (x < H) {
        const double w = std::min(width_cap, 0.5 * x);
        double next = x + w;
        if (next >= H || H - next < 0.25 * w) next = H;
        bp.push_back(next);
        x = next;
    }
    return bp;
}

AxisSums axis_fourier_sums(const TransformFunction& F, double H, double width_cap, int level,
                           std::span<const double> t) {
    using Rule = quad::GaussKronrod15;
    AxisSums sums{std::vector<Complex>(t.size()), std::vector<Complex>(t.size()), 0};
    if (t.empty()) return sums;
    const bool uniform = is_uniform(t);

    const auto right = axis_breakpoints(H, width_cap);
    const int pieces = 1 << level;
    auto block = std::make_unique<Block>();
    auto sample = [&F](double eta) {
        const Complex value = F(Complex{0.0, eta});
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw DomainError("transform is not finite on the imaginary axis at eta = " +
                              std::to_string(eta));
        }
        return value;
    };

    for (std::size_t i = 0; i + 1 < right.size(); ++i) {
        const double sub = (right[i + 1] - right[i]) / pieces;
        for (int piece = 0; piece < pieces; ++piece) {
            const double half = 0.5 * sub;
            const double centre = right[i] + sub * piece + half;
            for (int k = 0; k < Rule::points; ++k) {
                const double eta = centre + half * Rule::node(k);
                const Complex up = sample(eta);
                const Complex down = sample(-eta);
                const Complex plus = up + down, minus = up - down;
                const double wk = half * Rule::kronrod_weight(k);
                const double wg = half * Rule::gauss_weight(k);
                const std::size_t j = block->size++;
                block->eta[j] = eta;
                block->a_re[j] = wk * plus.real();
                block->a_im[j] = wk * plus.imag();
                block->b_re[j] = wk * minus.real();
                block->b_im[j] = wk * minus.imag();
                block->ga_re[j] = wg * plus.real();
                block->ga_im[j] = wg * plus.imag();
                block->gb_re[j] = wg * minus.real();
                block->gb_im[j] = wg * minus.imag();
                sums.nodes += 2;
                if (block->size == block_size) accumulate(*block, t, uniform, sums);
            }
        }
    }
    if (block->size > 0) accumulate(*block, t, uniform, sums);
    return sums;
}

}  // namespace lgate::detail
