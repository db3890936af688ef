#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "saddlenet/types.hpp"

namespace saddlenet {

/// Adaptive composite 15-point Gauss-Legendre quadrature for complex-valued
/// integrands of a real parameter.  Interval-halving until the two-panel
/// refinement agrees with the parent panel to the requested tolerance.
namespace quad {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric)
inline constexpr std::array<double, 8> kNodes = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
};
inline constexpr std::array<double, 8> kWeights = {
    0.2025782419255609,
    0.1984314853271112,
    0.1861610000155619,
    0.1662692058169938,
    0.1395706779261539,
    0.1071592204671718,
    0.0703660474881081,
    0.0307532419961186,
};

template <class F>
Complex panel(F&& f, double a, double b) {
    const double c = (a + b) / 2, hw = (b - a) / 2;
    Complex s = kWeights[0] * f(c);
    for (int i = 1; i < 8; ++i)
        s += kWeights[i] * (f(c + hw * kNodes[i]) + f(c - hw * kNodes[i]));
    return hw * s;
}

struct Budget {
    int panels = 0;
    int limit = 200000;
};

template <class F>
Complex adaptive_impl(F&& f, double a, double b, Complex whole, double tol, int depth, Budget& budget) {
    const double c = (a + b) / 2;
    Complex left = panel(f, a, c), right = panel(f, c, b);
    budget.panels += 2;
    if (budget.panels > budget.limit)
        throw NumericalError("QuadratureStalled", "panel budget exhausted");
    double err = std::abs(left + right - whole);
    // the rounding floor keeps unreachable tolerances from exploding the tree
    double floor = 64.0 * 1e-16 * (std::abs(left) + std::abs(right) + 1e-30);
    if (depth > 44 || err < std::max(tol, floor)) return left + right;
    return adaptive_impl(f, a, c, left, tol / 2, depth + 1, budget) +
           adaptive_impl(f, c, b, right, tol / 2, depth + 1, budget);
}

}  // namespace quad

/// Integral of f over [a, b] to absolute tolerance tol (with a relative
/// rounding floor per panel).
template <class F>
Complex integrate(F&& f, double a, double b, double tol = 1e-10) {
    quad::Budget budget;
    return quad::adaptive_impl(f, a, b, quad::panel(f, a, b), tol, 0, budget);
}

/// Contour integral over the full circle center c radius r of a holomorphic
/// integrand: the periodic trapezoid rule (exponentially accurate).
template <class F>
Complex integrate_circle(F&& f, Complex center, double r, int nodes = 512) {
    Complex s = 0;
    for (int k = 0; k < nodes; ++k) {
        double t = kTwoPi * k / nodes;
        Complex z = center + std::polar(r, t);
        Complex dz = Complex(0, 1) * std::polar(r, t);
        s += f(z) * dz;
    }
    return s * (kTwoPi / nodes);
}

}  // namespace saddlenet
