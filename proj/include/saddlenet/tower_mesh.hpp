#pragma once

#include <array>
#include <fstream>
#include <string>
#include <vector>

#include "saddlenet/quadrature.hpp"
#include "saddlenet/saddle_tower.hpp"

namespace saddlenet {

inline std::array<Complex, 3> weierstrass_phi(const TowerModel& t, Complex z) {
    std::array<Complex, 3> phi = {0.0, 0.0, 0.0};
    for (int j = 0; j < t.n; ++j) {
        Complex r = 1.0 / (z - t.punctures[j]);
        phi[0] += -std::cos(t.theta[j]) * r;
        phi[1] += -std::sin(t.theta[j]) * r;
        phi[2] += Complex(0, -static_cast<double>(t.sigma[j])) * r;
    }
    return phi;
}

/// Real parts of the contour integrals of Phi around the puncture circle
/// |w_h| = delta; for the wing cycle these must be (0, 0, 2 pi sigma_h).
inline std::array<double, 3> wing_period(const TowerModel& t, int h, double delta = 0.05) {
    Complex p = t.punctures[h];
    const Complex I(0, 1);
    std::array<Complex, 3> acc = {0.0, 0.0, 0.0};
    const int N = 1024;
    for (int k = 0; k < N; ++k) {
        Complex w = std::polar(delta, kTwoPi * k / N);
        Complex z = p * (w + I) / (I - w);
        Complex dzdw = p * 2.0 * I / ((I - w) * (I - w));
        Complex dw = I * w * (kTwoPi / N);
        auto phi = weierstrass_phi(t, z);
        for (int c = 0; c < 3; ++c) acc[c] += phi[c] * dzdw * dw;
    }
    return {acc[0].real(), acc[1].real(), acc[2].real()};
}

/// x1 + i x2 of the Weierstrass immersion (single-valued closed form,
/// base point z0 = 0 on the unit circle of punctures).
inline Complex height_horizontal(const TowerModel& t, Complex z) {
    Complex v = 0;
    for (int j = 0; j < t.n; ++j)
        v -= std::polar(1.0, t.theta[j]) *
             (std::log(std::abs(z - t.punctures[j])) - std::log(std::abs(t.punctures[j])));
    return v;
}

/// Increment of x3 along the straight segment from a to b (must not cross a
/// puncture); each term turns by less than pi on a short segment.
inline double height_vertical_step(const TowerModel& t, Complex a, Complex b) {
    double s = 0;
    for (int j = 0; j < t.n; ++j)
        s += t.sigma[j] * std::arg((b - t.punctures[j]) / (a - t.punctures[j]));
    return s;
}

struct MeshStats {
    int vertices = 0;
    int triangles = 0;
    double z_min = 0, z_max = 0;
    double max_wing_period_error = 0;  // |Re oint Phi - (0,0,2 pi sigma)|
};

/// Triangulated image of the sphere minus the puncture disks |w_h| < delta,
/// one vertical period.  Log-polar grid in z with per-cell height branches
/// (the multivalued x3 is cut along one radial slit above each puncture).
/// ASCII OBJ output: "v x y z" then 1-based "f i j k".
inline MeshStats export_mesh(const TowerModel& t, const std::string& path, int resolution = 48,
                             double delta_mesh = 0.05) {
    if (!t.analyzed) throw ValidationError("NotAnalyzed", "analyze the tower before meshing");
    MeshStats stats;
    for (int h = 0; h < t.n; ++h) {
        auto wp = wing_period(t, h, delta_mesh);
        double err = std::max({std::abs(wp[0]), std::abs(wp[1]),
                               std::abs(wp[2] - kTwoPi * t.sigma[h])});
        stats.max_wing_period_error = std::max(stats.max_wing_period_error, err);
    }
    if (stats.max_wing_period_error > 1e-8)
        throw NumericalError("PeriodMismatch", "wing periods are off before meshing");

    const int M = resolution;          // rings
    const int A = 2 * resolution;      // columns
    const double S = 3.0;              // |z| from e^-S to e^S
    auto zval = [&](int i, int j) {
        return std::polar(std::exp(-S + 2.0 * S * i / M), kTwoPi * j / A);
    };
    auto inside_cut = [&](Complex z) {
        for (int h = 0; h < t.n; ++h) {
            Complex w = Complex(0, 1) * (z - t.punctures[h]) / (z + t.punctures[h]);
            if (std::abs(w) < delta_mesh) return true;
        }
        return false;
    };

    // x3 continuation per column: center -> ring 0 -> outward
    std::vector<std::vector<double>> x3(M + 1, std::vector<double>(A));
    const Complex z_center = 0.0;
    for (int j = 0; j < A; ++j) {
        double v = height_vertical_step(t, z_center + 1e-12, zval(0, j));  // near-0 start
        x3[0][j] = v;
        for (int i = 1; i <= M; ++i) x3[i][j] = x3[i - 1][j] + height_vertical_step(t, zval(i - 1, j), zval(i, j));
    }

    std::vector<std::array<double, 3>> verts;
    std::vector<std::array<int, 3>> tris;
    auto emit_triangle = [&](Complex za, double ha, Complex zb, double hb, Complex zc, double hc) {
        Complex ha2 = height_horizontal(t, za), hb2 = height_horizontal(t, zb), hc2 = height_horizontal(t, zc);
        std::array<double, 3> A3 = {ha2.real(), ha2.imag(), ha};
        std::array<double, 3> B3 = {hb2.real(), hb2.imag(), hb};
        std::array<double, 3> C3 = {hc2.real(), hc2.imag(), hc};
        // orient along the Gauss map
        Complex zc3 = (za + zb + zc) / 3.0;
        auto phi = weierstrass_phi(t, zc3);
        Complex G = -(phi[0] + Complex(0, 1) * phi[1]) / phi[2];
        double g2 = std::norm(G);
        double N3[3] = {2 * G.real() / (1 + g2), 2 * G.imag() / (1 + g2), (g2 - 1) / (1 + g2)};
        double u[3] = {B3[0] - A3[0], B3[1] - A3[1], B3[2] - A3[2]};
        double v[3] = {C3[0] - A3[0], C3[1] - A3[1], C3[2] - A3[2]};
        double cr[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        bool flip = cr[0] * N3[0] + cr[1] * N3[1] + cr[2] * N3[2] < 0;
        int base = static_cast<int>(verts.size());
        verts.push_back(A3);
        if (flip) {
            verts.push_back(C3);
            verts.push_back(B3);
        } else {
            verts.push_back(B3);
            verts.push_back(C3);
        }
        tris.push_back({base, base + 1, base + 2});
        for (const auto& V : {A3, B3, C3}) {
            stats.z_min = std::min(stats.z_min, V[2]);
            stats.z_max = std::max(stats.z_max, V[2]);
        }
    };

    // annulus cells with per-cell height anchor
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < A; ++j) {
            int j1 = (j + 1) % A;
            Complex z00 = zval(i, j), z01 = zval(i, j1), z10 = zval(i + 1, j), z11 = zval(i + 1, j1);
            if (inside_cut(z00) || inside_cut(z01) || inside_cut(z10) || inside_cut(z11)) continue;
            double h00 = x3[i][j];
            double h01 = h00 + height_vertical_step(t, z00, z01);
            double h10 = h00 + height_vertical_step(t, z00, z10);
            double h11 = h01 + height_vertical_step(t, z01, z11);
            emit_triangle(z00, h00, z10, h10, z11, h11);
            emit_triangle(z00, h00, z11, h11, z01, h01);
        }
    }
    // center cap: fan from z ~ 0
    Complex z0c = 1e-9;
    double h0c = height_vertical_step(t, Complex(1e-12, 0), z0c);
    for (int j = 0; j < A; ++j) {
        int j1 = (j + 1) % A;
        Complex za = zval(0, j), zb = zval(0, j1);
        double ha = h0c + height_vertical_step(t, z0c, za);
        double hb = ha + height_vertical_step(t, za, zb);
        emit_triangle(z0c, h0c, za, ha, zb, hb);
    }
    // infinity cap: fan toward a far sample standing in for z = infinity
    for (int j = 0; j < A; ++j) {
        int j1 = (j + 1) % A;
        Complex za = zval(M, j), zb = zval(M, j1);
        Complex zfar = std::polar(std::exp(S) * 50.0, kTwoPi * (j + 0.5) / A);
        double ha = x3[M][j];
        double hb = ha + height_vertical_step(t, za, zb);
        double hfar = ha + height_vertical_step(t, za, zfar);
        emit_triangle(za, ha, zb, hb, zfar, hfar);
    }

    std::ofstream out(path);
    if (!out) throw ValidationError("FileWrite", "cannot open '" + path + "'");
    out.precision(9);
    for (const auto& v : verts) out << "v " << v[0] << " " << v[1] << " " << v[2] << "\n";
    for (const auto& f : tris) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    if (!out.good()) throw ValidationError("FileWrite", "write to '" + path + "' failed");
    stats.vertices = static_cast<int>(verts.size());
    stats.triangles = static_cast<int>(tris.size());
    return stats;
}

}  // namespace saddlenet
