#pragma once

#include <vector>

#include "saddlenet/quadrature.hpp"
#include "saddlenet/types.hpp"

namespace saddlenet {

/// Polynomial in two variables: sum c[i][j] z^i t^j.
struct Poly2 {
    std::vector<std::vector<Complex>> c;  // c[i][j], i = z power, j = t power

    static Poly2 zero() { return {}; }
    int zdeg() const { return static_cast<int>(c.size()) - 1; }

    Complex coeff(int i, int j) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return 0.0;
        if (j < 0 || j >= static_cast<int>(c[i].size())) return 0.0;
        return c[i][j];
    }
    void set(int i, int j, Complex v) {
        if (i >= static_cast<int>(c.size())) c.resize(i + 1);
        if (j >= static_cast<int>(c[i].size())) c[i].resize(j + 1, 0.0);
        c[i][j] = v;
    }
    Complex eval(Complex z, Complex t) const {
        Complex s = 0, zp = 1;
        for (const auto& row : c) {
            Complex r = 0, tp = 1;
            for (Complex a : row) {
                r += a * tp;
                tp *= t;
            }
            s += r * zp;
            zp *= z;
        }
        return s;
    }
    /// Univariate slice at t = 0 (coefficients in z).
    std::vector<Complex> at_t0() const {
        std::vector<Complex> out(c.size(), 0.0);
        for (size_t i = 0; i < c.size(); ++i) out[i] = c[i].empty() ? Complex(0) : c[i][0];
        return out;
    }
};

/// A family of rational 1-forms omega_t = N(z,t)/D(z,t) dz with polynomial
/// coefficient tables, defined near the neck annulus |t|/eps < |z| < eps.
struct NeckFamily {
    Poly2 N, D;
    double epsilon1 = 0.1;  // inner radius of the integration path
    std::string name;

    Complex omega(Complex z, Complex t) const { return N.eval(z, t) / D.eval(z, t); }
};

namespace neck_detail {

/// Pullback under psi_t(z) = t/z:  psi^*(N/D dz) = -t N(t/z,t)/(z^2 D(t/z,t)) dz,
/// cleared of z denominators and stripped of common z and t factors.
inline NeckFamily pullback(const NeckFamily& f) {
    int dN = f.N.zdeg(), dD = f.D.zdeg();
    Poly2 Nt, Dt;
    // N(t/z, t) * z^dN = sum_i c_i(t) t^i z^(dN-i), likewise for D
    for (int i = 0; i <= dN; ++i)
        for (int j = 0; j < static_cast<int>(f.N.c[i].size()); ++j)
            if (f.N.c[i][j] != Complex(0)) Nt.set(dN - i, i + j, Nt.coeff(dN - i, i + j) + f.N.c[i][j]);
    for (int i = 0; i <= dD; ++i)
        for (int j = 0; j < static_cast<int>(f.D.c[i].size()); ++j)
            if (f.D.c[i][j] != Complex(0)) Dt.set(dD - i, i + j, Dt.coeff(dD - i, i + j) + f.D.c[i][j]);
    // omega~ = -t Nt z^(dD - dN - 2) / Dt
    Poly2 num, den;
    int shift = dD - dN - 2;
    for (int i = 0; i <= Nt.zdeg(); ++i)
        for (int j = 0; j < static_cast<int>(Nt.c[i].size()); ++j)
            if (Nt.c[i][j] != Complex(0))
                num.set(i + std::max(shift, 0), j + 1, -Nt.c[i][j]);
    for (int i = 0; i <= Dt.zdeg(); ++i)
        for (int j = 0; j < static_cast<int>(Dt.c[i].size()); ++j)
            if (Dt.c[i][j] != Complex(0)) den.set(i + std::max(-shift, 0), j, Dt.c[i][j]);
    // strip common powers of z and of t
    auto min_zero_rows = [](const Poly2& p) {
        int k = 0;
        while (k <= p.zdeg()) {
            bool all0 = true;
            for (Complex a : p.c[k]) all0 = all0 && a == Complex(0);
            if (!all0) break;
            ++k;
        }
        return k;
    };
    auto min_zero_tcols = [](const Poly2& p) {
        int best = 1 << 20;
        for (const auto& row : p.c) {
            int k = 0;
            while (k < static_cast<int>(row.size()) && row[k] == Complex(0)) ++k;
            if (k < static_cast<int>(row.size())) best = std::min(best, k);
        }
        return best == (1 << 20) ? 0 : best;
    };
    int zs = std::min(min_zero_rows(num), min_zero_rows(den));
    int ts = std::min(min_zero_tcols(num), min_zero_tcols(den));
    Poly2 num2, den2;
    for (int i = zs; i <= num.zdeg(); ++i)
        for (int j = ts; j < static_cast<int>(num.c[i].size()); ++j)
            if (num.c[i][j] != Complex(0)) num2.set(i - zs, j - ts, num.c[i][j]);
    for (int i = zs; i <= den.zdeg(); ++i)
        for (int j = ts; j < static_cast<int>(den.c[i].size()); ++j)
            if (den.c[i][j] != Complex(0)) den2.set(i - zs, j - ts, den.c[i][j]);
    NeckFamily out;
    out.N = std::move(num2);
    out.D = std::move(den2);
    out.epsilon1 = f.epsilon1;
    out.name = f.name + "~";
    return out;
}

inline Complex circle_residue(const NeckFamily& f, Complex t, double radius) {
    Complex s = integrate_circle([&](Complex z) { return f.omega(z, t); }, 0.0, radius);
    return s / (kTwoPi * Complex(0, 1));
}

/// Order of vanishing at z = 0 of a univariate polynomial, with a relative
/// coefficient floor for values produced by arithmetic cancellation.
inline int order_at_zero(const std::vector<Complex>& p, double floor_rel = 1e-13) {
    double scale = 0;
    for (Complex a : p) scale = std::max(scale, std::abs(a));
    if (scale == 0) return static_cast<int>(p.size());
    int k = 0;
    while (k < static_cast<int>(p.size()) && std::abs(p[k]) <= floor_rel * scale) ++k;
    return k;
}

}  // namespace neck_detail

/// alpha_t: the residue of omega_t on the circle |z| = epsilon1.
inline Complex neck_residue(const NeckFamily& f, Complex t) {
    return neck_detail::circle_residue(f, t, f.epsilon1);
}

/// Integral of omega_t along beta_t(s) = epsilon1^(1-2s) t^s minus
/// alpha_t log t.  The argument of t selects the branch (and the path).
inline Complex beta_integral(const NeckFamily& f, double t_mod, double t_arg, double tol = 1e-11) {
    if (!(t_mod > 0) || t_mod >= f.epsilon1 * f.epsilon1)
        throw ValidationError("BadParameter", "need 0 < |t| < epsilon1^2");
    const Complex logt(std::log(t_mod), t_arg);
    const double logeps = std::log(f.epsilon1);
    const Complex t = std::polar(t_mod, t_arg);
    auto beta = [&](double s) { return std::exp((1.0 - 2.0 * s) * logeps + s * logt); };
    // guard: the denominator must not vanish near the path
    for (int k = 0; k <= 64; ++k) {
        Complex z = beta(k / 64.0);
        if (std::abs(f.D.eval(z, t)) < 1e-12 * std::max(1.0, std::abs(f.N.eval(z, t))))
            throw NumericalError("PoleOnPath", "denominator vanishes near the neck path");
    }
    Complex integral = integrate(
        [&](double s) {
            Complex z = beta(s);
            return f.omega(z, t) * z * (logt - 2.0 * logeps);
        },
        0.0, 1.0, tol);
    Complex alpha = neck_residue(f, t);
    return integral - alpha * logt;
}

/// The t = 0 limit of the regularized neck integral:
///   lim_{z->0} [ int_eps1^z omega_0 - alpha_0 log z ]
/// - lim_{z->0} [ int_eps1^z omega~_0 + alpha_0 log z ].
inline Complex limit_value(const NeckFamily& f, double tol = 1e-11) {
    NeckFamily pb = neck_detail::pullback(f);
    Complex alpha0 = neck_detail::circle_residue(f, 0.0, f.epsilon1);

    auto regular_limit = [&](const NeckFamily& form, Complex alpha) {
        // int_eps1^0 of (omega_0 - alpha dz/z), evaluated stably as a
        // polynomial ratio with the pole removed symbolically
        std::vector<Complex> N0v = form.N.at_t0(), D0v = form.D.at_t0();
        int ordD = neck_detail::order_at_zero(D0v);
        int ordN = neck_detail::order_at_zero(N0v);
        if (ordD - ordN > 1)
            throw NumericalError("HigherOrderPole", "omega_0 has a pole of order > 1 at 0");
        // u = N0 z - alpha D0 vanishes to order ordD + 1 at 0
        std::vector<Complex> u(std::max(N0v.size() + 1, D0v.size()), 0.0);
        for (size_t i = 0; i < N0v.size(); ++i) u[i + 1] += N0v[i];
        for (size_t i = 0; i < D0v.size(); ++i) u[i] -= alpha * D0v[i];
        int drop = ordD + 1;
        double uscale = 0;
        for (Complex a : u) uscale = std::max(uscale, std::abs(a));
        for (int i = 0; i < drop && i < static_cast<int>(u.size()); ++i) {
            if (std::abs(u[i]) > 1e-10 * std::max(uscale, 1.0))
                throw NumericalError("HigherOrderPole", "residue removal failed; inconsistent pole data");
            u[i] = 0.0;
        }
        std::vector<Complex> ured(u.begin() + std::min<size_t>(drop, u.size()), u.end());
        std::vector<Complex> Dhat(D0v.begin() + std::min<size_t>(ordD, D0v.size()), D0v.end());
        auto evalp = [](const std::vector<Complex>& p, Complex z) {
            Complex s = 0;
            for (size_t i = p.size(); i-- > 0;) s = s * z + p[i];
            return s;
        };
        Complex integral = integrate(
            [&](double s) { return evalp(ured, Complex(s, 0)) / evalp(Dhat, Complex(s, 0)); },
            f.epsilon1, 0.0, tol);
        return integral;
    };

    Complex lim1 = regular_limit(f, alpha0) - alpha0 * std::log(f.epsilon1);
    Complex lim2 = regular_limit(pb, -alpha0) + alpha0 * std::log(f.epsilon1);
    return lim1 - lim2;
}

/// The built-in verification battery of rational families.
inline std::vector<NeckFamily> builtin_neck_families() {
    std::vector<NeckFamily> fams;
    {
        NeckFamily f;  // dz/z
        f.name = "dz/z";
        f.N.set(0, 0, 1.0);
        f.D.set(1, 0, 1.0);
        fams.push_back(f);
    }
    {
        NeckFamily f;  // dz
        f.name = "dz";
        f.N.set(0, 0, 1.0);
        f.D.set(0, 0, 1.0);
        fams.push_back(f);
    }
    {
        NeckFamily f;  // (1/z + 1) dz
        f.name = "(1/z+1)dz";
        f.N.set(0, 0, 1.0);
        f.N.set(1, 0, 1.0);
        f.D.set(1, 0, 1.0);
        fams.push_back(f);
    }
    {
        NeckFamily f;  // (1/z + c - c~ t/z^2) dz ; limits (1/z+c), (-1/z+c~)
        f.name = "(1/z+c-c~t/z^2)dz";
        const Complex c(0.7, 0.0), ct(-0.3, 0.0);
        f.N.set(1, 0, 1.0);
        f.N.set(0, 1, -ct);
        f.N.set(2, 0, c);
        f.D.set(2, 0, 1.0);
        fams.push_back(f);
    }
    {
        NeckFamily f;  // (1/z + 1 + t z) dz : a genuinely t-dependent family
        f.name = "(1/z+1+tz)dz";
        f.N.set(0, 0, 1.0);
        f.N.set(1, 0, 1.0);
        f.N.set(2, 1, 1.0);
        f.D.set(1, 0, 1.0);
        fams.push_back(f);
    }
    {
        NeckFamily f;  // dz/(z - 1/2): regular through the neck, alpha = 0
        f.name = "dz/(z-0.5)";
        f.N.set(0, 0, 1.0);
        f.D.set(0, 0, -0.5);
        f.D.set(1, 0, 1.0);
        fams.push_back(f);
    }
    return fams;
}

}  // namespace saddlenet
