#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "saddlenet/quadrature.hpp"
#include "saddlenet/types.hpp"

namespace saddlenet {

/// A saddle tower of vertical period 2*pi with n wings, described on the
/// punctured Riemann sphere.  The Weierstrass data is
///   Phi_1 = sum_h -cos(theta_h)/(z - p_h) dz,
///   Phi_2 = sum_h -sin(theta_h)/(z - p_h) dz,
///   Phi_3 = sum_h -i sigma_h/(z - p_h) dz,
/// with the punctures on the unit circle in clockwise order and the adapted
/// local coordinate w_h = i (z - p_h)/(z + p_h) at each puncture.
struct TowerModel {
    int n = 0;
    std::vector<double> theta;       // wing directions, in rotation order
    std::vector<int> sigma;          // alternating signs
    std::vector<Complex> punctures;  // unit modulus, clockwise

    // filled by analyze()
    std::vector<double> upsilon;  // wing undulation amplitudes, > 0
    std::vector<Complex> mu;      // horizontal wing offsets (base point z0)
    std::vector<double> nu;       // vertical wing offsets, mod 2*pi
    double phase = 0.0;           // common 0-plane height, mod 2*pi
    Complex base_point = 0.0;     // z0 of the Weierstrass integrals

    bool analyzed = false;
};

// ---------------------------------------------------------------------------
// wing-polygon classification

/// Degenerate: all wing directions lie on one line.
inline bool wing_polygon_degenerate(const std::vector<double>& theta, double tol = 1e-9) {
    for (double t : theta) {
        double d = std::remainder(t - theta[0], kPi);
        if (std::abs(d) > tol) return false;
    }
    return true;
}

/// Special: the unit-edge polygon appears as a parallelogram with two sides
/// of length one (two antipodal singleton direction groups, two antipodal
/// groups of equal size >= 2).
inline bool wing_polygon_special(const std::vector<double>& theta, double tol = 1e-9) {
    const int n = static_cast<int>(theta.size());
    // cyclic grouping of consecutive equal directions
    std::vector<std::pair<double, int>> groups;  // (direction, count)
    for (int i = 0; i < n; ++i) {
        if (!groups.empty() && angle_dist(theta[i], groups.back().first) < tol)
            groups.back().second++;
        else
            groups.push_back({theta[i], 1});
    }
    if (groups.size() > 1 && angle_dist(groups.front().first, groups.back().first) < tol) {
        groups.front().second += groups.back().second;
        groups.pop_back();
    }
    if (groups.size() != 4) return false;
    bool antipodal = angle_dist(groups[0].first + kPi, groups[2].first) < tol &&
                     angle_dist(groups[1].first + kPi, groups[3].first) < tol;
    if (!antipodal) return false;
    int a = groups[0].second, b = groups[1].second, c = groups[2].second, d = groups[3].second;
    return (a == 1 && c == 1 && b == d && b >= 2) || (b == 1 && d == 1 && a == c && a >= 2);
}

inline bool wing_polygon_ordinary(const std::vector<double>& theta, double tol = 1e-9) {
    return !wing_polygon_degenerate(theta, tol) && !wing_polygon_special(theta, tol);
}

/// Validate wing data and start a tower (punctures not yet placed).
inline TowerModel make_tower(std::vector<double> theta, std::vector<int> sigma) {
    TowerModel t;
    t.n = static_cast<int>(theta.size());
    if (t.n < 4 || t.n % 2 != 0) throw ValidationError("WingCount", "need an even number >= 4 of wings");
    if (sigma.size() != theta.size()) throw ValidationError("WingCount", "sigma size mismatch");
    Complex closure = 0;
    for (int h = 0; h < t.n; ++h) closure += std::polar(1.0, theta[h]);
    if (std::abs(closure) > 1e-9 * t.n)
        throw ValidationError("PolygonNotClosed", "wing unit vectors do not sum to zero");
    for (int h = 0; h < t.n; ++h) {
        if (sigma[h] * sigma[(h + 1) % t.n] != -1)
            throw ValidationError("OrientationNotAlternating", "sigma must alternate");
    }
    double total = 0;
    for (int h = 0; h < t.n; ++h) {
        double d = wrap_angle(theta[(h + 1) % t.n] - theta[h]);
        if (d < -1e-9) throw ValidationError("WingsNotConvex", "wing directions not weakly monotone");
        if (d < 0) d = 0;
        total += d;
    }
    if (std::abs(total - kTwoPi) > 1e-6)
        throw ValidationError("WingsNotConvex", "wing directions do not wind once around");
    if (wing_polygon_degenerate(theta))
        throw ValidationError("DegeneratePolygon", "wing polygon appears as a line segment");
    if (wing_polygon_special(theta))
        throw ValidationError("SpecialPolygon", "wing polygon is a unit-sided parallelogram");
    t.theta = std::move(theta);
    t.sigma = std::move(sigma);
    return t;
}

// ---------------------------------------------------------------------------
// conformality residues and the puncture solver

/// Residue of Q/dz^2 at p_h, up to the factor 2:
///   R_h = sum_{j != h} (cos(theta_h - theta_j) - sigma_h sigma_j)/(p_h - p_j).
/// Q = 0 holds iff all R_h vanish.
inline std::vector<Complex> conformality_residues(const TowerModel& t, const std::vector<Complex>& p) {
    std::vector<Complex> R(t.n, 0.0);
    for (int h = 0; h < t.n; ++h)
        for (int j = 0; j < t.n; ++j) {
            if (j == h) continue;
            double c = std::cos(t.theta[h] - t.theta[j]) - t.sigma[h] * t.sigma[j];
            R[h] += c / (p[h] - p[j]);
        }
    return R;
}

/// Stereographically projected Gauss map G = -(Phi_1 + i Phi_2)/Phi_3;
/// |G| = 1 exactly on the circle of punctures.
inline Complex gauss_map(const TowerModel& t, Complex z) {
    Complex num = 0, den = 0;
    for (int h = 0; h < t.n; ++h) {
        Complex r = 1.0 / (z - t.punctures[h]);
        num += std::polar(1.0, t.theta[h]) * r;
        den += static_cast<double>(t.sigma[h]) * r;
    }
    return Complex(0, 1) * num / den;
}

/// Q/dz^2 as a scalar function (vanishes identically for a valid tower).
inline Complex conformality_Q(const TowerModel& t, Complex z) {
    Complex A = 0, B = 0, C = 0;
    for (int h = 0; h < t.n; ++h) {
        Complex r = 1.0 / (z - t.punctures[h]);
        A += std::cos(t.theta[h]) * r;
        B += std::sin(t.theta[h]) * r;
        C += static_cast<double>(t.sigma[h]) * r;
    }
    return A * A + B * B - C * C;
}

struct PunctureSolveOptions {
    double tol = 1e-13;
    int max_iter = 120;
};

/// Place the punctures by Newton on the conformality residues.  The first
/// three punctures stay fixed (the Moebius gauge); the rest move.  All
/// punctures are kept on the unit circle, where p_h R_h is purely imaginary,
/// so the free system is square: n-3 real equations in the n-3 free angles.
/// The three fixed residues then vanish automatically by the moment
/// identities of Q (which decays like z^-4 at infinity).
inline void solve_punctures(TowerModel& t, std::optional<std::vector<Complex>> initial = std::nullopt,
                            PunctureSolveOptions opt = {}) {
    const int n = t.n;
    std::vector<double> alpha(n);
    if (initial) {
        if (static_cast<int>(initial->size()) != n)
            throw ValidationError("PunctureCount", "initial guess size mismatch");
        for (int h = 0; h < n; ++h) {
            if (std::abs(std::abs((*initial)[h]) - 1.0) > 1e-6)
                throw ValidationError("PuncturesNotConcircular", "initial punctures must sit on the unit circle");
            alpha[h] = std::arg((*initial)[h]);
        }
    } else {
        // clockwise; the gap deviations from uniform mirror the wing-gap
        // deviations scaled by -1/(k-1), which is exact on the symmetric
        // family (and handles parallel wings, whose punctures spread wide)
        const int k = n / 2;
        std::vector<double> gaps(n);
        double total = 0;
        for (int h = 0; h < n; ++h) {
            double wing_gap = t.theta[(h + 1) % n] - t.theta[h];
            wing_gap -= kTwoPi * std::floor(wing_gap / kTwoPi);  // in [0, 2*pi)
            gaps[h] = std::max(kTwoPi / n - (wing_gap - kTwoPi / n) / (k - 1), kTwoPi / (8.0 * n));
            total += gaps[h];
        }
        double a = -kPi / n;
        for (int h = 0; h < n; ++h) {
            alpha[h] = a;
            a -= gaps[h] * kTwoPi / total;
        }
    }

    auto punctures_of = [&](const std::vector<double>& a) {
        std::vector<Complex> p(n);
        for (int h = 0; h < n; ++h) p[h] = std::polar(1.0, a[h]);
        return p;
    };
    auto residual = [&](const std::vector<double>& a) {
        auto p = punctures_of(a);
        auto R = conformality_residues(t, p);
        Eigen::VectorXd e(n - 3);
        for (int h = 3; h < n; ++h) e[h - 3] = (p[h] * R[h]).imag();
        return e;
    };

    Eigen::VectorXd e = residual(alpha);
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        double nr = e.lpNorm<Eigen::Infinity>();
        if (nr < opt.tol) break;
        auto p = punctures_of(alpha);
        auto R = conformality_residues(t, p);
        Eigen::MatrixXd J(n - 3, n - 3);
        const Complex I(0, 1);
        for (int h = 3; h < n; ++h) {
            Complex diag = I * p[h] * R[h];
            for (int m = 0; m < n; ++m) {
                if (m == h) continue;
                double c = std::cos(t.theta[h] - t.theta[m]) - t.sigma[h] * t.sigma[m];
                diag += -I * p[h] * p[h] * c / ((p[h] - p[m]) * (p[h] - p[m]));
            }
            J(h - 3, h - 3) = diag.imag();
            for (int j = 3; j < n; ++j) {
                if (j == h) continue;
                double c = std::cos(t.theta[h] - t.theta[j]) - t.sigma[h] * t.sigma[j];
                J(h - 3, j - 3) = (I * p[h] * p[j] * c / ((p[h] - p[j]) * (p[h] - p[j]))).imag();
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) throw NumericalError("NewtonDiverged", "singular puncture Jacobian");
        Eigen::VectorXd step = lu.solve(-e);
        double s = 1.0;
        bool accepted = false;
        auto keeps_order = [&](const std::vector<double>& a) {
            for (int h = 0; h < n; ++h) {
                double gap = a[h] - a[(h + 1) % n];
                gap -= kTwoPi * std::floor(gap / kTwoPi);
                if (!(gap > 1e-12 && gap < kTwoPi - 1e-12)) return false;
            }
            return true;
        };
        for (int ls = 0; ls < 45; ++ls) {
            std::vector<double> trial = alpha;
            for (int h = 3; h < n; ++h) trial[h] += s * step[h - 3];
            Eigen::VectorXd et = residual(trial);
            if (keeps_order(trial) && et.lpNorm<Eigen::Infinity>() < (1.0 - 0.25 * s) * nr + 1e-16) {
                alpha = trial;
                e = et;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) throw NumericalError("NewtonDiverged", "line search stalled in solve_punctures");
    }
    if (e.size() > 0 && e.lpNorm<Eigen::Infinity>() >= opt.tol)
        throw NumericalError("NewtonDiverged", "no convergence in solve_punctures");

    t.punctures = punctures_of(alpha);

    // post checks: all residues vanish (moment identities), punctures on
    // the common circle, clockwise order
    auto R = conformality_residues(t, t.punctures);
    for (int h = 0; h < n; ++h)
        if (std::abs(R[h]) > 1e-9)
            throw NumericalError("PuncturesNotConcircular",
                                 "a fixed-puncture residue did not vanish; bad gauge or branch");
    for (int h = 0; h < n; ++h) {
        double gap = -wrap_angle(alpha[(h + 1) % n] - alpha[h]);
        if (!(gap > 0))
            throw NumericalError("WrongOrdering", "punctures are not in clockwise order");
    }
}

// ---------------------------------------------------------------------------
// analysis: Upsilon, mu, nu, phase

namespace tower_detail {

/// Logarithmic derivative of the Gauss map at p_h, with the pole parts of
/// numerator and denominator cancelled analytically.
inline Complex log_gauss_derivative(const TowerModel& t, int h) {
    Complex s = 0;
    for (int j = 0; j < t.n; ++j) {
        if (j == h) continue;
        Complex c = std::polar(1.0, t.theta[j] - t.theta[h]) -
                    Complex(static_cast<double>(t.sigma[h] * t.sigma[j]), 0.0);
        s += c / (t.punctures[h] - t.punctures[j]);
    }
    return s;
}

/// Clearance of the radial ray toward puncture h from the other punctures.
inline double ray_clearance(const TowerModel& t, int h) {
    double best = 1e9;
    for (int j = 0; j < t.n; ++j) {
        if (j == h) continue;
        Complex q = t.punctures[j] / t.punctures[h];  // rotate ray onto [0, 1]
        double s = std::clamp(q.real(), 0.0, 1.0);
        best = std::min(best, std::abs(q - s));
    }
    return best;
}

struct WingIntegrals {
    Complex mu;
    double nu;
};

/// Limit quantities of wing h by numerical integration of Phi along the
/// radial path from the base point z0 = 0.  The j = h singularity is
/// handled in closed form, after which the limit z -> p_h is exact and the
/// remaining integrand is regular on the whole ray.
inline WingIntegrals wing_integrals_by_quadrature(const TowerModel& t, int h, double tol = 1e-11) {
    // For unimodular punctures the radial ray is the best possible path: a
    // puncture close to the ray is close to p_h itself, so no detour can
    // widen the clearance.  A crowded ray only costs quadrature nodes; a
    // truly degenerate gap is refused.
    const double clearance = ray_clearance(t, h);
    if (clearance < 1e-6)
        throw NumericalError("IntegrationPathHitsPuncture",
                             "puncture gap below 1e-6 at wing " + std::to_string(h));
    const Complex ph = t.punctures[h];
    // z(s) - p_j in the factored form (p_h - p_j) + (s-1) p_h; this keeps
    // the relative rounding at machine precision even when z runs close to
    // a crowded puncture near the endpoint
    std::vector<Complex> gap(t.n);
    for (int j = 0; j < t.n; ++j) gap[j] = ph - t.punctures[j];
    auto zmp = [&](double s, int j) { return gap[j] + (s - 1.0) * ph; };

    // d/ds of Re int Phi_1 + i Re int Phi_2 along z(s) = s p_h.  The j = h
    // term equals -e^{i theta_h}/(s-1) exactly on this ray; it is dropped
    // here and restored in closed form below (subtracting it numerically
    // would leave pure cancellation noise near the endpoint).
    auto horizontal_integrand = [&](double s) -> Complex {
        Complex g1 = 0, g2 = 0;
        for (int j = 0; j < t.n; ++j) {
            if (j == h) continue;
            Complex r = ph / zmp(s, j);  // Phi_j(z(s)) dz/ds pieces
            g1 += -std::cos(t.theta[j]) * r;
            g2 += -std::sin(t.theta[j]) * r;
        }
        return Complex(g1.real(), g2.real());
    };
    // d/ds of Re int Phi_3 along the same path; the h-term is dropped since
    // its Re-part is exactly constant on the ray
    auto vertical_integrand = [&](double s) -> Complex {
        Complex g = 0;
        for (int j = 0; j < t.n; ++j) {
            if (j == h) continue;
            g += Complex(0, -static_cast<double>(t.sigma[j])) * ph / zmp(s, j);
        }
        return Complex(g.real(), 0.0);
    };

    Complex W = integrate(horizontal_integrand, 0.0, 1.0, tol);
    // the removed j = h term contributes -e^{i theta_h} log|z - p_h| up to
    // the base-point constant; in the limit it cancels against
    // e^{i theta_h} log|w_h(z)| except for -e^{i theta_h} log 2
    Complex mu = W - std::polar(1.0, t.theta[h]) * std::log(2.0);

    Complex V = integrate(vertical_integrand, 0.0, 1.0, tol);
    // -sigma_h arg(w_h(z(s))) = sigma_h pi/2 exactly on the ray
    double nu = t.sigma[h] * kPi / 2.0 + V.real();
    return {mu, nu};
}

}  // namespace tower_detail

/// Closed form of mu for punctures on the unit circle and base point 0:
///   mu_h = -e^{i theta_h} log 2 - sum_{j != h} e^{i theta_j} log|p_h - p_j|.
inline Complex mu_closed_form(const TowerModel& t, int h) {
    Complex m = -std::polar(1.0, t.theta[h]) * std::log(2.0);
    for (int j = 0; j < t.n; ++j) {
        if (j == h) continue;
        m -= std::polar(1.0, t.theta[j]) * std::log(std::abs(t.punctures[h] - t.punctures[j]));
    }
    return m;
}

struct AnalyzeOptions {
    double quad_tol = 1e-10;
    double cross_check_tol = 1e-8;  // closed form vs quadrature
    bool cross_check = true;
};

/// Fill Upsilon, mu, nu and the phase.  Upsilon comes from the logarithmic
/// derivative of the Gauss map in the adapted coordinate; mu from the
/// closed form above, cross-checked against the quadrature limit; nu and
/// the phase from the integrated height.
inline void analyze(TowerModel& t, AnalyzeOptions opt = {}) {
    if (static_cast<int>(t.punctures.size()) != t.n)
        throw ValidationError("PunctureCount", "solve_punctures first");
    // conformality guard: residues at punctures and samples of Q
    auto R = conformality_residues(t, t.punctures);
    for (int h = 0; h < t.n; ++h)
        if (std::abs(R[h]) > 1e-10)
            throw NumericalError("ConformalityViolated", "residue at puncture " + std::to_string(h));
    for (int k = 0; k < 100; ++k) {
        double ang = kTwoPi * k / 100.0;
        Complex z = std::polar(k % 2 ? 0.43 : 1.91, ang);
        if (std::abs(conformality_Q(t, z)) > 1e-8)
            throw NumericalError("ConformalityViolated", "Q does not vanish off the punctures");
    }

    // adapted-coordinate sign test: w_h > 0 on the arc toward the next
    // puncture (clockwise); with w_h = i(z-p_h)/(z+p_h) this is automatic,
    // the test guards the ordering convention
    for (int h = 0; h < t.n; ++h) {
        double gap = -wrap_angle(std::arg(t.punctures[(h + 1) % t.n] / t.punctures[h]));
        Complex z = t.punctures[h] * std::polar(1.0, -std::min(gap / 8, 0.01));
        Complex w = Complex(0, 1) * (z - t.punctures[h]) / (z + t.punctures[h]);
        if (!(w.real() > 0))
            throw NumericalError("WrongOrdering", "adapted coordinate not positive on the outgoing arc");
    }

    t.upsilon.assign(t.n, 0.0);
    t.mu.assign(t.n, 0.0);
    t.nu.assign(t.n, 0.0);
    const Complex I(0, 1);
    for (int h = 0; h < t.n; ++h) {
        // Upsilon_h = i (log G)'(p_h) dz/dw_h(p_h), and dz/dw_h = -2 i p_h
        Complex ups = 2.0 * t.punctures[h] * tower_detail::log_gauss_derivative(t, h);
        if (std::abs(ups.imag()) > 1e-8 * std::max(1.0, std::abs(ups)))
            throw NumericalError("UpsilonNotReal", "wing " + std::to_string(h));
        if (!(ups.real() > 0)) throw NumericalError("UpsilonNotPositive", "wing " + std::to_string(h));
        t.upsilon[h] = ups.real();

        t.mu[h] = mu_closed_form(t, h);
        auto wi = tower_detail::wing_integrals_by_quadrature(t, h, opt.quad_tol);
        if (opt.cross_check && std::abs(wi.mu - t.mu[h]) > opt.cross_check_tol)
            throw NumericalError("MuCrossCheck", "closed form and quadrature disagree at wing " +
                                                     std::to_string(h));
        t.nu[h] = wi.nu;
    }

    // the phase: nu_h (sigma = +1) or nu_h - pi (sigma = -1), equal mod 2*pi
    Complex mean = 0;
    for (int h = 0; h < t.n; ++h)
        mean += std::polar(1.0, t.nu[h] - (t.sigma[h] == 1 ? 0.0 : kPi));
    t.phase = std::arg(mean);
    for (int h = 0; h < t.n; ++h) {
        double want = t.phase + (t.sigma[h] == 1 ? 0.0 : kPi);
        if (angle_dist(t.nu[h], want) > 1e-7)
            throw NumericalError("PhaseInconsistent", "nu pattern broken at wing " + std::to_string(h));
    }
    t.analyzed = true;
}

/// Both change-of-coordinate laws under w~_h = kappa_h w_h:
///   Upsilon~ = Upsilon/kappa,   mu~ = mu + e^{i theta} log kappa.
/// Returns the worst deviation between recomputed and transformed values.
struct CoordinateChangeReport {
    double upsilon_error = 0.0;
    double mu_error = 0.0;
};

inline CoordinateChangeReport coordinate_change_check(const TowerModel& t,
                                                      const std::vector<double>& kappa) {
    if (!t.analyzed) throw ValidationError("NotAnalyzed", "analyze the tower first");
    CoordinateChangeReport r;
    for (int h = 0; h < t.n; ++h) {
        if (!(kappa[h] > 0)) throw ValidationError("BadScale", "kappa must be positive");
        // recompute from the definitions in the rescaled coordinate
        Complex ups_re = 2.0 * t.punctures[h] * tower_detail::log_gauss_derivative(t, h) / kappa[h];
        auto wi = tower_detail::wing_integrals_by_quadrature(t, h);
        Complex mu_re = wi.mu + std::polar(1.0, t.theta[h]) * std::log(kappa[h]);
        // transformation laws applied to the stored quantities
        double ups_law = t.upsilon[h] / kappa[h];
        Complex mu_law = t.mu[h] + std::polar(1.0, t.theta[h]) * std::log(kappa[h]);
        r.upsilon_error = std::max(r.upsilon_error, std::abs(ups_re.real() - ups_law));
        r.mu_error = std::max(r.mu_error, std::abs(mu_re - mu_law));
    }
    return r;
}

// ---------------------------------------------------------------------------
// explicit families

/// Symmetrically deformed saddle towers with n = 2k wings (Gauss map
/// z^{k-1}); 0 < psi < pi/k.  Puncture positions in closed form.
inline TowerModel symmetric_tower(int n, double psi) {
    if (n < 4 || n % 2 != 0) throw ValidationError("WingCount", "n must be even and >= 4");
    const int k = n / 2;
    if (!(psi > 0 && psi < kPi / k))
        throw ValidationError("BadParameter", "psi outside the embedded range (0, pi/k)");
    const double phi = (k == 1) ? psi : kPi / n - (psi - kPi / n) / (k - 1);
    std::vector<double> theta(n), alpha(n);
    std::vector<int> sigma(n);
    for (int idx = 0; idx < n; ++idx) {
        int h = idx + 1;  // traditional 1-based labels
        theta[idx] = (h / 2) * (kTwoPi / k) - ((h % 2 == 0) ? 1.0 : -1.0) * psi;
        sigma[idx] = (h % 2 == 0) ? 1 : -1;
        alpha[idx] = -(h / 2) * (kTwoPi / k) + ((h % 2 == 0) ? 1.0 : -1.0) * phi;
    }
    TowerModel t = make_tower(theta, sigma);
    t.punctures.resize(n);
    for (int idx = 0; idx < n; ++idx) t.punctures[idx] = std::polar(1.0, alpha[idx]);
    return t;
}

/// Isosceles six-wing towers: wings parallel to an isosceles triangle,
/// parameter 0 < psi < pi/2, puncture angle phi from sin(psi) + sin(phi) = 1.
inline TowerModel isosceles6_tower(double psi) {
    if (!(psi > 0 && psi < kPi / 2))
        throw ValidationError("BadParameter", "psi outside (0, pi/2)");
    const double phi = std::asin(1.0 - std::sin(psi));
    std::vector<double> theta = {psi, kPi / 2, kPi - psi, -kPi + psi, -kPi / 2, -psi};
    std::vector<int> sigma = {-1, 1, -1, 1, -1, 1};
    TowerModel t = make_tower(theta, sigma);
    const Complex I(0, 1);
    t.punctures = {std::polar(1.0, -phi), -I, -std::polar(1.0, phi),
                   -std::polar(1.0, -phi), I, std::polar(1.0, phi)};
    return t;
}

}  // namespace saddlenet
