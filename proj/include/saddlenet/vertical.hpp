#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "saddlenet/families.hpp"
#include "saddlenet/horizontal.hpp"

namespace saddlenet {

/// mu antisymmetrized across each edge: mu^a_h = mu_h - mu_{-h}.
inline EdgeField<Complex> antisymmetrize(const RotationGraph& g, const EdgeField<Complex>& mu) {
    std::vector<Complex> v(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        v[e] = mu[h] - mu[g.opp(h)];
    }
    return EdgeField<Complex>::antisym(g, v);
}

/// The first-order deformation xi: the unique solution of
///   DF_hor(x) . xi = 0            on the vertex-cut basis,
///   P_hor(xi)  = -P_hor(mu^a)     on the face cycles,
///   P_hor(xi)  = -P_hor(mu^a) + Lambda_i   on the lattice cycles.
/// Requires the graph to be rigid (the system matrix is exactly the
/// rigidity matrix).
inline EdgeField<Complex> solve_xi(const RotationGraph& g, const TorusRep& rep,
                                   const EdgeField<Complex>& mu, Complex lambda1 = 0.0,
                                   Complex lambda2 = 0.0) {
    EdgeData d = edge_data(g, rep);
    auto cuts = vertex_cut_basis(g);
    CycleBasis cb = cycle_basis(g, rep.offset);
    EdgeField<Complex> mua = antisymmetrize(g, mu);

    const int ne = g.num_edges();
    Eigen::MatrixXd M(2 * ne, 2 * ne);
    M << DF_hor_matrix(g, d.x, cuts), period_matrix(g, cb.star());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * ne);
    int base = 2 * static_cast<int>(cuts.size());
    std::vector<Chain> cycles = cb.star();
    for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
        Complex target = -chain_pairing(g, cycles[i], mua);
        if (i == static_cast<int>(cycles.size()) - 2) target += lambda1;
        if (i == static_cast<int>(cycles.size()) - 1) target += lambda2;
        rhs[base + 2 * i] = target.real();
        rhs[base + 2 * i + 1] = target.imag();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible())
        throw NumericalError("SingularSystem", "the graph is not rigid; xi is not determined");
    return unpack_complex(g, lu.solve(rhs));
}

/// Interaction coefficients K_h = Upsilon_h Upsilon_{-h} exp(-Re(xi_h conj(u_h))),
/// a symmetric positive field.  An override replaces every value (used to
/// reproduce normalized examples).
inline EdgeField<double> K_field(const RotationGraph& g, const TorusRep& rep,
                                 const EdgeField<double>& upsilon, const EdgeField<Complex>& xi,
                                 std::optional<double> override_value = std::nullopt) {
    if (override_value) return EdgeField<double>::sym(g, std::vector<double>(g.num_edges(), *override_value));
    EdgeData d = edge_data(g, rep);
    std::vector<double> k(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        double damp = std::exp(-(xi[h] * std::conj(d.unit[h])).real());
        k[e] = upsilon[h] * upsilon[g.opp(h)] * damp;
        if (!(k[e] > 0)) throw NumericalError("KNotPositive", "edge through '" + g.id(h) + "'");
    }
    return EdgeField<double>::sym(g, k);
}

/// Vertical force of one cut: sum of K_h sin(phi_h) over the shortest
/// half-edges m(b).
inline double F_ver(const RotationGraph&, const Cut& b, const EdgeField<double>& K,
                    const EdgeField<double>& phi) {
    double s = 0;
    for (int h : b.m) s += K[h] * std::sin(phi[h]);
    return s;
}

inline std::vector<double> F_ver(const RotationGraph& g, const std::vector<Cut>& cuts,
                                 const EdgeField<double>& K, const EdgeField<double>& phi) {
    std::vector<double> out;
    out.reserve(cuts.size());
    for (const Cut& b : cuts) out.push_back(F_ver(g, b, K, phi));
    return out;
}

/// Rows of DF_ver for the given cuts, in the edge coordinates of phi.
inline Eigen::MatrixXd DF_ver_edge_matrix(const RotationGraph& g, const std::vector<Cut>& cuts,
                                          const EdgeField<double>& K, const EdgeField<double>& phi) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<int>(cuts.size()), g.num_edges());
    for (int i = 0; i < static_cast<int>(cuts.size()); ++i)
        for (int h : cuts[i].m) {
            int e = g.edge_of(h);
            double sgn = (h == g.edge_rep(e)) ? 1.0 : -1.0;
            M(i, e) += K[h] * std::cos(phi[h]) * sgn;
        }
    return M;
}

/// DF_ver restricted to the cut space: columns are the gradient directions
/// grad(e_v) for all but the last vertex, rows the given cuts.
inline Eigen::MatrixXd DF_ver_matrix(const RotationGraph& g, const std::vector<Cut>& cuts,
                                     const EdgeField<double>& K, const EdgeField<double>& phi) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<int>(cuts.size()), g.num_vertices() - 1);
    for (int i = 0; i < static_cast<int>(cuts.size()); ++i)
        for (int h : cuts[i].m) {
            double w = K[h] * std::cos(phi[h]);
            int vin = g.vertex_of(h), vout = g.vertex_of(g.opp(h));
            if (vout < g.num_vertices() - 1) M(i, vout) += w;
            if (vin < g.num_vertices() - 1) M(i, vin) -= w;
        }
    return M;
}

struct VerticalRigidityReport {
    Eigen::MatrixXd matrix;  // DF_ver on grad(e_v), rows on the mdiv cut basis
    double smallest_singular_value = 0.0;
    double largest_singular_value = 0.0;
    double determinant = 1.0;  // of the square matrix
    bool rigid = true;
};

inline VerticalRigidityReport vertical_rigidity(const RotationGraph& g, const TorusRep& rep,
                                                const EdgeField<double>& K,
                                                const EdgeField<double>& phi) {
    VerticalRigidityReport r;
    if (g.num_vertices() == 1) return r;  // empty system; vacuously rigid
    auto d = edge_data(g, rep);
    auto basis = mdiv_cut_basis(g, d.edge_length);
    r.matrix = DF_ver_matrix(g, basis, K, phi);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.matrix);
    r.largest_singular_value = svd.singularValues()[0];
    r.smallest_singular_value = svd.singularValues()[svd.singularValues().size() - 1];
    r.determinant = r.matrix.determinant();
    // yardstick: the same rows with every cosine replaced by 1, so that a
    // numerically-zero matrix is not mistaken for an invertible one
    double scale = 0.0;
    for (const Cut& b : basis) {
        double row = 0.0;
        for (int h : b.m) row += std::abs(K[h]);
        scale = std::max(scale, row);
    }
    r.rigid = r.smallest_singular_value > kRigidityCutoff * std::max(r.largest_singular_value, scale);
    return r;
}

// ---------------------------------------------------------------------------
// phase solver

struct PhaseSolveStats {
    int iterations = 0;
    double residual = 0.0;
    bool rigid_at_solution = true;  // NotRigidAtSolution warning when false
};

/// Newton for the phase function: periods 0 on faces, the fundamental
/// shifts on the lattice cycles (all mod 2*pi, lifted near the initial
/// value), and vanishing vertical forces on the mdiv cut basis.  Balance on
/// the basis implies balance on every cut, which is verified afterwards.
inline EdgeField<double> solve_phases(const RotationGraph& g, const TorusRep& rep,
                                      const EdgeField<double>& K, std::array<double, 2> shifts,
                                      const EdgeField<double>& phi_initial, SolveOptions opt = {},
                                      PhaseSolveStats* stats = nullptr) {
    EdgeData d = edge_data(g, rep);
    CycleBasis cb = cycle_basis(g, rep.offset);
    auto basis = mdiv_cut_basis(g, d.edge_length);
    std::vector<Chain> cycles = cb.star();

    const int ne = g.num_edges();
    Eigen::VectorXd X = to_edge_vector(g, phi_initial).eval();

    // lift the mod-2*pi targets next to the initial periods
    std::vector<double> target(cycles.size());
    for (size_t i = 0; i < cycles.size(); ++i) {
        double want = 0.0;
        if (i == cycles.size() - 2) want = shifts[0];
        if (i == cycles.size() - 1) want = shifts[1];
        double have = chain_pairing(g, cycles[i], phi_initial);
        target[i] = want + kTwoPi * std::round((have - want) / kTwoPi);
    }

    auto residual = [&](const Eigen::VectorXd& Xv) {
        EdgeField<double> phi = antisym_from_vector<double>(g, Xv);
        Eigen::VectorXd r(ne);
        for (size_t i = 0; i < cycles.size(); ++i)
            r[static_cast<int>(i)] = chain_pairing(g, cycles[i], phi) - target[i];
        int base = static_cast<int>(cycles.size());
        for (size_t i = 0; i < basis.size(); ++i)
            r[base + static_cast<int>(i)] = F_ver(g, basis[i], K, phi);
        return r;
    };

    Eigen::MatrixXd P = curl_matrix(g, cycles);
    Eigen::VectorXd r = residual(X);
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        double nr = r.lpNorm<Eigen::Infinity>();
        if (nr < opt.tol) break;
        EdgeField<double> phi = antisym_from_vector<double>(g, X);
        Eigen::MatrixXd J(ne, ne);
        J << P, DF_ver_edge_matrix(g, basis, K, phi);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) throw NumericalError("SingularSystem", "phase Jacobian is singular");
        Eigen::VectorXd step = lu.solve(-r);
        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            Eigen::VectorXd Xt = X + t * step;
            Eigen::VectorXd rt = residual(Xt);
            if (rt.lpNorm<Eigen::Infinity>() < (1.0 - 0.25 * t) * nr + 1e-16) {
                X = Xt;
                r = rt;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) throw NumericalError("NewtonDiverged", "line search stalled in solve_phases");
    }
    if (r.lpNorm<Eigen::Infinity>() >= opt.tol)
        throw NumericalError("NewtonDiverged", "no convergence in solve_phases");

    EdgeField<double> phi = antisym_from_vector<double>(g, X);
    // the basis equations propagate to every cut; verify
    for (const Cut& b : all_cuts(g, &d.edge_length))
        if (std::abs(F_ver(g, b, K, phi)) > 1e-10)
            throw NumericalError("NewtonDiverged", "a non-basis cut failed to balance");
    if (stats) {
        stats->iterations = it;
        stats->residual = r.lpNorm<Eigen::Infinity>();
        stats->rigid_at_solution = vertical_rigidity(g, rep, K, phi).rigid;
    }
    return phi;
}

// ---------------------------------------------------------------------------
// the 3x3 triangular-lattice example

struct Triangular33Result {
    std::vector<double> vertex_phases_first;   // 9 values, inversion-symmetric
    std::vector<double> vertex_phases_second;  // 9 values
    double det_first = 0.0;
    double det_second = 0.0;
    double det_trivial = 0.0;  // at the zero phase function (Laplacian minor)
};

namespace detail33 {

/// Vertex-phase Jacobian of the vertex-cut vertical forces on the 8
/// non-reference vertices (K = 1, equal lengths: a cosine-weighted
/// Laplacian with the reference row/column removed).
inline Eigen::MatrixXd vertex_phase_jacobian(const RotationGraph& g, const std::vector<double>& psi) {
    const int nv = g.num_vertices();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nv, nv);
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        int u = g.vertex_of(h), v = g.vertex_of(g.opp(h));
        if (u == v) continue;
        double c = std::cos(psi[v] - psi[u]);
        L(u, v) += c;
        L(v, u) += c;
        L(u, u) -= c;
        L(v, v) -= c;
    }
    return L.block(1, 1, nv - 1, nv - 1);
}

inline bool balanced_on_all_cuts(const RotationGraph& g, const std::vector<Cut>& cuts,
                                 const EdgeField<double>& K, const std::vector<double>& psi) {
    std::vector<double> per_edge(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        per_edge[e] = psi[g.vertex_of(g.opp(h))] - psi[g.vertex_of(h)];
    }
    auto phi = EdgeField<double>::antisym(g, per_edge);
    for (const Cut& b : cuts)
        if (std::abs(F_ver(g, b, K, phi)) > 1e-9) return false;
    return true;
}

}  // namespace detail33

/// Search the inversion-symmetric phase assignments of the 3x3 triangular
/// lattice for the two known balanced-and-rigid phase functions and return
/// their 8x8 vertical-force Jacobian determinants (assuming K = 1).
inline Triangular33Result triangular33_determinants() {
    Triangular33Result result;
    auto gr = triangular_torus_graph(3);
    const auto& g = gr.graph;
    auto d = edge_data(g, gr.rep);
    auto K = EdgeField<double>::sym(g, std::vector<double>(g.num_edges(), 1.0));
    auto cuts = all_cuts(g, &d.edge_length);

    // inversion (i,j) -> (-i,-j) mod 3 pairs the 8 outer vertices
    auto vid = [](int i, int j) { return ((j % 3 + 3) % 3) * 3 + ((i % 3 + 3) % 3); };
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> seen(9, 0);
    seen[vid(0, 0)] = 1;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            int a = vid(i, j), b = vid(-i, -j);
            if (!seen[a] && !seen[b] && a != b) {
                pairs.push_back({a, b});
                seen[a] = seen[b] = 1;
            }
        }

    auto search = [&](const std::array<double, 4>& values) -> std::pair<std::vector<double>, double> {
        std::array<int, 4> perm = {0, 1, 2, 3};
        std::sort(perm.begin(), perm.end());
        do {
            for (int signs = 0; signs < 16; ++signs) {
                std::vector<double> psi(9, 0.0);
                for (int k = 0; k < 4; ++k) {
                    double val = ((signs >> k) & 1 ? -1.0 : 1.0) * values[perm[k]];
                    psi[pairs[k].first] = val;
                    psi[pairs[k].second] = -val;
                }
                if (!detail33::balanced_on_all_cuts(g, cuts, K, psi)) continue;
                Eigen::MatrixXd J = detail33::vertex_phase_jacobian(g, psi);
                double det = J.determinant();
                if (std::abs(det) > 1e-6) return {psi, det};
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        throw NumericalError("NoAssignmentFound", "no balanced rigid assignment for the given values");
    };

    const double c2 = 2.0 * std::atan(std::sqrt(5.0 / 7.0));
    auto [psi1, det1] = search({2.0 * kPi / 3.0, kPi / 3.0, kPi / 3.0, kPi});
    auto [psi2, det2] = search({c2, c2, c2, kPi});
    result.vertex_phases_first = psi1;
    result.det_first = det1;
    result.vertex_phases_second = psi2;
    result.det_second = det2;
    result.det_trivial = detail33::vertex_phase_jacobian(g, std::vector<double>(9, 0.0)).determinant();
    return result;
}

}  // namespace saddlenet
