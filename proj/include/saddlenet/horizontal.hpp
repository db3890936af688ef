#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "saddlenet/chain_spaces.hpp"
#include "saddlenet/torus_rep.hpp"

namespace saddlenet {

inline double dot2(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

/// Horizontal force of a cut: the sum of unit edge vectors leaving the side.
inline Complex F_hor(const RotationGraph& g, const EdgeField<Complex>& x, const Cut& b) {
    Complex s = 0;
    for (int h : b.half_edges) {
        double l = std::abs(x[h]);
        if (!(l > 0)) throw ValidationError("ZeroLengthEdge", "half-edge '" + g.id(h) + "'");
        s += x[h] / l;
    }
    return s;
}

/// Forces on every cut of a basis (or any list of cuts).
inline std::vector<Complex> F_hor(const RotationGraph& g, const EdgeField<Complex>& x,
                                  const std::vector<Cut>& cuts) {
    std::vector<Complex> out;
    out.reserve(cuts.size());
    for (const Cut& b : cuts) out.push_back(F_hor(g, x, b));
    return out;
}

/// Rows of the force differential for the given cuts, on the real packing
/// [Re x_e, Im x_e] of antisymmetric complex fields.  Per half-edge the
/// 2x2 block is the projector (I - u u^T)/|x| away from the edge direction.
inline Eigen::MatrixXd DF_hor_matrix(const RotationGraph& g, const EdgeField<Complex>& x,
                                     const std::vector<Cut>& cuts) {
    const int ne = g.num_edges();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * static_cast<int>(cuts.size()), 2 * ne);
    for (int i = 0; i < static_cast<int>(cuts.size()); ++i) {
        for (int h : cuts[i].half_edges) {
            int e = g.edge_of(h);
            double sgn = (h == g.edge_rep(e)) ? 1.0 : -1.0;
            Complex xe = x[g.edge_rep(e)];
            double l = std::abs(xe);
            Complex u = xe / l;
            double uu[2] = {u.real(), u.imag()};
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    double p = ((r == c ? 1.0 : 0.0) - uu[r] * uu[c]) / l;
                    M(2 * i + r, 2 * e + c) += sgn * p;
                }
        }
    }
    return M;
}

/// Apply the differential directly to a variation field chi.
inline std::vector<Complex> DF_hor_apply(const RotationGraph& g, const EdgeField<Complex>& x,
                                         const std::vector<Cut>& cuts, const EdgeField<Complex>& chi) {
    std::vector<Complex> out;
    out.reserve(cuts.size());
    for (const Cut& b : cuts) {
        Complex s = 0;
        for (int h : b.half_edges) {
            Complex xh = x[h], ch = chi[h];
            double l = std::abs(xh);
            s += (dot2(xh, xh) * ch - dot2(xh, ch) * xh) / (l * l * l);
        }
        out.push_back(s);
    }
    return out;
}

/// curl rows on the real packing (each chain contributes two real rows).
inline Eigen::MatrixXd period_matrix(const RotationGraph& g, const std::vector<Chain>& chains) {
    const int ne = g.num_edges();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * static_cast<int>(chains.size()), 2 * ne);
    for (int i = 0; i < static_cast<int>(chains.size()); ++i)
        for (int e = 0; e < ne; ++e) {
            M(2 * i, 2 * e) = chains[i][e];
            M(2 * i + 1, 2 * e + 1) = chains[i][e];
        }
    return M;
}

/// The square matrix of (DF_hor, P_hor) on A^2: rows are the force
/// differentials on the vertex-cut basis followed by the periods on the
/// canonical cycle basis.
inline Eigen::MatrixXd rigidity_matrix(const RotationGraph& g, const TorusRep& rep) {
    EdgeData d = edge_data(g, rep);
    auto cuts = vertex_cut_basis(g);
    CycleBasis cb = cycle_basis(g, rep.offset);
    Eigen::MatrixXd DF = DF_hor_matrix(g, d.x, cuts);
    Eigen::MatrixXd P = period_matrix(g, cb.star());
    Eigen::MatrixXd M(DF.rows() + P.rows(), 2 * g.num_edges());
    M << DF, P;
    return M;
}

struct HorizontalReport {
    std::vector<std::pair<Cut, Complex>> residuals;  // per cut
    double max_residual = 0.0;
    bool balanced = false;
    Eigen::MatrixXd jacobian;  // (DF_hor, P_hor) on A^2
    double smallest_singular_value = 0.0;
    double largest_singular_value = 0.0;
    bool rigid = false;
};

inline constexpr double kRigidityCutoff = 1e-8;  // relative singular-value cutoff

/// Balance and rigidity in one report.  Residuals are evaluated on every
/// cut when |V| <= 16, else on the vertex-cut basis.
inline HorizontalReport horizontal_report(const RotationGraph& g, const TorusRep& rep,
                                          double balance_tol = 1e-10) {
    HorizontalReport r;
    EdgeData d = edge_data(g, rep);
    std::vector<Cut> cuts = g.num_vertices() <= 16 ? all_cuts(g, &d.edge_length)
                                                   : vertex_cut_basis(g, &d.edge_length);
    for (const Cut& b : cuts) {
        Complex f = F_hor(g, d.x, b);
        r.residuals.push_back({b, f});
        r.max_residual = std::max(r.max_residual, std::abs(f));
    }
    r.balanced = r.max_residual <= balance_tol;
    r.jacobian = rigidity_matrix(g, rep);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.jacobian);
    const auto& sv = svd.singularValues();
    r.largest_singular_value = sv[0];
    r.smallest_singular_value = sv[sv.size() - 1];
    r.rigid = r.smallest_singular_value > kRigidityCutoff * r.largest_singular_value;
    return r;
}

// ---------------------------------------------------------------------------
// the length functional (the variational side of balance)

struct LengthFunctional {
    double value = 0.0;              // total length
    EdgeField<Complex> gradient;     // DL . chi = sum_E <u_e, chi_e>
    Eigen::MatrixXd hessian;         // D2L on the real packing
};

inline LengthFunctional length_functional(const RotationGraph& g, const EdgeField<Complex>& x) {
    LengthFunctional L;
    std::vector<Complex> grad(g.num_edges());
    L.hessian = Eigen::MatrixXd::Zero(2 * g.num_edges(), 2 * g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        Complex xe = x[g.edge_rep(e)];
        double l = std::abs(xe);
        Complex u = xe / l;
        L.value += l;
        grad[e] = u;
        double uu[2] = {u.real(), u.imag()};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                L.hessian(2 * e + r, 2 * e + c) = ((r == c ? 1.0 : 0.0) - uu[r] * uu[c]) / l;
    }
    L.gradient = EdgeField<Complex>::antisym(g, grad);
    return L;
}

inline double DL_apply(const RotationGraph& g, const LengthFunctional& L, const EdgeField<Complex>& chi) {
    double s = 0;
    for (int e = 0; e < g.num_edges(); ++e) s += dot2(L.gradient[g.edge_rep(e)], chi[g.edge_rep(e)]);
    return s;
}

inline double D2L_apply(const RotationGraph& g, const EdgeField<Complex>& x, const EdgeField<Complex>& chi) {
    double s = 0;
    for (int e = 0; e < g.num_edges(); ++e) {
        Complex xe = x[g.edge_rep(e)], ce = chi[g.edge_rep(e)];
        double l = std::abs(xe);
        s += (std::norm(xe) * std::norm(ce) - dot2(xe, ce) * dot2(xe, ce)) / (l * l * l);
    }
    return s;
}

// ---------------------------------------------------------------------------
// balance solver

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 100;
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Newton for F_hor = 0 on the affine slice P_hor(x) = P_hor(x_initial).
/// The unknown is the edge-vector field x; positions are rebuilt afterwards
/// by integrating x along a spanning tree from the pinned first vertex.
inline TorusRep solve_balance(const RotationGraph& g, const TorusRep& initial,
                              SolveOptions opt = {}, SolveStats* stats = nullptr) {
    EdgeData d0 = edge_data(g, initial);
    auto cuts = vertex_cut_basis(g);
    CycleBasis cb = cycle_basis(g, initial.offset);
    std::vector<Chain> cycles = cb.star();

    // period targets from the initial representation
    std::vector<Complex> ptarget;
    for (const Chain& c : cycles) ptarget.push_back(chain_period(g, c, d0.x));

    const int ne = g.num_edges();
    Eigen::VectorXd X = pack_complex(g, d0.x);
    Eigen::MatrixXd P = period_matrix(g, cycles);

    auto residual = [&](const Eigen::VectorXd& Xv) {
        EdgeField<Complex> x = unpack_complex(g, Xv);
        Eigen::VectorXd r(2 * ne);
        auto forces = F_hor(g, x, cuts);
        for (int i = 0; i < static_cast<int>(cuts.size()); ++i) {
            r[2 * i] = forces[i].real();
            r[2 * i + 1] = forces[i].imag();
        }
        int base = 2 * static_cast<int>(cuts.size());
        for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
            Complex p = chain_period(g, cycles[i], x) - ptarget[i];
            r[base + 2 * i] = p.real();
            r[base + 2 * i + 1] = p.imag();
        }
        return r;
    };

    int it = 0;
    Eigen::VectorXd r = residual(X);
    for (; it < opt.max_iter; ++it) {
        double nr = r.lpNorm<Eigen::Infinity>();
        if (nr < opt.tol) break;
        EdgeField<Complex> x = unpack_complex(g, X);
        Eigen::MatrixXd J(2 * ne, 2 * ne);
        J << DF_hor_matrix(g, x, cuts), P;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) throw NumericalError("SingularJacobian", "balance Jacobian is singular");
        Eigen::VectorXd step = lu.solve(-r);
        // backtracking on the residual norm
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
        if (!accepted) throw NumericalError("NewtonDiverged", "line search stalled in solve_balance");
    }
    if (r.lpNorm<Eigen::Infinity>() >= opt.tol)
        throw NumericalError("NewtonDiverged", "no convergence within the iteration cap");
    if (stats) {
        stats->iterations = it;
        stats->residual = r.lpNorm<Eigen::Infinity>();
    }

    // rebuild positions: pin vertex 0, integrate x over the spanning tree
    EdgeField<Complex> x = unpack_complex(g, X);
    auto in_half = detail::spanning_tree(g);
    TorusRep out = initial;
    std::vector<char> done(g.num_vertices(), 0);
    done[0] = 1;
    out.position[0] = initial.position[0];
    // process vertices in BFS order (parents first)
    std::vector<int> order = {0};
    for (size_t qi = 0; qi < order.size(); ++qi) {
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (done[v] || in_half[v] == -1) continue;
            if (g.vertex_of(in_half[v]) != order[qi]) continue;
            int h = in_half[v];
            out.position[v] = out.position[g.vertex_of(h)] + x[h] - out.lattice(out.offset[h]);
            done[v] = 1;
            order.push_back(v);
        }
    }
    return out;
}

}  // namespace saddlenet
