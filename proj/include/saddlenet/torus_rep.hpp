#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "saddlenet/chain_spaces.hpp"
#include "saddlenet/edge_field.hpp"
#include "saddlenet/rotation_graph.hpp"

namespace saddlenet {

/// Straight-segment representation of a rotation graph on the flat torus
/// C / <T1, T2>.  Every half-edge carries an explicit lattice offset: the
/// edge vector is
///     x_h = pos(v(-h)) + n1(h) T1 + n2(h) T2 - pos(v(h)),
/// so an edge is a homotopy class, not just a pair of endpoints.
struct TorusRep {
    Complex T1, T2;
    std::vector<Complex> position;               // per vertex
    std::vector<Eigen::Vector2i> offset;         // per half-edge, antisymmetric

    static TorusRep make(const RotationGraph& g, Complex T1, Complex T2,
                         std::vector<Complex> position, std::vector<Eigen::Vector2i> offset) {
        if (!(std::imag(T2 / T1) > 0))
            throw ValidationError("DegenerateLattice", "Im(T2/T1) must be positive");
        if (static_cast<int>(position.size()) != g.num_vertices())
            throw ValidationError("RepSize", "one position per vertex required");
        if (static_cast<int>(offset.size()) != g.num_half_edges())
            throw ValidationError("RepSize", "one lattice offset per half-edge required");
        for (int h = 0; h < g.num_half_edges(); ++h)
            if (offset[h] + offset[g.opp(h)] != Eigen::Vector2i::Zero())
                throw ValidationError("OffsetsNotAntisymmetric", "offsets at '" + g.id(h) + "'");
        return TorusRep{T1, T2, std::move(position), std::move(offset)};
    }

    Complex lattice(const Eigen::Vector2i& n) const {
        return static_cast<double>(n[0]) * T1 + static_cast<double>(n[1]) * T2;
    }
};

struct EdgeData {
    EdgeField<Complex> x;      // antisymmetric edge vectors
    EdgeField<double> length;  // symmetric
    EdgeField<Complex> unit;   // antisymmetric, x/|x|
    std::vector<double> edge_length;  // per edge, convenience
};

/// Edge vectors, lengths and unit directions.  Computed once per edge and
/// mirrored so that x_{-h} = -x_h holds exactly.
inline EdgeData edge_data(const RotationGraph& g, const TorusRep& rep) {
    std::vector<Complex> xs(g.num_edges()), us(g.num_edges());
    std::vector<double> ls(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        Complex x = rep.position[g.vertex_of(g.opp(h))] + rep.lattice(rep.offset[h]) -
                    rep.position[g.vertex_of(h)];
        double l = std::abs(x);
        if (!(l > 0))
            throw ValidationError("ZeroLengthEdge", "edge through half-edge '" + g.id(h) + "'");
        xs[e] = x;
        ls[e] = l;
        us[e] = x / l;
    }
    EdgeData d{EdgeField<Complex>::antisym(g, xs), EdgeField<double>::sym(g, ls),
               EdgeField<Complex>::antisym(g, us), ls};
    return d;
}

// ---------------------------------------------------------------------------
// the discrete operators on the canonical bases

/// grad, div, curl and mdiv assembled on the canonical bases, with the
/// dimension identities verified on construction: rank(grad) = |V|-1, the
/// div rows are independent with the cycle space as kernel, and cuts pair
/// to zero against cycles.
struct Operators {
    Eigen::MatrixXd grad;  // |E| x |V|
    Eigen::MatrixXd div;   // vertex-cut basis rows
    Eigen::MatrixXd curl;  // canonical cycle basis rows
    Eigen::MatrixXd mdiv;  // mdiv cut-basis rows
    std::vector<Cut> cut_basis;
    std::vector<Cut> mdiv_basis;
    CycleBasis cycles;
};

inline Operators build_operators(const RotationGraph& g, const TorusRep& rep) {
    Operators op;
    EdgeData d = edge_data(g, rep);
    op.cut_basis = vertex_cut_basis(g, &d.edge_length);
    op.mdiv_basis = mdiv_cut_basis(g, d.edge_length);
    op.cycles = cycle_basis(g, rep.offset);  // DegenerateLattice propagates
    op.grad = grad_matrix(g);
    op.div = div_matrix(g, op.cut_basis);
    op.curl = curl_matrix(g, op.cycles.star());
    op.mdiv = mdiv_matrix(g, op.mdiv_basis);
    const int nv = g.num_vertices(), ne = g.num_edges();
    if (Eigen::FullPivLU<Eigen::MatrixXd>(op.grad).rank() != nv - 1)
        throw NumericalError("RankDeficient", "grad rank is not |V|-1");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(op.div);
    if (lu.rank() != nv - 1 || Eigen::FullPivLU<Eigen::MatrixXd>(op.curl).rank() != ne - nv + 1)
        throw NumericalError("RankDeficient", "cut/cycle basis dimensions are off");
    if ((op.div * op.curl.transpose()).lpNorm<Eigen::Infinity>() != 0.0)
        throw NumericalError("RankDeficient", "cut and cycle spaces fail to pair to zero");
    return op;
}

// ---------------------------------------------------------------------------
// geometric validity

struct ValidityIssue {
    std::string kind;  // which invariant failed
    std::string a, b;  // offending pair (half-edge or vertex ids)
};

struct ValidityReport {
    bool valid = true;
    std::vector<ValidityIssue> issues;
};

namespace detail {

inline double cross2(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// Open-segment intersection test (shared endpoints do not count), with a
/// small tolerance relative to the segment lengths.
inline bool segments_cross(Complex a0, Complex a1, Complex b0, Complex b1) {
    const double scale = std::max({std::abs(a1 - a0), std::abs(b1 - b0), 1e-12});
    const double eps = 1e-12 * scale * scale;
    Complex da = a1 - a0, db = b1 - b0;
    double d = cross2(da, db);
    if (std::abs(d) > eps) {
        double s = cross2(b0 - a0, db) / d;
        double t = cross2(b0 - a0, da) / d;
        const double tol = 1e-9;
        return s > tol && s < 1 - tol && t > tol && t < 1 - tol;
    }
    // parallel: overlap only if collinear
    if (std::abs(cross2(b0 - a0, da)) > eps) return false;
    double la = std::norm(da);
    double t0 = (std::conj(da) * (b0 - a0)).real() / la;
    double t1 = (std::conj(da) * (b1 - a0)).real() / la;
    double lo = std::min(t0, t1), hi = std::max(t0, t1);
    const double tol = 1e-9;
    return hi > tol && lo < 1 - tol;  // overlapping interior interval
}

}  // namespace detail

/// Checks that the representation is an honest drawing: distinct vertices,
/// parallel edges on the same segment (up to sign), non-parallel edges with
/// disjoint interiors against the 3x3 block of lattice translates, and
/// weakly monotone counterclockwise directions around each vertex.
inline ValidityReport geometric_validity(const RotationGraph& g, const TorusRep& rep) {
    ValidityReport rpt;
    auto fail = [&](std::string kind, std::string a, std::string b) {
        rpt.valid = false;
        rpt.issues.push_back({std::move(kind), std::move(a), std::move(b)});
    };
    EdgeData d = edge_data(g, rep);

    // vertices distinct on the torus
    Eigen::Matrix2d B;
    B << rep.T1.real(), rep.T2.real(), rep.T1.imag(), rep.T2.imag();
    Eigen::Matrix2d Binv = B.inverse();
    for (int v = 0; v < g.num_vertices(); ++v)
        for (int w = v + 1; w < g.num_vertices(); ++w) {
            Complex diff = rep.position[v] - rep.position[w];
            Eigen::Vector2d c = Binv * Eigen::Vector2d(diff.real(), diff.imag());
            c -= Eigen::Vector2d(std::round(c[0]), std::round(c[1]));
            if ((B * c).norm() < 1e-9) fail("CoincidentVertices", std::to_string(v), std::to_string(w));
        }

    // parallel edges carry the same vector up to sign
    auto classes = g.parallel_classes();
    std::vector<int> class_of(g.num_edges());
    for (int c = 0; c < static_cast<int>(classes.size()); ++c)
        for (int e : classes[c]) class_of[e] = c;
    for (const auto& cls : classes)
        for (size_t i = 1; i < cls.size(); ++i) {
            Complex xa = d.x[g.edge_rep(cls[0])], xb = d.x[g.edge_rep(cls[i])];
            bool same_seg = std::min(std::abs(xa - xb), std::abs(xa + xb)) < 1e-9;
            // same segment also requires identical endpoints, which holds by
            // construction when the edges join the same vertices
            if (!same_seg) fail("ParallelEdgesDiffer", g.id(g.edge_rep(cls[0])), g.id(g.edge_rep(cls[i])));
        }

    // non-parallel edges: disjoint interiors on the torus
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        Complex a0 = rep.position[g.vertex_of(h)];
        Complex a1 = a0 + d.x[h];
        for (int f = e; f < g.num_edges(); ++f) {
            if (f != e && class_of[f] == class_of[e]) continue;
            int k = g.edge_rep(f);
            Complex b0 = rep.position[g.vertex_of(k)];
            Complex b1 = b0 + d.x[k];
            for (int n1 = -1; n1 <= 1; ++n1)
                for (int n2 = -1; n2 <= 1; ++n2) {
                    if (f == e && n1 == 0 && n2 == 0) continue;
                    Complex t = static_cast<double>(n1) * rep.T1 + static_cast<double>(n2) * rep.T2;
                    if (detail::segments_cross(a0, a1, b0 + t, b1 + t)) fail("EdgesCross", g.id(h), g.id(k));
                }
        }
    }

    // rotation matches the drawing: directions weakly counterclockwise
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& cyc = g.vertices()[v];
        double total = 0;
        for (size_t i = 0; i < cyc.size(); ++i) {
            Complex u0 = d.unit[cyc[i]], u1 = d.unit[cyc[(i + 1) % cyc.size()]];
            double delta = std::arg(u1 / u0);  // in (-pi, pi]
            if (delta < -1e-12) delta += kTwoPi;
            total += delta;
        }
        if (std::abs(total - kTwoPi) > 1e-9)
            fail("RotationNotMonotone", std::to_string(v), "");
    }
    return rpt;
}

// ---------------------------------------------------------------------------
// periods

/// Horizontal periods over the canonical cycle basis.  Face cycles must
/// close up to 1e-12 and the lattice cycles must hit T1, T2; otherwise a
/// PeriodMismatch is thrown.  (This holds automatically for edge vectors
/// derived from a representation; the check guards hand-edited inputs.)
struct HorizontalPeriods {
    std::vector<Complex> faces;  // all faces, in face order
    Complex p1, p2;
};

inline Complex chain_period(const RotationGraph& g, const Chain& c, const EdgeField<Complex>& x) {
    return chain_pairing(g, c, x);
}

inline HorizontalPeriods horizontal_periods(const RotationGraph& g, const TorusRep& rep,
                                            double tol = 1e-12) {
    EdgeData d = edge_data(g, rep);
    CycleBasis cb = cycle_basis(g, rep.offset);
    HorizontalPeriods hp;
    double scale = std::max({1.0, std::abs(rep.T1), std::abs(rep.T2)});
    for (int f = 0; f < g.num_faces(); ++f) {
        Complex p = chain_period(g, cb.face_chains[f], d.x);
        hp.faces.push_back(p);
        if (std::abs(p) > tol * scale)
            throw ValidationError("PeriodMismatch", "face " + std::to_string(f) + " does not close");
    }
    hp.p1 = chain_period(g, cb.c1, d.x);
    hp.p2 = chain_period(g, cb.c2, d.x);
    if (std::abs(hp.p1 - rep.T1) > tol * scale || std::abs(hp.p2 - rep.T2) > tol * scale)
        throw ValidationError("PeriodMismatch", "lattice cycles do not reproduce T1, T2");
    return hp;
}

}  // namespace saddlenet
