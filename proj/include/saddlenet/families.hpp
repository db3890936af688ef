#pragma once

#include <string>
#include <vector>

#include "saddlenet/rotation_graph.hpp"
#include "saddlenet/torus_rep.hpp"

namespace saddlenet {

struct GraphRep {
    RotationGraph graph;
    TorusRep rep;
};

struct EdgeSpec {
    std::string id;  // half-edge id; the opposite gets "-" + id
    int u = 0, v = 0;
    Eigen::Vector2i offset = Eigen::Vector2i::Zero();
};

/// Build a graph from segments on the torus.  The rotation at each vertex is
/// derived from the drawing: half-edges sorted counterclockwise by direction,
/// each cycle starting at the half-edge that comes first in input order.
/// Directions around a vertex must be pairwise distinct (parallel-edge graphs
/// come from doubling(), not from this builder).
inline GraphRep build_geometric(Complex T1, Complex T2, std::vector<Complex> positions,
                                const std::vector<EdgeSpec>& edges, bool relax_degrees = false) {
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> inv;
    std::vector<Eigen::Vector2i> offsets;  // by half-edge input order
    struct HalfInfo {
        std::string id;
        int at;
        double angle;
        int input_pos;
    };
    std::vector<std::vector<HalfInfo>> at_vertex(positions.size());
    int pos_counter = 0;
    for (const EdgeSpec& es : edges) {
        Complex x = positions[es.v] + static_cast<double>(es.offset[0]) * T1 +
                    static_cast<double>(es.offset[1]) * T2 - positions[es.u];
        if (!(std::abs(x) > 0)) throw ValidationError("ZeroLengthEdge", "edge '" + es.id + "'");
        ids.push_back(es.id);
        ids.push_back("-" + es.id);
        inv.push_back({es.id, "-" + es.id});
        offsets.push_back(es.offset);
        offsets.push_back(-es.offset);
        at_vertex[es.u].push_back({es.id, es.u, std::arg(x), pos_counter++});
        at_vertex[es.v].push_back({"-" + es.id, es.v, std::arg(-x), pos_counter++});
    }
    std::vector<std::vector<std::string>> rots;
    for (auto& hs : at_vertex) {
        if (hs.empty()) throw ValidationError("IsolatedVertex", "vertex without half-edges");
        int first = 0;
        for (int i = 1; i < static_cast<int>(hs.size()); ++i)
            if (hs[i].input_pos < hs[first].input_pos) first = i;
        double a0 = hs[first].angle;
        std::sort(hs.begin(), hs.end(), [&](const HalfInfo& a, const HalfInfo& b) {
            auto key = [&](double ang) {
                double d = ang - a0;
                while (d < -1e-15) d += kTwoPi;
                while (d >= kTwoPi - 1e-15) d -= kTwoPi;
                return d;
            };
            double ka = key(a.angle), kb = key(b.angle);
            if (std::abs(ka - kb) > 1e-15) return ka < kb;
            return a.input_pos < b.input_pos;  // deterministic on ties
        });
        std::vector<std::string> cyc;
        for (const auto& h : hs) cyc.push_back(h.id);
        rots.push_back(std::move(cyc));
    }
    RotationGraph g = relax_degrees ? RotationGraph::build_relaxed(ids, inv, rots)
                                    : RotationGraph::build(ids, inv, rots);
    // offsets were recorded in half-edge input order, which matches id order
    std::vector<Eigen::Vector2i> off(g.num_half_edges());
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) off[g.require(ids[i])] = offsets[i];
    TorusRep rep = TorusRep::make(g, T1, T2, std::move(positions), std::move(off));
    return {std::move(g), std::move(rep)};
}

/// Two vertices joined by four simple edges; half-edges at the first vertex
/// are named "1".."4" in counterclockwise order.  With vertex 1 at the
/// 2-division point (T1+T2)/2 this is balanced for every lattice.
inline GraphRep meeks_graph(Complex T1, Complex T2, Complex second_vertex_shift = 0.0) {
    std::vector<Complex> pos = {0.0, (T1 + T2) / 2.0 + second_vertex_shift};
    std::vector<EdgeSpec> edges = {
        {"1", 0, 1, {-1, -1}},
        {"2", 0, 1, {0, -1}},
        {"3", 0, 1, {0, 0}},
        {"4", 0, 1, {-1, 0}},
    };
    return build_geometric(T1, T2, pos, edges);
}

/// One vertex with three pairwise non-homologous loops (the genus-3 "aH"
/// diagram graph).
inline GraphRep ah_graph(Complex T1, Complex T2) {
    std::vector<Complex> pos = {0.0};
    std::vector<EdgeSpec> edges = {
        {"a", 0, 0, {1, 0}},
        {"b", 0, 0, {0, 1}},
        {"c", 0, 0, {-1, -1}},
    };
    return build_geometric(T1, T2, pos, edges);
}

/// One vertex with two loops along the lattice directions.
inline GraphRep square_lattice_graph(Complex T1, Complex T2) {
    std::vector<Complex> pos = {0.0};
    std::vector<EdgeSpec> edges = {
        {"a", 0, 0, {1, 0}},
        {"b", 0, 0, {0, 1}},
    };
    return build_geometric(T1, T2, pos, edges);
}

/// k x k block of the triangular lattice on the torus spanned by
/// T1 = k*t, T2 = k*t*exp(i*pi/3) (t a scale factor).  All faces are
/// triangles; all edges have length |t|.
inline GraphRep triangular_torus_graph(int k, Complex t = 1.0) {
    Complex w = std::polar(1.0, kPi / 3.0);
    Complex T1 = static_cast<double>(k) * t, T2 = static_cast<double>(k) * t * w;
    std::vector<Complex> pos;
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) pos.push_back(t * (static_cast<double>(i) + static_cast<double>(j) * w));
    auto vid = [&](int i, int j) { return ((j % k + k) % k) * k + ((i % k + k) % k); };
    std::vector<EdgeSpec> edges;
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            auto name = [&](const char* d) {
                return std::string(d) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            };
            edges.push_back({name("E"), vid(i, j), vid(i + 1, j),
                             {i + 1 == k ? 1 : 0, 0}});
            edges.push_back({name("N"), vid(i, j), vid(i, j + 1),
                             {0, j + 1 == k ? 1 : 0}});
            edges.push_back({name("W"), vid(i, j), vid(i - 1, j + 1),
                             {i == 0 ? -1 : 0, j + 1 == k ? 1 : 0}});
        }
    return build_geometric(T1, T2, pos, edges);
}

/// Four vertices in two columns; two short vertical edges inside each column
/// and four longer horizontal edges across.  The cut separating the columns
/// consists of the four horizontal edges.
inline GraphRep necessary_cuts_graph(double column_gap = 1.0, double vertical_gap = 0.6) {
    Complex T1 = 2.0 * column_gap, T2 = Complex(0, 2.0 * vertical_gap);
    std::vector<Complex> pos = {Complex(0, 0), Complex(0, vertical_gap), Complex(column_gap, 0),
                                Complex(column_gap, vertical_gap)};
    std::vector<EdgeSpec> edges = {
        {"u0", 0, 1, {0, 0}}, {"d0", 0, 1, {0, -1}},   // column A verticals
        {"u1", 2, 3, {0, 0}}, {"d1", 2, 3, {0, -1}},   // column B verticals
        {"r0", 0, 2, {0, 0}}, {"l0", 0, 2, {-1, 0}},   // row 0 horizontals
        {"r1", 1, 3, {0, 0}}, {"l1", 1, 3, {-1, 0}},   // row 1 horizontals
    };
    return build_geometric(T1, T2, pos, edges);
}

/// Union of three lines on the torus (the H'-T diagram): balanced for every
/// admissible parameter but never rigid, since each line slides freely.
inline GraphRep three_lines_graph(Complex T1, Complex T2, double c = 0.5) {
    std::vector<Complex> pos = {0.0, c * T1, c * T2};
    std::vector<EdgeSpec> edges = {
        {"a1", 0, 1, {0, 0}}, {"a2", 1, 0, {1, 0}},    // line along T1
        {"b1", 0, 2, {0, 0}}, {"b2", 2, 0, {0, 1}},    // line along T2
        {"c1", 1, 2, {0, 0}}, {"c2", 2, 1, {-1, 1}},   // line along T2-T1
    };
    return build_geometric(T1, T2, pos, edges);
}

/// Two loops drawn as the diagonals of the square torus: a drawing whose
/// segments cross in their interiors (geometric_validity must fail).
inline GraphRep crossing_diagonals_graph(Complex T1, Complex T2) {
    std::vector<Complex> pos = {0.0};
    std::vector<EdgeSpec> edges = {
        {"a", 0, 0, {1, 1}},
        {"b", 0, 0, {-1, 1}},
    };
    return build_geometric(T1, T2, pos, edges);
}

/// Hexagonal-tiling quotient: two degree-3 vertices (built relaxed; use
/// double_rep to obtain a valid configuration graph).
inline GraphRep honeycomb_graph(Complex T1, Complex T2, Complex u, Complex w) {
    std::vector<Complex> pos = {u, w};
    std::vector<EdgeSpec> edges = {
        {"a", 0, 1, {0, 0}},
        {"b", 0, 1, {-1, 0}},
        {"c", 0, 1, {0, -1}},
    };
    return build_geometric(T1, T2, pos, edges, /*relax_degrees=*/true);
}

/// Doubling of graph and representation together: each half-edge h becomes
/// h+ and h- carrying the same lattice offset.
inline GraphRep double_rep(const GraphRep& gr) {
    RotationGraph dg = gr.graph.doubling();
    std::vector<Eigen::Vector2i> off(dg.num_half_edges());
    for (int h = 0; h < dg.num_half_edges(); ++h) {
        std::string base = dg.id(h).substr(0, dg.id(h).size() - 1);
        off[h] = gr.rep.offset[gr.graph.require(base)];
    }
    TorusRep rep = TorusRep::make(dg, gr.rep.T1, gr.rep.T2, gr.rep.position, std::move(off));
    return {std::move(dg), std::move(rep)};
}

}  // namespace saddlenet
