#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "saddlenet/edge_field.hpp"
#include "saddlenet/rotation_graph.hpp"

namespace saddlenet {

/// A cut determined by a vertex subset (stored as a bitmask over vertex
/// indices).  `half_edges` lists h with v(h) inside and v(-h) outside.
/// When lengths are supplied, `m` is the subset of shortest half-edges
/// (relative tie tolerance 1e-9) and `min_length` their common length.
struct Cut {
    std::uint32_t side_mask = 0;
    std::vector<int> half_edges;
    std::vector<int> m;
    double min_length = 0.0;
};

inline constexpr double kTieTol = 1e-9;

inline Cut make_cut(const RotationGraph& g, std::uint32_t side_mask,
                    const std::vector<double>* edge_length = nullptr) {
    Cut b;
    b.side_mask = side_mask;
    for (int h = 0; h < g.num_half_edges(); ++h) {
        bool in = (side_mask >> g.vertex_of(h)) & 1u;
        bool out = (side_mask >> g.vertex_of(g.opp(h))) & 1u;
        if (in && !out) b.half_edges.push_back(h);
    }
    if (edge_length) {
        double lo = std::numeric_limits<double>::infinity();
        for (int h : b.half_edges) lo = std::min(lo, (*edge_length)[g.edge_of(h)]);
        b.min_length = lo;
        for (int h : b.half_edges)
            if ((*edge_length)[g.edge_of(h)] <= lo * (1.0 + kTieTol)) b.m.push_back(h);
    }
    return b;
}

inline Cut vertex_cut(const RotationGraph& g, int v, const std::vector<double>* edge_length = nullptr) {
    return make_cut(g, 1u << v, edge_length);
}

/// Vertex cuts of all but the last vertex: the canonical cut basis.
inline std::vector<Cut> vertex_cut_basis(const RotationGraph& g,
                                         const std::vector<double>* edge_length = nullptr) {
    std::vector<Cut> basis;
    for (int v = 0; v + 1 < g.num_vertices(); ++v) basis.push_back(vertex_cut(g, v, edge_length));
    return basis;
}

/// Every cut once (the side containing vertex 0 is the canonical side).
/// 2^(|V|-1) - 1 cuts; |V| <= 16 enforced.
inline std::vector<Cut> all_cuts(const RotationGraph& g, const std::vector<double>* edge_length = nullptr) {
    const int nv = g.num_vertices();
    if (nv > 16) throw ValidationError("TooManyVertices", "cut enumeration is capped at 16 vertices");
    std::vector<Cut> cuts;
    const std::uint32_t all = (nv >= 32 ? ~0u : (1u << nv) - 1u);
    for (std::uint32_t rest = 0; rest < (1u << (nv - 1)); ++rest) {
        std::uint32_t side = (rest << 1) | 1u;
        if (side == all) continue;
        cuts.push_back(make_cut(g, side, edge_length));
    }
    return cuts;
}

// ---------------------------------------------------------------------------
// chains and the canonical bases

/// Chain coefficients of an antisymmetric integer 1-chain, indexed by edge
/// (coefficient of the representative half-edge).
using Chain = Eigen::VectorXi;

inline Chain cut_chain(const RotationGraph& g, const Cut& b) {
    Chain a = Chain::Zero(g.num_edges());
    for (int h : b.half_edges) {
        int e = g.edge_of(h);
        a[e] += (h == g.edge_rep(e)) ? 1 : -1;
    }
    return a;
}

inline Chain face_chain(const RotationGraph& g, int f) {
    Chain a = Chain::Zero(g.num_edges());
    for (int h : g.faces()[f]) {
        int e = g.edge_of(h);
        a[e] += (h == g.edge_rep(e)) ? 1 : -1;
    }
    return a;
}

/// Pairing (f, a_c)/2 = sum over the chain of f_h, for antisymmetric f.
template <class T>
T chain_pairing(const RotationGraph& g, const Chain& c, const EdgeField<T>& f) {
    T s{};
    for (int e = 0; e < g.num_edges(); ++e)
        if (c[e] != 0) s += static_cast<double>(c[e]) * f[g.edge_rep(e)];
    return s;
}

template <class T>
T cut_sum(const RotationGraph&, const Cut& b, const EdgeField<T>& f) {
    T s{};
    for (int h : b.half_edges) s += f[h];
    return s;
}

template <class T>
T mdiv_sum(const RotationGraph&, const Cut& b, const EdgeField<T>& f) {
    T s{};
    for (int h : b.m) s += f[h];
    return s;
}

/// The canonical cycle basis C* = (all faces but the last) + c1 + c2, where
/// c1, c2 are integer combinations of fundamental cycles homologous to the
/// lattice directions [T1] and [T2].
struct CycleBasis {
    std::vector<Chain> face_chains;  // all faces, in face order
    int dropped_face = -1;           // last face (not part of the basis)
    Chain c1, c2;
    std::vector<Chain> star() const {
        std::vector<Chain> out;
        for (int f = 0; f < static_cast<int>(face_chains.size()); ++f)
            if (f != dropped_face) out.push_back(face_chains[f]);
        out.push_back(c1);
        out.push_back(c2);
        return out;
    }
};

namespace detail {

/// Spanning tree via BFS from vertex 0 (edges scanned in input order).
/// Returns for each vertex the half-edge of the tree pointing from its
/// parent to it (-1 for the root).
inline std::vector<int> spanning_tree(const RotationGraph& g) {
    std::vector<int> in_half(g.num_vertices(), -1);
    std::vector<char> seen(g.num_vertices(), 0);
    seen[0] = 1;
    std::vector<int> frontier = {0};
    while (!frontier.empty()) {
        std::vector<int> nxt;
        for (int v : frontier) {
            for (int h : g.vertices()[v]) {
                int w = g.vertex_of(g.opp(h));
                if (!seen[w]) {
                    seen[w] = 1;
                    in_half[w] = h;
                    nxt.push_back(w);
                }
            }
        }
        frontier = std::move(nxt);
    }
    return in_half;
}

/// Chain of the tree path from vertex a to vertex b.
inline Chain tree_path_chain(const RotationGraph& g, const std::vector<int>& in_half, int a, int b) {
    auto depth_path = [&](int v) {
        std::vector<int> path;  // half-edges from root toward v
        while (in_half[v] != -1) {
            path.push_back(in_half[v]);
            v = g.vertex_of(in_half[v]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    std::vector<int> pa = depth_path(a), pb = depth_path(b);
    size_t k = 0;
    while (k < pa.size() && k < pb.size() && pa[k] == pb[k]) ++k;
    Chain c = Chain::Zero(g.num_edges());
    auto add = [&](int h, int s) {
        int e = g.edge_of(h);
        c[e] += (h == g.edge_rep(e)) ? s : -s;
    };
    for (size_t i = k; i < pa.size(); ++i) add(pa[i], -1);  // a up to the meeting vertex
    for (size_t i = k; i < pb.size(); ++i) add(pb[i], +1);  // down to b
    return c;
}

}  // namespace detail

/// Homology class of a chain from the per-half-edge lattice offsets.
inline Eigen::Vector2i chain_class(const RotationGraph& g, const Chain& c,
                                   const std::vector<Eigen::Vector2i>& offset) {
    Eigen::Vector2i k = Eigen::Vector2i::Zero();
    for (int e = 0; e < g.num_edges(); ++e) k += c[e] * offset[g.edge_rep(e)];
    return k;
}

inline CycleBasis cycle_basis(const RotationGraph& g, const std::vector<Eigen::Vector2i>& offset) {
    CycleBasis cb;
    for (int f = 0; f < g.num_faces(); ++f) cb.face_chains.push_back(face_chain(g, f));
    cb.dropped_face = g.num_faces() - 1;

    // fundamental cycles of the BFS spanning tree
    auto in_half = detail::spanning_tree(g);
    std::vector<char> tree_edge(g.num_edges(), 0);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (in_half[v] != -1) tree_edge[g.edge_of(in_half[v])] = 1;
    std::vector<Chain> fund;
    std::vector<Eigen::Vector2i> cls;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (tree_edge[e]) continue;
        int h = g.edge_rep(e);
        Chain c = detail::tree_path_chain(g, in_half, g.vertex_of(g.opp(h)), g.vertex_of(h));
        c[e] += 1;
        fund.push_back(c);
        cls.push_back(chain_class(g, c, offset));
    }

    // integer combinations with classes (1,0) and (0,1): column-reduce the
    // 2 x m class matrix by unimodular operations, tracking them.
    const int m = static_cast<int>(fund.size());
    Eigen::MatrixXi M(2, m);
    for (int j = 0; j < m; ++j) M.col(j) = cls[j];
    Eigen::MatrixXi T = Eigen::MatrixXi::Identity(m, m);
    auto colswap = [&](int i, int j) { M.col(i).swap(M.col(j)); T.col(i).swap(T.col(j)); };
    auto coladd = [&](int dst, int src, int k) { M.col(dst) += k * M.col(src); T.col(dst) += k * T.col(src); };
    int rank = 0;
    for (int row = 0; row < 2 && rank < m; ++row) {
        // gcd sweep on this row over columns rank..m-1
        while (true) {
            int piv = -1;
            for (int j = rank; j < m; ++j)
                if (M(row, j) != 0 && (piv == -1 || std::abs(M(row, j)) < std::abs(M(row, piv)))) piv = j;
            if (piv == -1) break;
            colswap(rank, piv);
            bool clean = true;
            for (int j = rank + 1; j < m; ++j) {
                if (M(row, j) != 0) {
                    coladd(j, rank, -(M(row, j) / M(row, rank)));
                    if (M(row, j) != 0) clean = false;
                }
            }
            if (clean) break;
        }
        if (rank < m && M(row, rank) != 0) ++rank;
    }
    // now M is lower-triangular on the first `rank` columns
    bool ok = rank == 2 && std::abs(M(0, 0) * M(1, 1)) == 1;
    if (!ok) throw ValidationError("DegenerateLattice", "cycle classes do not span the lattice unimodularly");
    int d0 = M(0, 0), d1 = M(1, 1), s = M(1, 0);
    // columns u = (d0, s), v = (0, d1) with d0, d1 = +-1
    // c1 = d0*u - d0*d1*s*v ; c2 = d1*v
    Eigen::VectorXi a1 = d0 * T.col(0) - d0 * d1 * s * T.col(1);
    Eigen::VectorXi a2 = d1 * T.col(1);
    cb.c1 = Chain::Zero(g.num_edges());
    cb.c2 = Chain::Zero(g.num_edges());
    for (int j = 0; j < m; ++j) {
        if (a1[j] != 0) cb.c1 += a1[j] * fund[j];
        if (a2[j] != 0) cb.c2 += a2[j] * fund[j];
    }
    return cb;
}

// ---------------------------------------------------------------------------
// discrete differential operators as matrices on the edge coordinates

/// grad: functions on vertices -> antisymmetric fields,
/// (grad f)_h = f_{v(-h)} - f_{v(h)}.  |E| x |V| matrix.
inline Eigen::MatrixXd grad_matrix(const RotationGraph& g) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(g.num_edges(), g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e) {
        int h = g.edge_rep(e);
        G(e, g.vertex_of(g.opp(h))) += 1.0;
        G(e, g.vertex_of(h)) -= 1.0;
    }
    return G;
}

template <class T>
EdgeField<T> grad_field(const RotationGraph& g, const std::vector<T>& f) {
    std::vector<T> v(g.num_half_edges());
    for (int h = 0; h < g.num_half_edges(); ++h) v[h] = f[g.vertex_of(g.opp(h))] - f[g.vertex_of(h)];
    return EdgeField<T>::raw(g, std::move(v), Symmetry::Antisymmetric);
}

/// div rows for the given cuts (one row per cut).
inline Eigen::MatrixXd div_matrix(const RotationGraph& g, const std::vector<Cut>& cuts) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<int>(cuts.size()), g.num_edges());
    for (int i = 0; i < static_cast<int>(cuts.size()); ++i)
        for (int h : cuts[i].half_edges) {
            int e = g.edge_of(h);
            D(i, e) += (h == g.edge_rep(e)) ? 1.0 : -1.0;
        }
    return D;
}

/// mdiv rows (divergence over the shortest half-edges of each cut).
inline Eigen::MatrixXd mdiv_matrix(const RotationGraph& g, const std::vector<Cut>& cuts) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<int>(cuts.size()), g.num_edges());
    for (int i = 0; i < static_cast<int>(cuts.size()); ++i)
        for (int h : cuts[i].m) {
            int e = g.edge_of(h);
            D(i, e) += (h == g.edge_rep(e)) ? 1.0 : -1.0;
        }
    return D;
}

/// curl rows for the given chains.
inline Eigen::MatrixXd curl_matrix(const RotationGraph& g, const std::vector<Chain>& chains) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<int>(chains.size()), g.num_edges());
    for (int i = 0; i < static_cast<int>(chains.size()); ++i) C.row(i) = chains[i].cast<double>();
    return C;
}

/// Greedy selection of cuts whose mdiv rows are linearly independent.  By
/// the rank property of mdiv this always reaches |V|-1 rows; RankDeficient
/// signals an internal bug.
inline std::vector<Cut> mdiv_cut_basis(const RotationGraph& g, const std::vector<double>& edge_length) {
    const int want = g.num_vertices() - 1;
    std::vector<Cut> chosen;
    if (want == 0) return chosen;
    // prefer vertex cuts; fall back on the remaining cuts in enumeration order
    std::vector<Cut> cuts;
    for (int v = 0; v < g.num_vertices(); ++v) cuts.push_back(vertex_cut(g, v, &edge_length));
    for (Cut& b : all_cuts(g, &edge_length)) cuts.push_back(std::move(b));
    Eigen::MatrixXd rows(want, g.num_edges());
    int have = 0;
    for (const Cut& b : cuts) {
        Eigen::MatrixXd trial(have + 1, g.num_edges());
        if (have > 0) trial.topRows(have) = rows.topRows(have);
        trial.row(have) = mdiv_matrix(g, {b}).row(0);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(trial);
        const auto& sv = svd.singularValues();
        if (sv[sv.size() - 1] > 1e-8 * sv[0]) {
            rows.row(have) = trial.row(have);
            chosen.push_back(b);
            if (++have == want) return chosen;
        }
    }
    throw NumericalError("RankDeficient", "mdiv rank fell short of |V|-1");
}

}  // namespace saddlenet
