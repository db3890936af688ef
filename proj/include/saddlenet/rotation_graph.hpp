#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "saddlenet/types.hpp"

namespace saddlenet {

/// A multigraph given as a rotation system: a finite set of half-edges, a
/// fixed-point-free involution pairing opposite half-edges into edges, and a
/// permutation whose cycles list the half-edges counterclockwise around each
/// vertex.  Faces are the orbits of (rotation o involution).  Immutable after
/// build(); all derived tables are cached in input order so that reports are
/// reproducible.
class RotationGraph {
public:
    RotationGraph() = default;  // empty; assign from build()

    /// Validates and builds the graph.  `involution` pairs ids, `rotations`
    /// lists the counterclockwise half-edge cycle of each vertex.
    static RotationGraph build(const std::vector<std::string>& half_edge_ids,
                               const std::vector<std::pair<std::string, std::string>>& involution,
                               const std::vector<std::vector<std::string>>& rotations) {
        return build_impl(half_edge_ids, involution, rotations, false);
    }

    /// As build(), but admits vertices of any degree (used for graphs that
    /// only serve as doubling input, e.g. the hexagonal tiling quotient).
    static RotationGraph build_relaxed(const std::vector<std::string>& half_edge_ids,
                                       const std::vector<std::pair<std::string, std::string>>& involution,
                                       const std::vector<std::vector<std::string>>& rotations) {
        return build_impl(half_edge_ids, involution, rotations, true);
    }

private:
    static RotationGraph build_impl(const std::vector<std::string>& half_edge_ids,
                                    const std::vector<std::pair<std::string, std::string>>& involution,
                                    const std::vector<std::vector<std::string>>& rotations,
                                    bool relax_degrees) {
        RotationGraph g;
        const int n = static_cast<int>(half_edge_ids.size());
        g.ids_ = half_edge_ids;
        for (int i = 0; i < n; ++i) {
            if (!g.index_.emplace(half_edge_ids[i], i).second)
                throw ValidationError("DuplicateHalfEdge", "id '" + half_edge_ids[i] + "' repeated");
        }
        g.opp_.assign(n, -1);
        for (const auto& [a, b] : involution) {
            int ia = g.require(a), ib = g.require(b);
            if (ia == ib) throw ValidationError("FixedPointInvolution", "half-edge '" + a + "' paired with itself");
            if (g.opp_[ia] != -1 || g.opp_[ib] != -1)
                throw ValidationError("InvolutionNotPartition", "half-edge paired twice near '" + a + "'");
            g.opp_[ia] = ib;
            g.opp_[ib] = ia;
        }
        for (int i = 0; i < n; ++i)
            if (g.opp_[i] == -1)
                throw ValidationError("InvolutionNotPartition", "half-edge '" + g.ids_[i] + "' unpaired");

        g.next_.assign(n, -1);
        g.vertex_of_.assign(n, -1);
        for (const auto& cyc : rotations) {
            const int v = static_cast<int>(g.vertices_.size());
            std::vector<int> cycle;
            for (size_t k = 0; k < cyc.size(); ++k) {
                int i = g.require(cyc[k]);
                if (g.vertex_of_[i] != -1)
                    throw ValidationError("RotationNotPartition", "half-edge '" + cyc[k] + "' in two rotations");
                g.vertex_of_[i] = v;
                cycle.push_back(i);
            }
            for (size_t k = 0; k < cycle.size(); ++k)
                g.next_[cycle[k]] = cycle[(k + 1) % cycle.size()];
            g.vertices_.push_back(std::move(cycle));
        }
        for (int i = 0; i < n; ++i)
            if (g.vertex_of_[i] == -1)
                throw ValidationError("RotationNotPartition", "half-edge '" + g.ids_[i] + "' in no rotation");

        if (!relax_degrees) {
            for (const auto& cyc : g.vertices_) {
                if (cyc.size() < 4 || cyc.size() % 2 != 0)
                    throw ValidationError("LowDegree", "vertex of degree " + std::to_string(cyc.size()) +
                                                           " (need even degree >= 4)");
            }
        }

        // edges: orbit of the involution, representative = first id in input order
        g.edge_of_.assign(n, -1);
        for (int i = 0; i < n; ++i) {
            if (g.edge_of_[i] != -1) continue;
            int e = static_cast<int>(g.edges_.size());
            g.edge_of_[i] = e;
            g.edge_of_[g.opp_[i]] = e;
            g.edges_.push_back({i, g.opp_[i]});
        }

        // faces: orbits of next o opp, as cyclic sequences
        g.face_of_.assign(n, -1);
        for (int i = 0; i < n; ++i) {
            if (g.face_of_[i] != -1) continue;
            int f = static_cast<int>(g.faces_.size());
            std::vector<int> seq;
            int h = i;
            do {
                g.face_of_[h] = f;
                seq.push_back(h);
                h = g.next_[g.opp_[h]];
            } while (h != i);
            if (seq.size() < 2)
                throw ValidationError("ShortFace", "face of size 1 at half-edge '" + g.ids_[i] + "'");
            g.faces_.push_back(std::move(seq));
        }

        // connectivity under the group generated by involution and rotation
        std::vector<char> seen(n, 0);
        std::queue<int> bfs;
        bfs.push(0);
        seen[0] = 1;
        int reached = 0;
        while (!bfs.empty()) {
            int h = bfs.front();
            bfs.pop();
            ++reached;
            for (int t : {g.opp_[h], g.next_[h]}) {
                if (!seen[t]) {
                    seen[t] = 1;
                    bfs.push(t);
                }
            }
        }
        if (reached != n) throw ValidationError("Disconnected", "graph is not connected");
        return g;
    }

public:
    int num_half_edges() const { return static_cast<int>(ids_.size()); }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }

    int opp(int h) const { return opp_[h]; }
    int next(int h) const { return next_[h]; }  // the rotation
    int vertex_of(int h) const { return vertex_of_[h]; }
    int edge_of(int h) const { return edge_of_[h]; }
    int face_of(int h) const { return face_of_[h]; }
    /// Representative half-edge of edge e (the one first in input order).
    int edge_rep(int e) const { return edges_[e].first; }
    bool is_loop(int e) const { return vertex_of_[edges_[e].first] == vertex_of_[edges_[e].second]; }

    const std::string& id(int h) const { return ids_[h]; }
    int index(const std::string& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? -1 : it->second;
    }
    int require(const std::string& id) const {
        int i = index(id);
        if (i < 0) throw ValidationError("UnknownHalfEdge", "id '" + id + "'");
        return i;
    }

    const std::vector<std::vector<int>>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    int degree(int v) const { return static_cast<int>(vertices_[v].size()); }

    int genus() const { return 1 - (num_vertices() - num_edges() + num_faces()) / 2; }

    /// A consistent orientation with sigma(first half-edge) = +1, obtained by
    /// propagating sigma(opp h) = -sigma(h), sigma(next h) = -sigma(h).
    /// Throws NotOrientable when the constraints close an odd cycle.
    std::vector<int> orient() const {
        const int n = num_half_edges();
        std::vector<int> sigma(n, 0);
        std::queue<int> bfs;
        sigma[0] = 1;
        bfs.push(0);
        while (!bfs.empty()) {
            int h = bfs.front();
            bfs.pop();
            for (int t : {opp_[h], next_[h]}) {
                if (sigma[t] == 0) {
                    sigma[t] = -sigma[h];
                    bfs.push(t);
                } else if (sigma[t] != -sigma[h]) {
                    throw ValidationError("NotOrientable", "inconsistent signs at half-edge '" + ids_[t] + "'");
                }
            }
        }
        return sigma;
    }

    bool orientable() const {
        try {
            orient();
            return true;
        } catch (const ValidationError&) {
            return false;
        }
    }

    /// Edges related through 2-element faces, transitively.  Classes are
    /// listed with edges in input order.
    std::vector<std::vector<int>> parallel_classes() const {
        std::vector<int> parent(num_edges());
        for (int e = 0; e < num_edges(); ++e) parent[e] = e;
        auto find = [&](int e) {
            while (parent[e] != e) e = parent[e] = parent[parent[e]];
            return e;
        };
        for (const auto& f : faces_) {
            if (f.size() != 2) continue;
            int a = find(edge_of_[f[0]]), b = find(edge_of_[f[1]]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::vector<std::vector<int>> classes;
        std::map<int, int> root_to_class;
        for (int e = 0; e < num_edges(); ++e) {
            int r = find(e);
            auto it = root_to_class.find(r);
            if (it == root_to_class.end()) {
                root_to_class.emplace(r, static_cast<int>(classes.size()));
                classes.push_back({e});
            } else {
                classes[it->second].push_back(e);
            }
        }
        return classes;
    }

    bool has_parallel_edges() const {
        for (const auto& c : parallel_classes())
            if (c.size() > 1) return true;
        return false;
    }

    /// Doubling: every half-edge h is split into h+ and h-, producing a graph
    /// with the same vertices, twice the edges, and every edge in a parallel
    /// pair.  The result is always orientable.
    RotationGraph doubling() const {
        if (has_parallel_edges())
            throw ValidationError("ParallelEdges", "doubling requires a graph without parallel edges");
        const int n = num_half_edges();
        std::vector<std::string> ids;
        ids.reserve(2 * n);
        auto plus = [&](int h) { return ids_[h] + "+"; };
        auto minus = [&](int h) { return ids_[h] + "-"; };
        for (int h = 0; h < n; ++h) {
            ids.push_back(plus(h));
            ids.push_back(minus(h));
        }
        std::vector<std::pair<std::string, std::string>> inv;
        for (int h = 0; h < n; ++h)
            if (h < opp_[h]) {
                inv.push_back({plus(h), minus(opp_[h])});
                inv.push_back({minus(h), plus(opp_[h])});
            }
        std::vector<std::vector<std::string>> rots;
        for (const auto& cyc : vertices_) {
            std::vector<std::string> r;
            for (int h : cyc) {
                r.push_back(plus(h));
                r.push_back(minus(h));
            }
            rots.push_back(std::move(r));
        }
        return build(ids, inv, rots);
    }

private:
    std::vector<std::string> ids_;
    std::map<std::string, int> index_;
    std::vector<int> opp_, next_, vertex_of_, edge_of_, face_of_;
    std::vector<std::vector<int>> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> faces_;
};

}  // namespace saddlenet
