#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saddlenet/configuration.hpp"

namespace saddlenet {

/// Phase function (a, -b, -a, b) on the half-edges "1".."4" of the Meeks
/// graph.  The fundamental shifts are then (-a-b, b-a), i.e. the balanced
/// branch for shifts (S1, S2) is a = (-S1-S2)/2, b = (S2-S1)/2.
inline EdgeField<double> meeks_phases(const RotationGraph& g, double a, double b) {
    std::vector<double> v(g.num_half_edges());
    auto set = [&](const std::string& id, double val) {
        int h = g.require(id);
        v[h] = val;
        v[g.opp(h)] = -val;
    };
    set("1", a);
    set("2", -b);
    set("3", -a);
    set("4", b);
    return EdgeField<double>::raw(g, std::move(v), Symmetry::Antisymmetric);
}

/// Phases on the three loops of the aH graph; the face condition fixes the
/// third loop to -(a+b).  Shifts are (a, b).
inline EdgeField<double> ah_phases(const RotationGraph& g, double a, double b) {
    std::vector<double> v(g.num_half_edges());
    auto set = [&](const std::string& id, double val) {
        int h = g.require(id);
        v[h] = val;
        v[g.opp(h)] = -val;
    };
    set("a", a);
    set("b", b);
    set("c", -a - b);
    return EdgeField<double>::raw(g, std::move(v), Symmetry::Antisymmetric);
}

/// aG phase pattern on the Meeks graph (orthogonal torus): one fundamental
/// shift is pi, parameters (a, b) slide freely, so the family is balanced
/// but never vertically rigid.  Shifts: (pi, b - a).
inline EdgeField<double> ag_phases(const RotationGraph& g, double a, double b) {
    std::vector<double> v(g.num_half_edges());
    auto set = [&](const std::string& id, double val) {
        int h = g.require(id);
        v[h] = val;
        v[g.opp(h)] = -val;
    };
    set("1", a - kPi / 2);
    set("2", a + kPi / 2);
    set("3", b + kPi / 2);
    set("4", b - kPi / 2);
    return EdgeField<double>::raw(g, std::move(v), Symmetry::Antisymmetric);
}

/// aI phase pattern on the Meeks graph (arg(T2/T1) != pi/2): the shifts
/// differ by pi and the common constant c slides freely.  For
/// arg(T2/T1) < pi/2 the short edges are "2","4"; the pattern balances
/// them identically.  Shifts: (s1 + pi, s1).
inline EdgeField<double> ai_phases(const RotationGraph& g, double c, double s1, bool short_pair_24 = true) {
    std::vector<double> v(g.num_half_edges());
    auto set = [&](const std::string& id, double val) {
        int h = g.require(id);
        v[h] = val;
        v[g.opp(h)] = -val;
    };
    double s2 = s1 + kPi;
    if (short_pair_24) {
        set("1", c - s2 / 2);
        set("2", c + s2 / 2);
        set("3", c + s1 + s2 / 2);
        set("4", c + s1 - s2 / 2);
    } else {  // arg(T2/T1) > pi/2: the short pair is "1","3"
        set("2", c - s2 / 2);
        set("3", c + s2 / 2);
        set("4", c + s1 + s2 / 2);
        set("1", c + s1 - s2 / 2);
    }
    return EdgeField<double>::raw(g, std::move(v), Symmetry::Antisymmetric);
}

// ---------------------------------------------------------------------------
// the genus-3 catalog

struct CatalogEntry {
    std::string name;
    bool admissible = false;
    std::string constraints;
    std::vector<std::string> notes;
    std::vector<std::string> m_of_vertex_cut;  // shortest half-edges at the first vertex (Meeks graph)
};

/// The four two-face families evaluated on a concrete torus.
inline std::vector<CatalogEntry> genus3_catalog(Complex T1, Complex T2) {
    std::vector<CatalogEntry> out;
    const double arg_ratio = std::arg(T2 / T1);
    const bool orthogonal = std::abs(arg_ratio - kPi / 2) < 1e-9;

    {
        CatalogEntry e;
        e.name = "Meeks";
        e.admissible = true;
        e.constraints = "second vertex at the 2-division point (T1+T2)/2; phases (a,-b,-a,b) with "
                        "a = (-S1-S2)/2, b = (S2-S1)/2";
        auto gr = meeks_graph(T1, T2);
        auto d = edge_data(gr.graph, gr.rep);
        Cut b = vertex_cut(gr.graph, 0, &d.edge_length);
        for (int h : b.m) e.m_of_vertex_cut.push_back(gr.graph.id(h));
        if (orthogonal)
            e.notes.push_back("orthogonal torus: all four edges tie; rigid iff cos(a)+cos(b) != 0");
        else
            e.notes.push_back("rigid iff the short-pair cosine is nonzero");
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "aH";
        e.admissible = true;
        e.constraints = "one vertex, three loops; trivially balanced and rigid (no cuts); "
                        "phases (a, b, -a-b)";
        if (std::abs(T2 / T1 - std::polar(1.0, 2.0 * kPi / 3.0)) < 1e-9)
            e.notes.push_back("hexagonal torus: a = b = 2*pi/3 is the rGL (Gyroid) limit");
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "aG";
        e.admissible = orthogonal;
        e.constraints = "requires arg(T2/T1) = pi/2; one fundamental shift equals pi; "
                        "never vertically rigid (a common constant slides)";
        if (orthogonal && std::abs(std::abs(T1) - std::abs(T2)) < 1e-9)
            e.notes.push_back("square torus: a = b = pi/2 is the tG (Gyroid) limit");
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "aI";
        e.admissible = !orthogonal;
        e.constraints = "requires arg(T2/T1) != pi/2; fundamental shifts differ by pi; "
                        "never vertically rigid";
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// exhaustive classification of two-face rotation systems

struct ClassificationReport {
    int candidates = 0;
    int rejected_short_face = 0;
    int rejected_disconnected = 0;
    int rejected_wrong_face_count = 0;
    int rejected_non_orientable = 0;
    int surviving = 0;                       // distinct combinatorial types
    std::vector<std::string> type_encodings; // canonical forms
    std::vector<std::string> type_names;     // aH-type / Meeks-type when recognized
};

namespace classify_detail {

/// Canonical encoding of a rotation system up to relabeling: the
/// lexicographically minimal (next, opp) table over all BFS relabelings
/// started from each half-edge.
inline std::string canonical_encoding(const RotationGraph& g) {
    const int n = g.num_half_edges();
    std::string best;
    for (int start = 0; start < n; ++start) {
        std::vector<int> newlab(n, -1);
        std::vector<int> order;
        newlab[start] = 0;
        order.push_back(start);
        for (size_t k = 0; k < order.size(); ++k) {
            for (int t : {g.next(order[k]), g.opp(order[k])}) {
                if (newlab[t] == -1) {
                    newlab[t] = static_cast<int>(order.size());
                    order.push_back(t);
                }
            }
        }
        std::string enc;
        for (int i = 0; i < n; ++i) {
            enc += static_cast<char>('a' + newlab[g.next(order[i])]);
            enc += static_cast<char>('a' + newlab[g.opp(order[i])]);
        }
        if (best.empty() || enc < best) best = enc;
    }
    return best;
}

inline void enumerate_involutions(int n, std::vector<int>& opp, const std::function<void()>& emit) {
    int first = -1;
    for (int i = 0; i < n; ++i)
        if (opp[i] == -1) {
            first = i;
            break;
        }
    if (first == -1) {
        emit();
        return;
    }
    for (int j = first + 1; j < n; ++j) {
        if (opp[j] != -1) continue;
        opp[first] = j;
        opp[j] = first;
        enumerate_involutions(n, opp, emit);
        opp[first] = opp[j] = -1;
    }
}

}  // namespace classify_detail

/// Enumerate all rotation systems with two faces under the standing
/// assumptions (even degrees >= 4, faces of size >= 2, connected, genus 1).
/// The average-degree bound limits them to one vertex of degree 6 or two
/// vertices of degree 4; exactly two combinatorial types survive.
inline ClassificationReport classify_two_face_graphs() {
    ClassificationReport rpt;
    std::map<std::string, std::string> types;  // encoding -> name

    auto consider = [&](const std::vector<std::vector<std::string>>& rotations, int n,
                        const std::vector<int>& opp) {
        ++rpt.candidates;
        std::vector<std::string> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = "h" + std::to_string(i);
        std::vector<std::pair<std::string, std::string>> inv;
        for (int i = 0; i < n; ++i)
            if (i < opp[i]) inv.push_back({ids[i], ids[opp[i]]});
        RotationGraph g = [&] {
            try {
                return RotationGraph::build(ids, inv, rotations);
            } catch (const ValidationError& e) {
                if (std::string(e.code()) == "ShortFace")
                    ++rpt.rejected_short_face;
                else
                    ++rpt.rejected_disconnected;
                throw;
            }
        }();
        if (g.num_faces() != 2) {
            ++rpt.rejected_wrong_face_count;
            return;
        }
        if (!g.orientable()) {
            ++rpt.rejected_non_orientable;
            return;
        }
        std::string enc = classify_detail::canonical_encoding(g);
        if (!types.count(enc)) {
            std::string name = g.num_vertices() == 1 ? "aH-type (one vertex, three loops)"
                                                     : "Meeks-type (two vertices, four edges)";
            types[enc] = name;
        }
    };

    // one vertex of degree 6
    {
        const int n = 6;
        std::vector<std::vector<std::string>> rot = {
            {"h0", "h1", "h2", "h3", "h4", "h5"}};
        std::vector<int> opp(n, -1);
        classify_detail::enumerate_involutions(n, opp, [&] {
            try {
                consider(rot, n, opp);
            } catch (const ValidationError&) {
            }
        });
    }
    // two vertices of degree 4
    {
        const int n = 8;
        std::vector<std::vector<std::string>> rot = {
            {"h0", "h1", "h2", "h3"}, {"h4", "h5", "h6", "h7"}};
        std::vector<int> opp(n, -1);
        classify_detail::enumerate_involutions(n, opp, [&] {
            try {
                consider(rot, n, opp);
            } catch (const ValidationError&) {
            }
        });
    }
    for (auto& [enc, name] : types) {
        rpt.type_encodings.push_back(enc);
        rpt.type_names.push_back(name);
    }
    rpt.surviving = static_cast<int>(types.size());
    return rpt;
}

}  // namespace saddlenet
