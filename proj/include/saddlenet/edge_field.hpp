#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "saddlenet/rotation_graph.hpp"

namespace saddlenet {

enum class Symmetry { None, Symmetric, Antisymmetric };

/// A scalar function on half-edges, optionally tagged symmetric
/// (f(-h) = f(h)) or antisymmetric (f(-h) = -f(h)).  Tags are verified
/// exactly at construction.
template <class T>
class EdgeField {
public:
    EdgeField() = default;

    static EdgeField raw(const RotationGraph& g, std::vector<T> values, Symmetry tag = Symmetry::None) {
        if (static_cast<int>(values.size()) != g.num_half_edges())
            throw ValidationError("FieldSize", "value count does not match half-edge count");
        EdgeField f;
        f.v_ = std::move(values);
        f.sym_ = tag;
        if (tag != Symmetry::None) {
            for (int h = 0; h < g.num_half_edges(); ++h) {
                T want = tag == Symmetry::Symmetric ? f.v_[g.opp(h)] : T(-f.v_[g.opp(h)]);
                if (f.v_[h] != want)
                    throw ValidationError("SymmetryTag", "field value at '" + g.id(h) + "' breaks the declared tag");
            }
        }
        return f;
    }

    /// Build from one value per edge, placed on the representative half-edge.
    static EdgeField antisym(const RotationGraph& g, const std::vector<T>& per_edge) {
        std::vector<T> v(g.num_half_edges());
        for (int e = 0; e < g.num_edges(); ++e) {
            v[g.edge_rep(e)] = per_edge[e];
            v[g.opp(g.edge_rep(e))] = -per_edge[e];
        }
        return raw(g, std::move(v), Symmetry::Antisymmetric);
    }

    static EdgeField sym(const RotationGraph& g, const std::vector<T>& per_edge) {
        std::vector<T> v(g.num_half_edges());
        for (int e = 0; e < g.num_edges(); ++e) {
            v[g.edge_rep(e)] = per_edge[e];
            v[g.opp(g.edge_rep(e))] = per_edge[e];
        }
        return raw(g, std::move(v), Symmetry::Symmetric);
    }

    static EdgeField constant(const RotationGraph& g, T c, Symmetry tag = Symmetry::None) {
        return raw(g, std::vector<T>(g.num_half_edges(), c), tag);
    }

    const T& operator[](int h) const { return v_[h]; }
    Symmetry symmetry() const { return sym_; }
    int size() const { return static_cast<int>(v_.size()); }
    const std::vector<T>& values() const { return v_; }

private:
    std::vector<T> v_;
    Symmetry sym_ = Symmetry::None;
};

/// f = (f^a + f^s)/2 with f^a_h = f_h - f_{-h} and f^s_h = f_h + f_{-h}.
template <class T>
std::pair<EdgeField<T>, EdgeField<T>> decompose(const RotationGraph& g, const EdgeField<T>& f) {
    std::vector<T> a(g.num_half_edges()), s(g.num_half_edges());
    for (int h = 0; h < g.num_half_edges(); ++h) {
        a[h] = f[h] - f[g.opp(h)];
        s[h] = f[h] + f[g.opp(h)];
    }
    return {EdgeField<T>::raw(g, std::move(a), Symmetry::Antisymmetric),
            EdgeField<T>::raw(g, std::move(s), Symmetry::Symmetric)};
}

/// Antisymmetric field <-> vector of values on edge representatives.
template <class T>
Eigen::Vector<T, Eigen::Dynamic> to_edge_vector(const RotationGraph& g, const EdgeField<T>& f) {
    Eigen::Vector<T, Eigen::Dynamic> x(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) x[e] = f[g.edge_rep(e)];
    return x;
}

template <class T>
EdgeField<T> antisym_from_vector(const RotationGraph& g, const Eigen::Vector<T, Eigen::Dynamic>& x) {
    std::vector<T> per_edge(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) per_edge[e] = x[e];
    return EdgeField<T>::antisym(g, per_edge);
}

/// Packing of complex antisymmetric fields into real vectors
/// [Re x_0, Im x_0, Re x_1, ...] over edge representatives.
inline Eigen::VectorXd pack_complex(const RotationGraph& g, const EdgeField<Complex>& f) {
    Eigen::VectorXd x(2 * g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        x[2 * e] = f[g.edge_rep(e)].real();
        x[2 * e + 1] = f[g.edge_rep(e)].imag();
    }
    return x;
}

inline EdgeField<Complex> unpack_complex(const RotationGraph& g, const Eigen::VectorXd& x) {
    std::vector<Complex> per_edge(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) per_edge[e] = Complex(x[2 * e], x[2 * e + 1]);
    return EdgeField<Complex>::antisym(g, per_edge);
}

}  // namespace saddlenet
