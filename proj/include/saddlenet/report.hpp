#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "saddlenet/configuration.hpp"

namespace saddlenet {

namespace report_detail {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x == 0.0 ? 0.0 : x);  // normalize -0
    return buf;
}

inline std::string cnum(Complex z) { return "(" + num(z.real()) + ", " + num(z.imag()) + ")"; }

inline std::string cut_name(const RotationGraph& g, const Cut& b) {
    std::string s = "{";
    for (int v = 0; v < g.num_vertices(); ++v)
        if ((b.side_mask >> v) & 1u) s += (s.size() > 1 ? "," : "") + std::to_string(v);
    return s + "}";
}

inline std::string half_edge_list(const RotationGraph& g, const std::vector<int>& hs) {
    std::string s = "[";
    for (size_t i = 0; i < hs.size(); ++i) s += (i ? " " : "") + g.id(hs[i]);
    return s + "]";
}

}  // namespace report_detail

/// Deterministic plain-text rendering of a balance report.
inline std::string report_to_text(const Configuration& c, const BalanceReport& r) {
    using namespace report_detail;
    std::ostringstream out;
    out << "configuration: |V|=" << c.graph.num_vertices() << " |E|=" << c.graph.num_edges()
        << " |F|=" << c.graph.num_faces() << " genus=" << c.graph.genus()
        << " tpms-genus=" << r.tpms_genus << "\n";
    out << "torus: T1=" << cnum(c.rep.T1) << " T2=" << cnum(c.rep.T2) << "\n";
    out << "shifts: (" << num(c.shifts[0]) << ", " << num(c.shifts[1]) << ")"
        << "  lambda: " << cnum(c.lambda[0]) << " " << cnum(c.lambda[1]) << "\n";
    out << "\nhorizontal:\n";
    out << "  balanced: " << (r.horizontal.balanced ? "yes" : "no")
        << "  (max residual " << num(r.horizontal.max_residual) << ")\n";
    out << "  rigid: " << (r.horizontal.rigid ? "yes" : "no") << "  (singular values "
        << num(r.horizontal.smallest_singular_value) << " .. "
        << num(r.horizontal.largest_singular_value) << ")\n";
    for (const auto& [b, f] : r.horizontal.residuals)
        out << "    cut " << cut_name(c.graph, b) << " force " << cnum(f) << "\n";
    out << "\nvertical:\n";
    if (!r.vertical_available) {
        out << "  unavailable: " << r.vertical_note << "\n";
    } else {
        out << "  balanced: " << (r.vertically_balanced ? "yes" : "no")
            << "  (max residual " << num(r.max_vertical_residual) << ")\n";
        out << "  rigid: " << (r.vertical_rigidity.rigid ? "yes" : "no");
        if (c.graph.num_vertices() > 1)
            out << "  (singular values " << num(r.vertical_rigidity.smallest_singular_value) << " .. "
                << num(r.vertical_rigidity.largest_singular_value) << ", det "
                << num(r.vertical_rigidity.determinant) << ")";
        else
            out << "  (single vertex: no cut equations)";
        out << "\n";
        out << "  K per edge:";
        for (int e = 0; e < c.graph.num_edges(); ++e)
            out << " " << c.graph.id(c.graph.edge_rep(e)) << "=" << num(r.K[c.graph.edge_rep(e)]);
        out << "\n";
        for (const auto& [b, f] : r.vertical_residuals)
            out << "    cut " << cut_name(c.graph, b) << " m(b)=" << half_edge_list(c.graph, b.m)
                << " force " << num(f) << "\n";
    }
    out << "\nverdict: balanced=" << (r.balanced ? "yes" : "no")
        << " rigid=" << (r.rigid ? "yes" : "no") << "\n";
    return out.str();
}

}  // namespace saddlenet
