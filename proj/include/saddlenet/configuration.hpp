#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "saddlenet/saddle_tower.hpp"
#include "saddlenet/vertical.hpp"

namespace saddlenet {

/// A graph with phases: the data that (when balanced and rigid both ways)
/// produces a triply periodic minimal surface of genus |F| + 1.
struct Configuration {
    RotationGraph graph;
    TorusRep rep;
    std::vector<int> sigma;           // consistent orientation
    std::vector<TowerModel> towers;   // one per vertex, wings in rotation order
    std::vector<int> wing_index;      // half-edge -> wing slot of its tower
    EdgeField<double> phases;         // antisymmetric phase differences
    std::array<double, 2> shifts{};   // fundamental shifts (mod 2*pi)
    std::array<Complex, 2> lambda{};  // first-order lattice deformation
    std::optional<double> K_override;

    EdgeField<double> upsilon;  // per half-edge, from the towers
    EdgeField<Complex> mu;      // per half-edge, from the towers

    const TowerModel& tower_at(int h) const { return towers[graph.vertex_of(h)]; }
};

struct AssembleOptions {
    std::optional<double> K_override;
    double shift_tol = 1e-9;
    bool check_drawing = true;
};

/// Towers for every vertex of a (vertex-)balanced representation: wing
/// directions from the drawing, punctures from the conformality solver.
inline std::vector<TowerModel> build_vertex_towers(const RotationGraph& g, const TorusRep& rep,
                                                   const std::vector<int>& sigma) {
    EdgeData d = edge_data(g, rep);
    std::vector<TowerModel> towers;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& cyc = g.vertices()[v];
        std::vector<double> theta;
        std::vector<int> sg;
        for (int h : cyc) {
            theta.push_back(std::arg(d.unit[h]));
            sg.push_back(sigma[h]);
        }
        TowerModel t;
        try {
            t = make_tower(theta, sg);
        } catch (const ValidationError& err) {
            std::string code = err.code();
            if (code == "DegeneratePolygon" || code == "SpecialPolygon")
                throw ValidationError("NonOrdinaryVertex",
                                      "vertex " + std::to_string(v) + ": " + err.what());
            if (code == "PolygonNotClosed")
                throw ValidationError("NotBalancedAtVertex",
                                      "vertex " + std::to_string(v) + " has nonzero force; towers undefined");
            throw;
        }
        solve_punctures(t);
        analyze(t);
        towers.push_back(std::move(t));
    }
    return towers;
}

/// Validate and assemble a configuration: orientation, towers, phase-period
/// consistency with the fundamental shifts.
inline Configuration assemble(const RotationGraph& graph, const TorusRep& rep,
                              const EdgeField<double>& phases, std::array<double, 2> shifts,
                              std::array<Complex, 2> lambda = {Complex(0), Complex(0)},
                              AssembleOptions opt = {}) {
    Configuration c;
    c.graph = graph;
    c.rep = rep;
    if (graph.genus() != 1)
        throw ValidationError("GenusNotOne", "configurations require genus-1 graphs");
    c.sigma = graph.orient();  // NotOrientable propagates
    if (opt.check_drawing) {
        auto validity = geometric_validity(graph, rep);
        if (!validity.valid)
            throw ValidationError("InvalidDrawing",
                                  validity.issues.empty() ? "degenerate drawing"
                                                          : validity.issues[0].kind + " at '" +
                                                                validity.issues[0].a + "'");
    }
    horizontal_periods(graph, rep);  // PeriodMismatch on inconsistent data

    if (phases.symmetry() != Symmetry::Antisymmetric)
        throw ValidationError("SymmetryTag", "phases must be antisymmetric");
    // period conditions of the phase function, all mod 2*pi
    CycleBasis cb = cycle_basis(graph, rep.offset);
    for (int f = 0; f < graph.num_faces(); ++f) {
        double p = chain_pairing(graph, cb.face_chains[f], phases);
        if (angle_dist(p, 0.0) > opt.shift_tol)
            throw ValidationError("ShiftMismatch",
                                  "phase period of face " + std::to_string(f) + " is not 0 mod 2*pi");
    }
    double p1 = chain_pairing(graph, cb.c1, phases);
    double p2 = chain_pairing(graph, cb.c2, phases);
    if (angle_dist(p1, shifts[0]) > opt.shift_tol || angle_dist(p2, shifts[1]) > opt.shift_tol)
        throw ValidationError("ShiftMismatch", "phase periods do not match the fundamental shifts");

    c.towers = build_vertex_towers(graph, rep, c.sigma);
    c.wing_index.assign(graph.num_half_edges(), -1);
    for (int v = 0; v < graph.num_vertices(); ++v) {
        const auto& cyc = graph.vertices()[v];
        for (int k = 0; k < static_cast<int>(cyc.size()); ++k) c.wing_index[cyc[k]] = k;
    }
    std::vector<double> ups(graph.num_half_edges());
    std::vector<Complex> mus(graph.num_half_edges());
    for (int h = 0; h < graph.num_half_edges(); ++h) {
        const TowerModel& t = c.towers[graph.vertex_of(h)];
        ups[h] = t.upsilon[c.wing_index[h]];
        mus[h] = t.mu[c.wing_index[h]];
    }
    c.upsilon = EdgeField<double>::raw(graph, std::move(ups));
    c.mu = EdgeField<Complex>::raw(graph, std::move(mus));
    c.phases = phases;
    c.shifts = shifts;
    c.lambda = lambda;
    c.K_override = opt.K_override;
    return c;
}

// ---------------------------------------------------------------------------
// the full balance/rigidity verdict

struct BalanceReport {
    HorizontalReport horizontal;
    bool vertical_available = false;
    std::string vertical_note;  // why the vertical side was skipped
    EdgeField<Complex> xi;
    EdgeField<double> K;
    std::vector<std::pair<Cut, double>> vertical_residuals;  // all cuts, with m(b)
    double max_vertical_residual = 0.0;
    bool vertically_balanced = false;
    VerticalRigidityReport vertical_rigidity;
    int tpms_genus = 0;  // |F| + 1
    bool balanced = false, rigid = false;
};

inline BalanceReport full_report(const Configuration& c, double tol = 1e-10) {
    BalanceReport r;
    r.horizontal = horizontal_report(c.graph, c.rep, tol);
    r.tpms_genus = c.graph.num_faces() + 1;
    if (!r.horizontal.rigid) {
        r.vertical_note = "horizontally non-rigid: xi is not determined";
    } else {
        r.xi = solve_xi(c.graph, c.rep, c.mu, c.lambda[0], c.lambda[1]);
        r.K = K_field(c.graph, c.rep, c.upsilon, r.xi, c.K_override);
        auto d = edge_data(c.graph, c.rep);
        auto cuts = all_cuts(c.graph, &d.edge_length);
        for (const Cut& b : cuts) {
            double f = F_ver(c.graph, b, r.K, c.phases);
            r.vertical_residuals.push_back({b, f});
            r.max_vertical_residual = std::max(r.max_vertical_residual, std::abs(f));
        }
        r.vertically_balanced = r.max_vertical_residual <= tol;
        r.vertical_rigidity = vertical_rigidity(c.graph, c.rep, r.K, c.phases);
        r.vertical_available = true;
    }
    r.balanced = r.horizontal.balanced && r.vertical_available && r.vertically_balanced;
    r.rigid = r.horizontal.rigid && r.vertical_available && r.vertical_rigidity.rigid;
    return r;
}

}  // namespace saddlenet
