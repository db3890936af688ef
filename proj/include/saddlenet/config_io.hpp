#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "saddlenet/configuration.hpp"
#include "saddlenet/families.hpp"

namespace saddlenet {

/// The configuration document: everything needed to assemble and check a
/// configuration, in one JSON file.  Phases and offsets are given on one
/// half-edge per edge; the opposite side follows by antisymmetry.  Unknown
/// keys are rejected.
struct ConfigDocument {
    Complex T1, T2;
    std::vector<std::string> halfedges;
    std::vector<std::pair<std::string, std::string>> involution;
    std::vector<std::string> vertex_ids;
    std::vector<std::vector<std::string>> rotations;
    std::vector<Complex> positions;
    std::map<std::string, std::pair<int, int>> offsets;
    std::map<std::string, double> phases;
    std::array<double, 2> shifts{0.0, 0.0};
    std::array<Complex, 2> lambda{Complex(0), Complex(0)};
    std::optional<double> K_override;
    double tol_balance = 1e-10;
    double tol_shift = 1e-9;
};

namespace io_detail {

using nlohmann::ordered_json;

inline void reject_unknown(const ordered_json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("ParseError", "unknown key '" + it.key() + "' in " + where);
}

inline Complex read_complex(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("ParseError", where + " must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace io_detail

inline ConfigDocument parse_config(const std::string& text) {
    using nlohmann::ordered_json;
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("ParseError", e.what());  // carries line/byte info
    }
    using io_detail::read_complex;
    using io_detail::reject_unknown;
    ConfigDocument doc;
    reject_unknown(j, {"torus", "graph", "embedding", "phases", "shifts", "lambda", "options"},
                   "document root");
    if (!j.contains("torus") || !j.contains("graph") || !j.contains("embedding"))
        throw ValidationError("ParseError", "torus, graph and embedding sections are required");

    const auto& torus = j["torus"];
    reject_unknown(torus, {"T1", "T2"}, "torus");
    doc.T1 = read_complex(torus.at("T1"), "torus.T1");
    doc.T2 = read_complex(torus.at("T2"), "torus.T2");

    const auto& graph = j["graph"];
    reject_unknown(graph, {"halfedges", "involution", "vertices"}, "graph");
    for (const auto& h : graph.at("halfedges")) doc.halfedges.push_back(h.get<std::string>());
    for (const auto& p : graph.at("involution")) {
        if (!p.is_array() || p.size() != 2)
            throw ValidationError("ParseError", "graph.involution entries must be pairs");
        doc.involution.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
    }
    for (const auto& v : graph.at("vertices")) {
        reject_unknown(v, {"id", "rotation", "position"}, "graph.vertices[]");
        doc.vertex_ids.push_back(v.at("id").get<std::string>());
        std::vector<std::string> rot;
        for (const auto& h : v.at("rotation")) rot.push_back(h.get<std::string>());
        doc.rotations.push_back(std::move(rot));
        doc.positions.push_back(read_complex(v.at("position"), "vertex position"));
    }

    const auto& emb = j["embedding"];
    reject_unknown(emb, {"offsets"}, "embedding");
    for (auto it = emb.at("offsets").begin(); it != emb.at("offsets").end(); ++it) {
        const auto& o = it.value();
        if (!o.is_array() || o.size() != 2 || !o[0].is_number_integer() || !o[1].is_number_integer())
            throw ValidationError("ParseError", "offsets." + it.key() + " must be an integer pair");
        doc.offsets[it.key()] = {o[0].get<int>(), o[1].get<int>()};
    }

    if (j.contains("phases"))
        for (auto it = j["phases"].begin(); it != j["phases"].end(); ++it)
            doc.phases[it.key()] = it.value().get<double>();
    if (j.contains("shifts")) {
        const auto& s = j["shifts"];
        if (!s.is_array() || s.size() != 2)
            throw ValidationError("ParseError", "shifts must be [S1, S2]");
        doc.shifts = {s[0].get<double>(), s[1].get<double>()};
    }
    if (j.contains("lambda")) {
        const auto& l = j["lambda"];
        if (!l.is_array() || l.size() != 2)
            throw ValidationError("ParseError", "lambda must be [[re,im],[re,im]]");
        doc.lambda = {read_complex(l[0], "lambda[0]"), read_complex(l[1], "lambda[1]")};
    }
    if (j.contains("options")) {
        const auto& o = j["options"];
        reject_unknown(o, {"tolerances", "K_override"}, "options");
        if (o.contains("K_override")) doc.K_override = o["K_override"].get<double>();
        if (o.contains("tolerances")) {
            reject_unknown(o["tolerances"], {"balance", "shift"}, "options.tolerances");
            if (o["tolerances"].contains("balance")) doc.tol_balance = o["tolerances"]["balance"].get<double>();
            if (o["tolerances"].contains("shift")) doc.tol_shift = o["tolerances"]["shift"].get<double>();
        }
    }
    return doc;
}

inline ConfigDocument parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("ParseError", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Build graph and representation from the document.
inline GraphRep document_to_graph(const ConfigDocument& doc) {
    RotationGraph g = RotationGraph::build(doc.halfedges, doc.involution, doc.rotations);
    std::vector<Eigen::Vector2i> off(g.num_half_edges(), Eigen::Vector2i::Zero());
    std::vector<char> have(g.num_half_edges(), 0);
    for (const auto& [id, o] : doc.offsets) {
        int h = g.require(id);
        if (have[h] || have[g.opp(h)])
            throw ValidationError("ParseError", "offset for edge of '" + id + "' given twice");
        off[h] = {o.first, o.second};
        off[g.opp(h)] = {-o.first, -o.second};
        have[h] = have[g.opp(h)] = 1;
    }
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (!have[h]) throw ValidationError("ParseError", "offset missing for edge of '" + g.id(h) + "'");
    TorusRep rep = TorusRep::make(g, doc.T1, doc.T2, doc.positions, std::move(off));
    return {std::move(g), std::move(rep)};
}

inline EdgeField<double> document_phases(const ConfigDocument& doc, const RotationGraph& g) {
    std::vector<double> v(g.num_half_edges(), 0.0);
    std::vector<char> have(g.num_half_edges(), 0);
    for (const auto& [id, val] : doc.phases) {
        int h = g.require(id);
        if (have[h] || have[g.opp(h)])
            throw ValidationError("ParseError", "phase for edge of '" + id + "' given twice");
        v[h] = val;
        v[g.opp(h)] = -val;
        have[h] = have[g.opp(h)] = 1;
    }
    return EdgeField<double>::raw(g, std::move(v), Symmetry::Antisymmetric);
}

inline Configuration document_to_configuration(const ConfigDocument& doc) {
    GraphRep gr = document_to_graph(doc);
    auto phases = document_phases(doc, gr.graph);
    AssembleOptions opt;
    opt.K_override = doc.K_override;
    opt.shift_tol = doc.tol_shift;
    return assemble(gr.graph, gr.rep, phases, doc.shifts, doc.lambda, opt);
}

/// Serialize back to JSON (used by the solve command to emit updated
/// documents; doubles round-trip exactly).
inline nlohmann::ordered_json document_to_json(const ConfigDocument& doc) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["torus"]["T1"] = {doc.T1.real(), doc.T1.imag()};
    j["torus"]["T2"] = {doc.T2.real(), doc.T2.imag()};
    j["graph"]["halfedges"] = doc.halfedges;
    j["graph"]["involution"] = ordered_json::array();
    for (const auto& [a, b] : doc.involution) j["graph"]["involution"].push_back({a, b});
    j["graph"]["vertices"] = ordered_json::array();
    for (size_t v = 0; v < doc.vertex_ids.size(); ++v) {
        ordered_json jv;
        jv["id"] = doc.vertex_ids[v];
        jv["rotation"] = doc.rotations[v];
        jv["position"] = {doc.positions[v].real(), doc.positions[v].imag()};
        j["graph"]["vertices"].push_back(jv);
    }
    j["embedding"]["offsets"] = ordered_json::object();
    for (const auto& [id, o] : doc.offsets) j["embedding"]["offsets"][id] = {o.first, o.second};
    if (!doc.phases.empty()) {
        j["phases"] = ordered_json::object();
        for (const auto& [id, val] : doc.phases) j["phases"][id] = val;
    }
    j["shifts"] = {doc.shifts[0], doc.shifts[1]};
    j["lambda"] = {{doc.lambda[0].real(), doc.lambda[0].imag()},
                   {doc.lambda[1].real(), doc.lambda[1].imag()}};
    if (doc.K_override) j["options"]["K_override"] = *doc.K_override;
    return j;
}

}  // namespace saddlenet
