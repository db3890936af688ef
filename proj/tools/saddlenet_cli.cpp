// Command-line surface: configuration checking and solving, saddle-tower
// tables and meshes, the genus-3 catalog, and the built-in verification
// battery.  Exit codes: 0 success/pass, 1 validation failure, 2 numerical
// failure.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "saddlenet/config_io.hpp"
#include "saddlenet/genus3.hpp"
#include "saddlenet/neck_integral.hpp"
#include "saddlenet/report.hpp"
#include "saddlenet/tower_mesh.hpp"
#include "saddlenet/verification.hpp"

using namespace saddlenet;

namespace {

int cmd_check(const std::string& path, double tol, const std::string& report_path) {
    ConfigDocument doc = parse_config_file(path);
    Configuration config = document_to_configuration(doc);
    BalanceReport report = full_report(config, tol > 0 ? tol : doc.tol_balance);
    std::string text = report_to_text(config, report);
    std::cout << text;
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw ValidationError("FileWrite", "cannot open '" + report_path + "'");
        out << text;
    }
    return report.balanced && report.rigid ? 0 : 1;
}

int cmd_solve(const std::string& path, bool horizontal, bool phases_mode, const std::string& out_path) {
    ConfigDocument doc = parse_config_file(path);
    if (horizontal == phases_mode)
        throw ValidationError("BadParameter", "choose exactly one of --horizontal, --phases");
    GraphRep gr = document_to_graph(doc);
    if (horizontal) {
        TorusRep solved = solve_balance(gr.graph, gr.rep);
        for (size_t v = 0; v < doc.positions.size(); ++v)
            doc.positions[v] = solved.position[static_cast<int>(v)];
    } else {
        auto phases = document_phases(doc, gr.graph);
        auto sigma = gr.graph.orient();
        auto towers = build_vertex_towers(gr.graph, gr.rep, sigma);
        std::vector<double> ups(gr.graph.num_half_edges());
        std::vector<Complex> mus(gr.graph.num_half_edges());
        for (int v = 0; v < gr.graph.num_vertices(); ++v) {
            const auto& cyc = gr.graph.vertices()[v];
            for (int k = 0; k < static_cast<int>(cyc.size()); ++k) {
                ups[cyc[k]] = towers[v].upsilon[k];
                mus[cyc[k]] = towers[v].mu[k];
            }
        }
        auto xi = solve_xi(gr.graph, gr.rep, EdgeField<Complex>::raw(gr.graph, mus), doc.lambda[0],
                           doc.lambda[1]);
        auto K = K_field(gr.graph, gr.rep, EdgeField<double>::raw(gr.graph, ups), xi, doc.K_override);
        PhaseSolveStats stats;
        auto phi = solve_phases(gr.graph, gr.rep, K, doc.shifts, phases, {}, &stats);
        if (!stats.rigid_at_solution)
            std::cerr << "warning: NotRigidAtSolution -- the solved phase function is not rigid\n";
        for (auto& [id, val] : doc.phases) val = phi[gr.graph.require(id)];
        // edges whose phase was omitted (implicitly zero) get written out too
        for (int e = 0; e < gr.graph.num_edges(); ++e) {
            int h = gr.graph.edge_rep(e);
            if (!doc.phases.count(gr.graph.id(h)) && !doc.phases.count(gr.graph.id(gr.graph.opp(h))))
                doc.phases[gr.graph.id(h)] = phi[h];
        }
    }
    std::string text = document_to_json(doc).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ValidationError("FileWrite", "cannot open '" + out_path + "'");
        out << text;
    }
    return 0;
}

int cmd_tower(const std::string& family, int n, double psi, const std::string& theta_csv,
              const std::string& sigma_csv, const std::string& mesh_path, int resolution,
              double delta_mesh, bool table) {
    TowerModel t;
    if (family == "symmetric") {
        t = symmetric_tower(n, psi);
    } else if (family == "isosceles6") {
        t = isosceles6_tower(psi);
    } else if (family == "custom") {
        std::vector<double> theta;
        std::vector<int> sigma;
        std::stringstream st(theta_csv);
        std::string tok;
        while (std::getline(st, tok, ',')) theta.push_back(std::stod(tok));
        std::stringstream ss(sigma_csv);
        while (std::getline(ss, tok, ',')) sigma.push_back(std::stoi(tok));
        t = make_tower(theta, sigma);
        solve_punctures(t);
    } else {
        throw ValidationError("BadParameter", "family must be symmetric, isosceles6 or custom");
    }
    analyze(t);
    if (table) {
        std::cout << "n = " << t.n << "  phase = " << report_detail::num(t.phase) << "\n";
        std::printf("%4s  %-13s  %-30s  %-13s  %-30s  %s\n", "wing", "theta", "puncture", "Upsilon",
                    "mu", "nu");
        for (int h = 0; h < t.n; ++h) {
            char p[40], m[40];
            std::snprintf(p, sizeof(p), "(%.10g, %.10g)", t.punctures[h].real(), t.punctures[h].imag());
            std::snprintf(m, sizeof(m), "(%.10g, %.10g)", t.mu[h].real(), t.mu[h].imag());
            std::printf("%4d  %-13.10g  %-30s  %-13.10g  %-30s  %.10g\n", h, t.theta[h], p,
                        t.upsilon[h], m, t.nu[h]);
        }
    }
    if (!mesh_path.empty()) {
        auto stats = export_mesh(t, mesh_path, resolution, delta_mesh);
        std::cout << "mesh: " << stats.vertices << " vertices, " << stats.triangles
                  << " triangles, wing-period error " << report_detail::num(stats.max_wing_period_error)
                  << " -> " << mesh_path << "\n";
    }
    return 0;
}

int cmd_classify(Complex t1, Complex t2) {
    auto entries = genus3_catalog(t1, t2);
    std::cout << "genus-3 catalog for T1 = " << report_detail::cnum(t1)
              << ", T2 = " << report_detail::cnum(t2) << "\n";
    for (const auto& e : entries) {
        std::cout << "  " << e.name << ": " << (e.admissible ? "admissible" : "not admissible")
                  << "\n    constraints: " << e.constraints << "\n";
        if (!e.m_of_vertex_cut.empty()) {
            std::cout << "    shortest half-edges at the first vertex:";
            for (const auto& id : e.m_of_vertex_cut) std::cout << " " << id;
            std::cout << "\n";
        }
        for (const auto& note : e.notes) std::cout << "    note: " << note << "\n";
    }
    auto rpt = classify_two_face_graphs();
    std::cout << "two-face rotation systems: " << rpt.candidates << " candidates, "
              << rpt.rejected_non_orientable << " non-orientable, " << rpt.surviving
              << " combinatorial types:\n";
    for (const auto& name : rpt.type_names) std::cout << "  - " << name << "\n";
    return rpt.surviving == 2 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"saddlenet: balance and rigidity of saddle-tower configurations on flat tori"};
    app.require_subcommand(1);

    std::string config_path, report_path, out_path;
    double tol = -1;
    auto* check = app.add_subcommand("check", "verify balance and rigidity of a configuration");
    check->add_option("config", config_path, "configuration document (JSON)")->required();
    check->add_option("--tol", tol, "balance tolerance (default from the document)");
    check->add_option("--report", report_path, "also write the report to this file");

    bool horizontal = false, phases_mode = false;
    auto* solve = app.add_subcommand("solve", "solve for balance and write an updated document");
    solve->add_option("config", config_path, "configuration document (JSON)")->required();
    solve->add_flag("--horizontal", horizontal, "solve the horizontal balance for vertex positions");
    solve->add_flag("--phases", phases_mode, "solve the vertical balance for the phase function");
    solve->add_option("--out", out_path, "output path (stdout if omitted)");

    std::string family = "symmetric", theta_csv, sigma_csv, mesh_path;
    int n = 4, resolution = 48;
    double psi = kPi / 4, delta_mesh = 0.05;
    bool table = false;
    auto* tower = app.add_subcommand("tower", "analyze a saddle tower; optionally export a mesh");
    tower->add_option("--family", family, "symmetric | isosceles6 | custom");
    tower->add_option("--n", n, "number of wings (symmetric family)");
    tower->add_option("--psi", psi, "family parameter");
    tower->add_option("--theta", theta_csv, "custom wing angles, comma separated");
    tower->add_option("--sigma", sigma_csv, "custom wing signs (+-1), comma separated");
    tower->add_option("--mesh", mesh_path, "write a one-period OBJ mesh here");
    tower->add_option("--resolution", resolution, "mesh resolution (rings)");
    tower->add_option("--delta", delta_mesh, "wing cutoff radius in the adapted coordinate");
    tower->add_flag("--table", table, "print the Upsilon/mu/nu/phase table");

    std::pair<double, double> t1{1.0, 0.0}, t2{0.0, 1.0};
    auto* classify = app.add_subcommand("classify-genus3", "the four two-face families on a torus");
    classify->add_option("--t1", t1, "T1 as re,im")->delimiter(',');
    classify->add_option("--t2", t2, "T2 as re,im")->delimiter(',');

    auto* verify = app.add_subcommand("verify", "run the built-in battery of known values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(check)) return cmd_check(config_path, tol, report_path);
        if (app.got_subcommand(solve)) return cmd_solve(config_path, horizontal, phases_mode, out_path);
        if (app.got_subcommand(tower))
            return cmd_tower(family, n, psi, theta_csv, sigma_csv, mesh_path, resolution, delta_mesh,
                             table || mesh_path.empty());
        if (app.got_subcommand(classify))
            return cmd_classify(Complex(t1.first, t1.second), Complex(t2.first, t2.second));
        if (app.got_subcommand(verify)) {
            int failures = run_checks(std::cout, builtin_checks());
            std::cout << (failures == 0 ? "all checks passed\n" : std::to_string(failures) + " checks failed\n");
            return failures == 0 ? 0 : 2;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
