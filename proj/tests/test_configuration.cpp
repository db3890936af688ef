#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "saddlenet/configuration.hpp"
#include "saddlenet/genus3.hpp"

using namespace saddlenet;

namespace {
const Complex I(0, 1);
}

TEST_CASE("assembly of configurations", "[configuration]") {
    SECTION("aH at the rGL point is a valid configuration") {
        Complex T2 = std::polar(1.0, 2.0 * kPi / 3.0);
        auto gr = ah_graph(1.0, T2);
        double a = 2.0 * kPi / 3.0, b = 2.0 * kPi / 3.0;
        auto c = assemble(gr.graph, gr.rep, ah_phases(gr.graph, a, b), {a, b});
        CHECK(c.towers.size() == 1);
        CHECK(c.towers[0].n == 6);
        // the single tower is the most symmetric six-wing tower
        for (double u : c.towers[0].upsilon) CHECK_THAT(u, Catch::Matchers::WithinAbs(4.0, 1e-9));
        auto rpt = full_report(c);
        CHECK(rpt.balanced);
        CHECK(rpt.rigid);
        CHECK(rpt.tpms_genus == 3);
    }
    SECTION("a vertex with collinear wings is not ordinary") {
        // two vertices joined by four edges all running along one line:
        // orientable, two faces, but every wing polygon is a segment
        std::vector<Complex> pos = {Complex(0.0, 0.0), Complex(0.5, 0.0)};
        std::vector<EdgeSpec> edges = {
            {"1", 0, 1, {0, 0}},
            {"2", 0, 1, {-1, 0}},
            {"3", 0, 1, {1, 0}},
            {"4", 0, 1, {-2, 0}},
        };
        auto gr = build_geometric(2.0, Complex(0, 2.0), pos, edges);
        REQUIRE(gr.graph.genus() == 1);
        auto sigma = gr.graph.orient();
        CHECK_THROWS_MATCHES(build_vertex_towers(gr.graph, gr.rep, sigma), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("NonOrdinaryVertex")));
    }
    SECTION("face period != 0 mod 2*pi is a shift mismatch") {
        auto gr = meeks_graph(1.0, I);
        // phases (a, b, c, d) with a - b + c - d != 0
        std::vector<double> v(gr.graph.num_half_edges());
        auto set = [&](const char* id, double val) {
            int h = gr.graph.require(id);
            v[h] = val;
            v[gr.graph.opp(h)] = -val;
        };
        set("1", 0.3);
        set("2", 0.1);
        set("3", 0.2);
        set("4", 0.25);
        auto phases = EdgeField<double>::raw(gr.graph, v, Symmetry::Antisymmetric);
        CHECK_THROWS_MATCHES(assemble(gr.graph, gr.rep, phases, {0.0, 0.0}), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("ShiftMismatch")));
    }
    SECTION("wrong fundamental shifts are rejected") {
        auto gr = meeks_graph(1.0, I);
        auto phases = meeks_phases(gr.graph, 0.4, 0.3);
        CHECK_THROWS_MATCHES(assemble(gr.graph, gr.rep, phases, {0.0, 0.0}), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("ShiftMismatch")));
        CHECK_NOTHROW(assemble(gr.graph, gr.rep, phases, {-0.7, -0.1}));
    }
    SECTION("2*pi wraps in the face periods are accepted") {
        // aH with a = b = 2*pi/3: the face period is exactly 2*pi
        auto gr = ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0));
        double a = 2.0 * kPi / 3.0;
        CHECK_NOTHROW(assemble(gr.graph, gr.rep, ah_phases(gr.graph, a, a), {a, a}));
    }
    SECTION("non-orientable graphs are rejected") {
        std::vector<std::string> ids = {"p", "-p", "q", "-q", "e", "-e", "f", "-f"};
        std::vector<std::pair<std::string, std::string>> inv = {{"p", "-p"}, {"q", "-q"}, {"e", "-e"}, {"f", "-f"}};
        std::vector<std::vector<std::string>> rot = {{"p", "e", "-p", "f"}, {"q", "-f", "-q", "-e"}};
        auto g = RotationGraph::build(ids, inv, rot);
        TorusRep rep = TorusRep::make(
            g, 1.0, Complex(0, 1), {Complex(0.0, 0.25), Complex(0.0, 0.75)},
            [&] {
                std::vector<Eigen::Vector2i> off(8, Eigen::Vector2i::Zero());
                off[g.require("p")] = {1, 0};
                off[g.require("-p")] = {-1, 0};
                off[g.require("q")] = {1, 0};
                off[g.require("-q")] = {-1, 0};
                off[g.require("-e")] = {0, 0};
                off[g.require("f")] = {0, -1};
                off[g.require("-f")] = {0, 1};
                return off;
            }());
        auto phases = EdgeField<double>::antisym(g, std::vector<double>(g.num_edges(), 0.0));
        CHECK_THROWS_MATCHES(assemble(g, rep, phases, {0.0, 0.0}), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("NotOrientable")));
    }
}

TEST_CASE("full reports of the genus-3 families", "[configuration]") {
    SECTION("aH family: balanced and rigid at generic parameters") {
        Complex T2 = std::polar(1.1, 0.52 * kPi);
        auto gr = ah_graph(1.0, T2);
        auto c = assemble(gr.graph, gr.rep, ah_phases(gr.graph, 0.9, -0.4), {0.9, -0.4});
        auto rpt = full_report(c);
        CHECK(rpt.horizontal.balanced);
        CHECK(rpt.horizontal.rigid);
        CHECK(rpt.vertically_balanced);
        CHECK(rpt.vertical_rigidity.rigid);
        CHECK(rpt.tpms_genus == 3);
    }
    SECTION("aG family: balanced but vertically non-rigid") {
        auto gr = meeks_graph(1.0, 1.4 * I);
        auto c = assemble(gr.graph, gr.rep, ag_phases(gr.graph, 0.35, 1.2), {kPi, 1.2 - 0.35});
        auto rpt = full_report(c);
        CHECK(rpt.horizontal.balanced);
        CHECK(rpt.horizontal.rigid);
        CHECK(rpt.vertically_balanced);
        CHECK_FALSE(rpt.vertical_rigidity.rigid);
        CHECK_FALSE(rpt.rigid);
    }
    SECTION("aI family: balanced, non-rigid, shifts differ by pi") {
        auto gr = meeks_graph(1.0, std::polar(1.0, 0.4 * kPi));  // arg < pi/2
        double c0 = 0.55, s1 = 0.8;
        auto phases = ai_phases(gr.graph, c0, s1, true);
        // shifts in this convention: (phi2 - phi1, phi3 - phi2)
        double p1 = phases[gr.graph.require("2")] - phases[gr.graph.require("1")];
        double p2 = phases[gr.graph.require("3")] - phases[gr.graph.require("2")];
        CHECK(angle_dist(p1 - p2, kPi) < 1e-12);  // the aI constraint
        auto c = assemble(gr.graph, gr.rep, phases, {p1, p2});
        auto rpt = full_report(c);
        CHECK(rpt.vertically_balanced);
        CHECK_FALSE(rpt.vertical_rigidity.rigid);
    }
    SECTION("Meeks family on the square torus") {
        auto gr = meeks_graph(1.0, I);
        auto c = assemble(gr.graph, gr.rep, meeks_phases(gr.graph, 0.5, 0.1), {-0.6, -0.4});
        auto rpt = full_report(c);
        CHECK(rpt.balanced);
        CHECK(rpt.rigid);
    }
}

TEST_CASE("genus-3 catalog", "[configuration]") {
    SECTION("square torus: aG admissible, aI not") {
        auto entries = genus3_catalog(1.0, I);
        std::map<std::string, bool> adm;
        for (const auto& e : entries) adm[e.name] = e.admissible;
        CHECK(adm.at("Meeks"));
        CHECK(adm.at("aH"));
        CHECK(adm.at("aG"));
        CHECK_FALSE(adm.at("aI"));
    }
    SECTION("generic torus: aI admissible, aG not") {
        auto entries = genus3_catalog(1.0, std::polar(1.2, 0.44 * kPi));
        std::map<std::string, bool> adm;
        for (const auto& e : entries) adm[e.name] = e.admissible;
        CHECK_FALSE(adm.at("aG"));
        CHECK(adm.at("aI"));
    }
    SECTION("hexagonal torus: the aH entry records the rGL point") {
        auto entries = genus3_catalog(1.0, std::polar(1.0, 2.0 * kPi / 3.0));
        bool found = false;
        for (const auto& e : entries)
            if (e.name == "aH")
                for (const auto& n : e.notes) found = found || n.find("rGL") != std::string::npos;
        CHECK(found);
    }
    SECTION("flat rectangle-like torus: the Meeks short pair is {2, 4}") {
        auto entries = genus3_catalog(1.0, std::polar(1.1, 0.4 * kPi));
        for (const auto& e : entries)
            if (e.name == "Meeks") {
                std::set<std::string> m(e.m_of_vertex_cut.begin(), e.m_of_vertex_cut.end());
                CHECK(m == std::set<std::string>{"2", "4"});
            }
    }
}

TEST_CASE("classification of two-face rotation systems", "[configuration]") {
    auto rpt = classify_two_face_graphs();
    SECTION("exactly two combinatorial types survive") {
        CHECK(rpt.surviving == 2);
        std::set<std::string> names(rpt.type_names.begin(), rpt.type_names.end());
        CHECK(names.count("aH-type (one vertex, three loops)") == 1);
        CHECK(names.count("Meeks-type (two vertices, four edges)") == 1);
    }
    SECTION("rejections are accounted for") {
        CHECK(rpt.candidates > 0);
        CHECK(rpt.rejected_non_orientable > 0);
    }
    SECTION("oracle: enumerating rotations as well gives the same types") {
        // independent enumeration over both rotations and involutions for
        // the one-vertex case (5! x 15 candidates)
        std::set<std::string> encodings;
        std::vector<int> perm = {1, 2, 3, 4, 5};
        std::sort(perm.begin(), perm.end());
        do {
            std::vector<std::vector<std::string>> rot = {{
                "h0", "h" + std::to_string(perm[0]), "h" + std::to_string(perm[1]),
                "h" + std::to_string(perm[2]), "h" + std::to_string(perm[3]),
                "h" + std::to_string(perm[4])}};
            std::vector<int> opp(6, -1);
            classify_detail::enumerate_involutions(6, opp, [&] {
                std::vector<std::string> ids = {"h0", "h1", "h2", "h3", "h4", "h5"};
                std::vector<std::pair<std::string, std::string>> inv;
                for (int i = 0; i < 6; ++i)
                    if (i < opp[i]) inv.push_back({ids[i], ids[opp[i]]});
                try {
                    auto g = RotationGraph::build(ids, inv, rot);
                    if (g.num_faces() == 2 && g.orientable())
                        encodings.insert(classify_detail::canonical_encoding(g));
                } catch (const ValidationError&) {
                }
            });
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(encodings.size() == 1);
        // and it is the aH type found by the classifier
        bool matches = false;
        for (const auto& enc : rpt.type_encodings) matches = matches || encodings.count(enc) == 1;
        CHECK(matches);
    }
    SECTION("two-vertex candidates with loops never survive") {
        // any involution pairing two half-edges at the same vertex dies
        std::vector<int> opp(8, -1);
        int survivors_with_loop = 0;
        classify_detail::enumerate_involutions(8, opp, [&] {
            bool has_loop = false;
            for (int i = 0; i < 8; ++i)
                if ((i < 4) == (opp[i] < 4) && i < opp[i]) has_loop = true;
            if (!has_loop) return;
            std::vector<std::string> ids(8);
            for (int i = 0; i < 8; ++i) ids[i] = "h" + std::to_string(i);
            std::vector<std::pair<std::string, std::string>> inv;
            for (int i = 0; i < 8; ++i)
                if (i < opp[i]) inv.push_back({ids[i], ids[opp[i]]});
            std::vector<std::vector<std::string>> rot = {{"h0", "h1", "h2", "h3"},
                                                         {"h4", "h5", "h6", "h7"}};
            try {
                auto g = RotationGraph::build(ids, inv, rot);
                if (g.num_faces() == 2 && g.orientable()) ++survivors_with_loop;
            } catch (const ValidationError&) {
            }
        });
        CHECK(survivors_with_loop == 0);
    }
}

TEST_CASE("isomorphism canonicalization is label-independent", "[configuration]") {
    // relabel the aH graph and check the canonical encodings agree
    auto g1 = ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0)).graph;
    std::vector<std::string> ids = {"x", "y", "z", "-x", "-y", "-z"};
    std::vector<std::pair<std::string, std::string>> inv = {{"x", "-x"}, {"y", "-y"}, {"z", "-z"}};
    // same cyclic structure as the aH rotation (a, -c, b, -a, c, -b)
    std::vector<std::vector<std::string>> rot = {{"x", "-z", "y", "-x", "z", "-y"}};
    auto g2 = RotationGraph::build(ids, inv, rot);
    CHECK(classify_detail::canonical_encoding(g1) == classify_detail::canonical_encoding(g2));
}

TEST_CASE("assembly rejects graphs of the wrong genus", "[configuration]") {
    // two vertices, four edges, all faces of size 2: Euler characteristic 2,
    // a sphere system; accepted by build() but refused by assembly
    std::vector<std::string> ids = {"A1", "-A1", "A2", "-A2", "B1", "-B1", "B2", "-B2"};
    std::vector<std::pair<std::string, std::string>> inv = {
        {"A1", "-A1"}, {"A2", "-A2"}, {"B1", "-B1"}, {"B2", "-B2"}};
    std::vector<std::vector<std::string>> rot = {{"A2", "A1", "B2", "B1"},
                                                 {"-A1", "-A2", "-B1", "-B2"}};
    auto g = RotationGraph::build(ids, inv, rot);
    REQUIRE(g.genus() == 0);
    std::vector<Eigen::Vector2i> off(8, Eigen::Vector2i::Zero());
    off[g.require("B1")] = {-1, 0};
    off[g.require("-B1")] = {1, 0};
    off[g.require("B2")] = {-1, 0};
    off[g.require("-B2")] = {1, 0};
    TorusRep rep = TorusRep::make(g, 2.0, Complex(0, 2.0), {Complex(0, 0), Complex(0.5, 0)}, off);
    auto phases = EdgeField<double>::antisym(g, std::vector<double>(4, 0.0));
    CHECK_THROWS_MATCHES(assemble(g, rep, phases, {0.0, 0.0}), ValidationError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("GenusNotOne")));
}
