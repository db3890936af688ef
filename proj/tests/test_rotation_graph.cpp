#include <catch2/catch_amalgamated.hpp>

#include "saddlenet/families.hpp"
#include "saddlenet/rotation_graph.hpp"

using namespace saddlenet;

namespace {

const Complex I(0, 1);

RotationGraph two_loops_distinct_annuli() {
    // one loop per vertex in different annuli plus two connecting edges:
    // a valid rotation system that cannot be oriented
    std::vector<std::string> ids = {"p", "-p", "q", "-q", "e", "-e", "f", "-f"};
    std::vector<std::pair<std::string, std::string>> inv = {{"p", "-p"}, {"q", "-q"}, {"e", "-e"}, {"f", "-f"}};
    std::vector<std::vector<std::string>> rot = {{"p", "e", "-p", "f"}, {"q", "-f", "-q", "-e"}};
    return RotationGraph::build(ids, inv, rot);
}

}  // namespace

TEST_CASE("build computes orbit tables and genus", "[rotation_graph]") {
    SECTION("one vertex, three loops (aH diagram)") {
        auto gr = ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0));
        CHECK(gr.graph.num_vertices() == 1);
        CHECK(gr.graph.num_edges() == 3);
        CHECK(gr.graph.num_faces() == 2);
        CHECK(gr.graph.genus() == 1);
    }
    SECTION("two vertices joined by four edges (Meeks graph)") {
        auto gr = meeks_graph(1.0, I);
        CHECK(gr.graph.num_vertices() == 2);
        CHECK(gr.graph.num_edges() == 4);
        CHECK(gr.graph.num_faces() == 2);
        CHECK(gr.graph.genus() == 1);
    }
    SECTION("degree-2 vertices are rejected") {
        std::vector<std::string> ids = {"a", "-a", "b", "-b"};
        std::vector<std::pair<std::string, std::string>> inv = {{"a", "-a"}, {"b", "-b"}};
        std::vector<std::vector<std::string>> rot = {{"a", "b"}, {"-a", "-b"}};
        CHECK_THROWS_MATCHES(RotationGraph::build(ids, inv, rot), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("LowDegree")));
    }
    SECTION("fixed points of the involution are rejected") {
        std::vector<std::string> ids = {"a", "b", "c", "d"};
        std::vector<std::pair<std::string, std::string>> inv = {{"a", "a"}, {"b", "c"}};
        std::vector<std::vector<std::string>> rot = {{"a", "b", "c", "d"}};
        CHECK_THROWS_MATCHES(RotationGraph::build(ids, inv, rot), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("FixedPointInvolution")));
    }
    SECTION("disconnected input is rejected") {
        std::vector<std::string> ids = {"a", "-a", "b", "-b", "c", "-c", "d", "-d"};
        std::vector<std::pair<std::string, std::string>> inv = {{"a", "-a"}, {"b", "-b"}, {"c", "-c"}, {"d", "-d"}};
        std::vector<std::vector<std::string>> rot = {{"a", "b", "-a", "-b"}, {"c", "d", "-c", "-d"}};
        CHECK_THROWS_MATCHES(RotationGraph::build(ids, inv, rot), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("Disconnected")));
    }
}

TEST_CASE("Euler relation holds for accepted genus-1 graphs", "[rotation_graph]") {
    for (const GraphRep& gr : {meeks_graph(1.0, I), ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0)),
                               triangular_torus_graph(2), necessary_cuts_graph(),
                               three_lines_graph(1.0, std::polar(1.0, kPi / 3.0))}) {
        if (gr.graph.genus() == 1)
            CHECK(gr.graph.num_vertices() - gr.graph.num_edges() + gr.graph.num_faces() == 0);
    }
}

TEST_CASE("orient finds the alternating orientation or reports failure", "[rotation_graph]") {
    SECTION("Meeks graph: signs alternate around each vertex") {
        auto gr = meeks_graph(1.0, I);
        auto sigma = gr.graph.orient();
        for (const auto& cyc : gr.graph.vertices())
            for (size_t i = 0; i < cyc.size(); ++i)
                CHECK(sigma[cyc[(i + 1) % cyc.size()]] == -sigma[cyc[i]]);
        for (int h = 0; h < gr.graph.num_half_edges(); ++h)
            CHECK(sigma[gr.graph.opp(h)] == -sigma[h]);
    }
    SECTION("two loops in distinct annuli cannot be oriented") {
        auto g = two_loops_distinct_annuli();
        CHECK_FALSE(g.orientable());
        CHECK_THROWS_MATCHES(g.orient(), ValidationError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("NotOrientable")));
    }
    SECTION("doublings are always orientable") {
        auto hc = honeycomb_graph(1.0, std::polar(1.0, kPi / 3.0), Complex(0.33, 0.19), Complex(0.67, 0.39));
        CHECK(hc.graph.doubling().orientable());
        CHECK(square_lattice_graph(1.0, I).graph.doubling().orientable());
        CHECK(triangular_torus_graph(1).graph.doubling().orientable());
    }
}

TEST_CASE("orientation is unique up to global sign", "[rotation_graph]") {
    // exhaustive check over all sign assignments on small graphs
    auto count_consistent = [](const RotationGraph& g) {
        const int n = g.num_half_edges();
        REQUIRE(n <= 16);
        int count = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            bool ok = true;
            for (int h = 0; h < n && ok; ++h) {
                int sh = (mask >> h) & 1 ? 1 : -1;
                int so = (mask >> g.opp(h)) & 1 ? 1 : -1;
                int sn = (mask >> g.next(h)) & 1 ? 1 : -1;
                ok = (so == -sh) && (sn == -sh);
            }
            if (ok) ++count;
        }
        return count;
    };
    CHECK(count_consistent(meeks_graph(1.0, I).graph) == 2);
    CHECK(count_consistent(ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0)).graph) == 2);
    CHECK(count_consistent(two_loops_distinct_annuli()) == 0);
}

TEST_CASE("parallel classes", "[rotation_graph]") {
    SECTION("Meeks graph: four singleton classes") {
        auto gr = meeks_graph(1.0, I);
        auto classes = gr.graph.parallel_classes();
        CHECK(classes.size() == 4);
        for (const auto& c : classes) CHECK(c.size() == 1);
    }
    SECTION("aH graph: three singleton classes") {
        auto gr = ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0));
        CHECK(gr.graph.parallel_classes().size() == 3);
    }
    SECTION("doubling of the triangle lattice: classes of exactly 2") {
        auto g2 = triangular_torus_graph(1).graph.doubling();
        auto classes = g2.parallel_classes();
        CHECK(classes.size() == 3);
        for (const auto& c : classes) CHECK(c.size() == 2);
    }
    SECTION("union-find oracle agrees on assorted graphs") {
        std::vector<GraphRep> cases;
        cases.push_back(meeks_graph(1.3, Complex(0.2, 1.1)));
        cases.push_back(triangular_torus_graph(2));
        for (const GraphRep& gr : cases) {
            const RotationGraph* g = &gr.graph;
            // oracle: repeatedly merge edge pairs that share a 2-face
            std::vector<int> rep(g->num_edges());
            for (int e = 0; e < g->num_edges(); ++e) rep[e] = e;
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& f : g->faces()) {
                    if (f.size() != 2) continue;
                    int a = rep[g->edge_of(f[0])], b = rep[g->edge_of(f[1])];
                    if (a != b) {
                        int lo = std::min(a, b);
                        for (int& r : rep)
                            if (r == a || r == b) r = lo;
                        changed = true;
                    }
                }
            }
            auto classes = g->parallel_classes();
            std::vector<int> got(g->num_edges());
            for (int c = 0; c < static_cast<int>(classes.size()); ++c)
                for (int e : classes[c]) got[e] = classes[c][0];
            std::vector<int> want(g->num_edges());
            for (int e = 0; e < g->num_edges(); ++e) {
                int r = rep[e];
                int first = e;
                for (int x = 0; x < g->num_edges(); ++x)
                    if (rep[x] == r) {
                        first = x;
                        break;
                    }
                want[e] = first;
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("doubling follows the half-edge rules", "[rotation_graph]") {
    SECTION("square-lattice one-vertex graph: four loops in two parallel pairs") {
        auto g2 = square_lattice_graph(1.0, I).graph.doubling();
        CHECK(g2.num_vertices() == 1);
        CHECK(g2.num_edges() == 4);
        for (int e = 0; e < g2.num_edges(); ++e) CHECK(g2.is_loop(e));
        auto classes = g2.parallel_classes();
        CHECK(classes.size() == 2);
        for (const auto& c : classes) CHECK(c.size() == 2);
    }
    SECTION("honeycomb doubling has doubled degrees and the extra 2-faces") {
        auto hc = honeycomb_graph(1.0, std::polar(1.0, kPi / 3.0), Complex(0.33, 0.19), Complex(0.67, 0.39));
        auto g2 = hc.graph.doubling();
        CHECK(g2.num_vertices() == hc.graph.num_vertices());
        CHECK(g2.num_edges() == 2 * hc.graph.num_edges());
        CHECK(g2.genus() == 1);
        int two_faces = 0;
        for (const auto& f : g2.faces())
            if (f.size() == 2) ++two_faces;
        CHECK(two_faces == hc.graph.num_edges());
    }
    SECTION("counting and validity for assorted inputs") {
        std::vector<GraphRep> cases;
        cases.push_back(meeks_graph(1.0, I));
        cases.push_back(ah_graph(1.0, std::polar(1.0, 2.0 * kPi / 3.0)));
        cases.push_back(triangular_torus_graph(2));
        for (const GraphRep& gr : cases) {
            const RotationGraph* g = &gr.graph;
            auto g2 = g->doubling();
            CHECK(g2.num_vertices() == g->num_vertices());
            CHECK(g2.num_edges() == 2 * g->num_edges());
            CHECK(g2.genus() == g->genus());
            CHECK(g2.orientable());
        }
    }
    SECTION("doubling rejects graphs that already have parallel edges") {
        auto g2 = square_lattice_graph(1.0, I).graph.doubling();
        CHECK_THROWS_AS(g2.doubling(), ValidationError);
    }
}
