#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "saddlenet/configuration.hpp"
#include "saddlenet/genus3.hpp"
#include "saddlenet/vertical.hpp"

using namespace saddlenet;

namespace {

const Complex I(0, 1);

/// Meeks graph with Scherk (psi = pi/4) towers on the square torus:
/// mu = 0 identically, Upsilon = 2 on every wing.
Configuration meeks_square_config(double a, double b, std::optional<double> K_override = {}) {
    auto gr = meeks_graph(1.0, I);
    auto phases = meeks_phases(gr.graph, a, b);
    std::array<double, 2> shifts = {-a - b, b - a};
    AssembleOptions opt;
    opt.K_override = K_override;
    return assemble(gr.graph, gr.rep, phases, shifts, {Complex(0), Complex(0)}, opt);
}

}  // namespace

TEST_CASE("xi solves the deformation system", "[vertical]") {
    SECTION("Scherk towers on the square torus: mu = 0 gives xi = 0") {
        auto c = meeks_square_config(0.3, 0.8);
        for (int h = 0; h < c.graph.num_half_edges(); ++h) CHECK(std::abs(c.mu[h]) < 1e-10);
        auto xi = solve_xi(c.graph, c.rep, c.mu);
        for (int h = 0; h < c.graph.num_half_edges(); ++h) CHECK(std::abs(xi[h]) < 1e-10);
        // linear-solve oracle: the residuals of the defining equations vanish
        auto d = edge_data(c.graph, c.rep);
        for (Complex r : DF_hor_apply(c.graph, d.x, vertex_cut_basis(c.graph), xi))
            CHECK(std::abs(r) < 1e-12);
    }
    SECTION("Lambda_i = lambda T_i shifts xi by lambda x") {
        auto c = meeks_square_config(0.4, 0.2);
        Complex lam(0.31, -0.22);
        auto xi0 = solve_xi(c.graph, c.rep, c.mu);
        auto xi1 = solve_xi(c.graph, c.rep, c.mu, lam * c.rep.T1, lam * c.rep.T2);
        auto d = edge_data(c.graph, c.rep);
        for (int h = 0; h < c.graph.num_half_edges(); ++h)
            CHECK(std::abs(xi1[h] - xi0[h] - lam * d.x[h]) < 1e-10);
    }
    SECTION("translating one tower's mu leaves xi unchanged") {
        auto c = meeks_square_config(0.1, 0.5);
        auto xi0 = solve_xi(c.graph, c.rep, c.mu);
        // add a constant to the mu of all wings at vertex 0
        std::vector<Complex> mus(c.graph.num_half_edges());
        for (int h = 0; h < c.graph.num_half_edges(); ++h)
            mus[h] = c.mu[h] + (c.graph.vertex_of(h) == 0 ? Complex(0.7, -0.4) : Complex(0));
        auto mu2 = EdgeField<Complex>::raw(c.graph, mus);
        auto xi1 = solve_xi(c.graph, c.rep, mu2);
        for (int h = 0; h < c.graph.num_half_edges(); ++h) CHECK(std::abs(xi1[h] - xi0[h]) < 1e-10);
    }
    SECTION("a non-rigid graph is refused") {
        auto gr = three_lines_graph(1.0, std::polar(1.0, kPi / 3.0));
        auto sigma = gr.graph.orient();
        auto towers = build_vertex_towers(gr.graph, gr.rep, sigma);
        std::vector<Complex> mus(gr.graph.num_half_edges(), 0.0);
        auto mu = EdgeField<Complex>::raw(gr.graph, mus);
        CHECK_THROWS_MATCHES(solve_xi(gr.graph, gr.rep, mu), NumericalError,
                             Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("SingularSystem")));
    }
}

TEST_CASE("interaction coefficients K", "[vertical]") {
    SECTION("Meeks square torus with Scherk towers: K = 4 on every edge") {
        auto c = meeks_square_config(0.2, 0.9);
        auto xi = solve_xi(c.graph, c.rep, c.mu);
        auto K = K_field(c.graph, c.rep, c.upsilon, xi);
        for (int h = 0; h < c.graph.num_half_edges(); ++h)
            CHECK_THAT(K[h], Catch::Matchers::WithinAbs(4.0, 1e-9));
    }
    SECTION("Lambda shift scales K by exp(-l Re lambda)") {
        auto c = meeks_square_config(0.2, 0.9);
        Complex lam(0.17, 0.53);
        auto xi0 = solve_xi(c.graph, c.rep, c.mu);
        auto xi1 = solve_xi(c.graph, c.rep, c.mu, lam * c.rep.T1, lam * c.rep.T2);
        auto K0 = K_field(c.graph, c.rep, c.upsilon, xi0);
        auto K1 = K_field(c.graph, c.rep, c.upsilon, xi1);
        auto d = edge_data(c.graph, c.rep);
        for (int e = 0; e < c.graph.num_edges(); ++e) {
            int h = c.graph.edge_rep(e);
            double want = K0[h] * std::exp(-d.edge_length[e] * lam.real());
            CHECK_THAT(K1[h], Catch::Matchers::WithinAbs(want, 1e-10));
        }
    }
    SECTION("K is invariant under adapted coordinate rescalings") {
        // kappa_h > 0 changes Upsilon_h -> Upsilon_h/kappa_h and
        // mu_h -> mu_h + e^{i theta} log kappa_h; K must not move
        auto c = meeks_square_config(0.0, 0.0);
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> U(0.5, 2.0);
        std::vector<double> kappa(c.graph.num_half_edges());
        for (auto& k : kappa) k = U(rng);
        auto d = edge_data(c.graph, c.rep);
        std::vector<double> ups(c.graph.num_half_edges());
        std::vector<Complex> mus(c.graph.num_half_edges());
        for (int h = 0; h < c.graph.num_half_edges(); ++h) {
            ups[h] = c.upsilon[h] / kappa[h];
            mus[h] = c.mu[h] + d.unit[h] * std::log(kappa[h]);
        }
        auto xi0 = solve_xi(c.graph, c.rep, c.mu);
        auto K0 = K_field(c.graph, c.rep, c.upsilon, xi0);
        auto xi1 = solve_xi(c.graph, c.rep, EdgeField<Complex>::raw(c.graph, mus));
        auto K1 = K_field(c.graph, c.rep, EdgeField<double>::raw(c.graph, ups), xi1);
        for (int h = 0; h < c.graph.num_half_edges(); ++h)
            CHECK_THAT(K1[h], Catch::Matchers::WithinAbs(K0[h], 1e-10));
    }
}

TEST_CASE("vertical forces", "[vertical]") {
    SECTION("trivial phases balance every cut") {
        for (double trivial : {0.0, kPi}) {
            auto gr = necessary_cuts_graph();
            auto d = edge_data(gr.graph, gr.rep);
            auto K = EdgeField<double>::sym(gr.graph, std::vector<double>(gr.graph.num_edges(), 1.3));
            auto phi = EdgeField<double>::antisym(gr.graph,
                                                  std::vector<double>(gr.graph.num_edges(), trivial));
            for (const Cut& b : all_cuts(gr.graph, &d.edge_length))
                CHECK(std::abs(F_ver(gr.graph, b, K, phi)) < 1e-12);
        }
    }
    SECTION("Meeks orthogonal torus: phases (a,-b,-a,b) balance") {
        auto c = meeks_square_config(0.7, 0.25);
        auto rpt = full_report(c, 1e-10);
        CHECK(rpt.vertical_available);
        CHECK(rpt.vertically_balanced);
        CHECK(rpt.max_vertical_residual < 1e-12);
    }
    SECTION("the cross cut of the necessary-cuts graph ignores vertical-edge phases") {
        auto gr = necessary_cuts_graph();
        const auto& g = gr.graph;
        auto d = edge_data(g, gr.rep);
        auto K = EdgeField<double>::sym(g, std::vector<double>(g.num_edges(), 1.0));
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> U(-kPi, kPi);
        Cut cross;
        for (const Cut& b : all_cuts(g, &d.edge_length))
            if (b.side_mask == 0b0011u) cross = b;
        REQUIRE(cross.half_edges.size() == 4);
        double base = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            // random phases on vertical edges, fixed on horizontals
            std::vector<double> v(g.num_edges(), 0.0);
            for (int e = 0; e < g.num_edges(); ++e) {
                std::string id = g.id(g.edge_rep(e));
                if (id[0] == 'u' || id[0] == 'd') v[e] = U(rng);
                else v[e] = 0.4 + 0.1 * e;
            }
            auto phi = EdgeField<double>::antisym(g, v);
            double f = F_ver(g, cross, K, phi);
            if (trial == 0) base = f;
            CHECK_THAT(f, Catch::Matchers::WithinAbs(base, 1e-12));
        }
    }
}

TEST_CASE("vertical rigidity", "[vertical]") {
    SECTION("all cos(phi) > 0 is rigid") {
        auto gr = necessary_cuts_graph();
        auto d = edge_data(gr.graph, gr.rep);
        auto K = EdgeField<double>::sym(gr.graph, std::vector<double>(gr.graph.num_edges(), 1.0));
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> U(-1.2, 1.2);
        std::vector<double> v(gr.graph.num_edges());
        for (auto& x : v) x = U(rng);
        auto phi = EdgeField<double>::antisym(gr.graph, v);
        CHECK(vertical_rigidity(gr.graph, gr.rep, K, phi).rigid);
    }
    SECTION("Meeks orthogonal torus: rigid iff cos a + cos b != 0") {
        auto rigid_at = [&](double a, double b) {
            auto c = meeks_square_config(a, b);
            auto rpt = full_report(c);
            return rpt.vertical_rigidity.rigid;
        };
        CHECK(rigid_at(0.3, 0.5));
        CHECK_FALSE(rigid_at(kPi / 2 + 0.4, kPi / 2 - 0.4));  // cos a + cos b = 0
        CHECK(rigid_at(2.0, 0.1));
        // determinant changes sign across the degeneracy: bracket it
        auto det_at = [&](double a) {
            auto c = meeks_square_config(a, 0.7);
            auto rpt = full_report(c);
            return rpt.vertical_rigidity.determinant;
        };
        double acrit = kPi - 0.7;  // cos a = -cos b
        CHECK(det_at(acrit - 0.2) * det_at(acrit + 0.2) < 0);
        CHECK(std::abs(det_at(acrit)) < 1e-9);
    }
    SECTION("Meeks on a flat parallelogram torus: rigid iff cos b != 0") {
        // arg(T2/T1) < pi/2: the short pair carries the phases -b, b
        auto gr = meeks_graph(1.0, std::polar(1.0, 0.35 * kPi));
        auto rigid_at = [&](double a, double b) {
            auto c = assemble(gr.graph, gr.rep, meeks_phases(gr.graph, a, b), {-a - b, b - a});
            return full_report(c).vertical_rigidity.rigid;
        };
        CHECK(rigid_at(0.4, 0.3));
        CHECK(rigid_at(kPi / 2, 0.3));           // cos a = 0 is harmless here
        CHECK_FALSE(rigid_at(0.4, kPi / 2));     // cos b = 0 kills the short pair
    }
    SECTION("the aG family is never vertically rigid") {
        auto gr = meeks_graph(1.0, 1.3 * I);  // orthogonal
        for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.4, 1.1}, {kPi / 2, kPi / 2}}) {
            auto phases = ag_phases(gr.graph, a, b);
            std::array<double, 2> shifts = {kPi, b - a};
            auto c = assemble(gr.graph, gr.rep, phases, shifts);
            auto rpt = full_report(c);
            CHECK(rpt.vertically_balanced);
            CHECK_FALSE(rpt.vertical_rigidity.rigid);
        }
    }
}

TEST_CASE("triangular 3x3 phase functions", "[vertical]") {
    auto res = triangular33_determinants();
    SECTION("the two listed phase functions are balanced and rigid with the stated determinants") {
        CHECK_THAT(res.det_first, Catch::Matchers::WithinAbs(-0.75, 1e-9));
        CHECK_THAT(res.det_second, Catch::Matchers::WithinAbs(-315.0 / 4.0, 1e-9));
    }
    SECTION("trivial phases: the determinant is the spanning-tree count") {
        // matrix-tree oracle: brute-force count of spanning trees
        auto gr = triangular_torus_graph(3);
        const auto& g = gr.graph;
        const int nv = g.num_vertices(), ne = g.num_edges();
        REQUIRE(nv == 9);
        REQUIRE(ne == 27);
        // count subsets of 8 edges that connect all 9 vertices
        std::vector<std::pair<int, int>> ends(ne);
        for (int e = 0; e < ne; ++e)
            ends[e] = {g.vertex_of(g.edge_rep(e)), g.vertex_of(g.opp(g.edge_rep(e)))};
        long long trees = 0;
        std::vector<int> comb = {0, 1, 2, 3, 4, 5, 6, 7};
        auto count_components = [&](const std::vector<int>& es) {
            std::vector<int> parent(nv);
            for (int v = 0; v < nv; ++v) parent[v] = v;
            std::function<int(int)> find = [&](int v) {
                while (parent[v] != v) v = parent[v] = parent[parent[v]];
                return v;
            };
            int comp = nv;
            for (int e : es) {
                int a = find(ends[e].first), b = find(ends[e].second);
                if (a != b) {
                    parent[a] = b;
                    --comp;
                }
            }
            return comp;
        };
        // iterate over C(27,8) combinations
        while (true) {
            if (count_components(comb) == 1) ++trees;
            int i = 7;
            while (i >= 0 && comb[i] == ne - 8 + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < 8; ++j) comb[j] = comb[j - 1] + 1;
        }
        CHECK_THAT(res.det_trivial, Catch::Matchers::WithinRel(static_cast<double>(trees), 1e-9));
    }
}

TEST_CASE("phase solver", "[vertical]") {
    SECTION("Meeks orthogonal torus recovers the (a,-b,-a,b) branch") {
        std::array<double, 2> shifts = {0.9, -0.5};
        double a = (-shifts[0] - shifts[1]) / 2, b = (shifts[1] - shifts[0]) / 2;
        auto gr = meeks_graph(1.0, I);
        auto c = meeks_square_config(a, b);
        auto xi = solve_xi(c.graph, c.rep, c.mu);
        auto K = K_field(c.graph, c.rep, c.upsilon, xi);
        // start near the branch
        auto init = meeks_phases(gr.graph, a + 0.15, b - 0.1);
        PhaseSolveStats st;
        auto phi = solve_phases(c.graph, c.rep, K, shifts, init, {}, &st);
        CHECK(st.residual < 1e-12);
        CHECK(st.rigid_at_solution);
        auto want = meeks_phases(gr.graph, a, b);
        for (int h = 0; h < c.graph.num_half_edges(); ++h)
            CHECK(angle_dist(phi[h], want[h]) < 1e-9);
    }
    SECTION("zero shifts from a zero start stay at zero") {
        auto c = meeks_square_config(0.0, 0.0);
        auto xi = solve_xi(c.graph, c.rep, c.mu);
        auto K = K_field(c.graph, c.rep, c.upsilon, xi);
        auto init = EdgeField<double>::antisym(c.graph, std::vector<double>(c.graph.num_edges(), 0.0));
        PhaseSolveStats st;
        auto phi = solve_phases(c.graph, c.rep, K, {0.0, 0.0}, init, {}, &st);
        CHECK(st.iterations == 0);
        for (int h = 0; h < c.graph.num_half_edges(); ++h) CHECK(phi[h] == 0.0);
    }
    SECTION("hexagonal doubling with a strictly shortest pair forces e^{ia} real") {
        // stretch the torus so one honeycomb edge is strictly shortest
        Complex T1 = 1.0, T2 = std::polar(1.25, 0.42 * kPi);
        auto hc = honeycomb_graph(T1, T2, Complex(0.31, 0.22), Complex(0.66, 0.5));
        auto base = double_rep(hc);
        auto solved = solve_balance(base.graph, base.rep);
        auto sigma = base.graph.orient();
        auto towers = build_vertex_towers(base.graph, solved, sigma);
        // shortest edge pair
        auto d = edge_data(base.graph, solved);
        Cut b0 = vertex_cut(base.graph, 0, &d.edge_length);
        REQUIRE(b0.m.size() == 2);  // the doubled copies of the strictly shortest edge
        std::vector<double> ups(base.graph.num_half_edges());
        std::vector<Complex> mus(base.graph.num_half_edges());
        std::vector<int> widx(base.graph.num_half_edges(), -1);
        for (int v = 0; v < base.graph.num_vertices(); ++v) {
            const auto& cyc = base.graph.vertices()[v];
            for (int k = 0; k < static_cast<int>(cyc.size()); ++k) {
                ups[cyc[k]] = towers[v].upsilon[k];
                mus[cyc[k]] = towers[v].mu[k];
            }
        }
        auto xi = solve_xi(base.graph, solved, EdgeField<Complex>::raw(base.graph, mus));
        auto K = K_field(base.graph, solved, EdgeField<double>::raw(base.graph, ups), xi);
        PhaseSolveStats st;
        auto phi = solve_phases(base.graph, solved, K, {0.0, 0.0},
                                EdgeField<double>::antisym(base.graph,
                                                           std::vector<double>(base.graph.num_edges(), 0.3)),
                                {}, &st);
        // the phase on the shortest pair must be 0 or pi
        for (int h : b0.m) {
            double s = std::sin(phi[h]);
            CHECK(std::abs(s) < 1e-9);
        }
    }
}

TEST_CASE("vertical differential and equivariance", "[vertical]") {
    SECTION("DF_ver matches finite differences in vertex-phase coordinates") {
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            auto gr = trial % 2 ? necessary_cuts_graph(1.0, 0.5 + 0.02 * trial)
                                : triangular_torus_graph(2);
            const auto& g = gr.graph;
            auto d = edge_data(g, gr.rep);
            std::vector<double> kv(g.num_edges());
            for (auto& k : kv) k = 0.5 + std::abs(U(rng));
            auto K = EdgeField<double>::sym(g, kv);
            std::vector<double> psi(g.num_vertices());
            for (auto& p : psi) p = U(rng);
            auto phi_of = [&](const std::vector<double>& ps) {
                std::vector<double> v(g.num_edges());
                for (int e = 0; e < g.num_edges(); ++e) {
                    int h = g.edge_rep(e);
                    v[e] = ps[g.vertex_of(g.opp(h))] - ps[g.vertex_of(h)];
                }
                return EdgeField<double>::antisym(g, v);
            };
            auto basis = mdiv_cut_basis(g, d.edge_length);
            Eigen::MatrixXd J = DF_ver_matrix(g, basis, K, phi_of(psi));
            const double step = 1e-6;
            for (int v = 0; v + 1 < g.num_vertices(); ++v) {
                auto plus = psi, minus = psi;
                plus[v] += step;
                minus[v] -= step;
                auto fp = F_ver(g, basis, K, phi_of(plus));
                auto fm = F_ver(g, basis, K, phi_of(minus));
                for (size_t i = 0; i < basis.size(); ++i) {
                    double fd = (fp[i] - fm[i]) / (2 * step);
                    CHECK(std::abs(fd - J(static_cast<int>(i), v)) <=
                          1e-6 * std::max(1.0, std::abs(J(static_cast<int>(i), v))));
                }
            }
        }
    }
    SECTION("F_ver transforms by exp(-l_b Re lambda) under Lambda shifts") {
        auto c = meeks_square_config(0.35, 0.6);
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> U(-0.6, 0.6);
        auto d = edge_data(c.graph, c.rep);
        auto cuts = all_cuts(c.graph, &d.edge_length);
        // generic (unbalanced) phases make the residuals nonzero
        std::vector<double> v(c.graph.num_edges());
        for (auto& x : v) x = U(rng);
        auto phi = EdgeField<double>::antisym(c.graph, v);
        for (int trial = 0; trial < 5; ++trial) {
            Complex lam(U(rng), U(rng));
            auto xi0 = solve_xi(c.graph, c.rep, c.mu);
            auto K0 = K_field(c.graph, c.rep, c.upsilon, xi0);
            auto xi1 = solve_xi(c.graph, c.rep, c.mu, lam * c.rep.T1, lam * c.rep.T2);
            auto K1 = K_field(c.graph, c.rep, c.upsilon, xi1);
            for (const Cut& b : cuts) {
                double f0 = F_ver(c.graph, b, K0, phi);
                double f1 = F_ver(c.graph, b, K1, phi);
                CHECK_THAT(f1, Catch::Matchers::WithinAbs(f0 * std::exp(-b.min_length * lam.real()), 1e-10));
            }
        }
    }
    SECTION("P_ver kills gradients: adding grad f changes no period") {
        auto gr = necessary_cuts_graph();
        const auto& g = gr.graph;
        std::mt19937 rng(13);
        std::uniform_real_distribution<double> U(-2, 2);
        std::vector<double> v(g.num_edges());
        for (auto& x : v) x = U(rng);
        auto phi = EdgeField<double>::antisym(g, v);
        std::vector<double> f(g.num_vertices());
        for (auto& x : f) x = U(rng);
        auto gradf = grad_field(g, f);
        std::vector<double> v2(g.num_edges());
        for (int e = 0; e < g.num_edges(); ++e) v2[e] = v[e] + gradf[g.edge_rep(e)];
        auto phi2 = EdgeField<double>::antisym(g, v2);
        CycleBasis cb = cycle_basis(g, gr.rep.offset);
        for (const Chain& c : cb.star())
            CHECK_THAT(chain_pairing(g, c, phi2), Catch::Matchers::WithinAbs(chain_pairing(g, c, phi), 1e-12));
    }
}
