#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "scatter/engine.hpp"

using namespace scat;

namespace {

TruncatedSeries mono(long mx, long my, std::vector<int> q, int order) {
    return TruncatedSeries::monomial(ExponentPair(ivec2(mx, my), std::move(q)), 1, order);
}

PerturbedPoint random_generic_point(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-12, 12), den(2, 9);
    return perturbed(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

} // namespace

TEST_CASE("torus has only straight lines") {
    ScatteringDiagram torus{6, 0, {}};
    ExponentPair u(ivec2(2, -3), {});
    auto lines = enumerate_broken_lines(torus, u, perturbed(Rat(1), Rat(2)));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].final_exp == u);
    CHECK(lines[0].coeff == 1);
    CHECK(lines[0].events.empty());

    ThetaFunction t = theta_function(torus, u, perturbed(Rat(1), Rat(2)));
    CHECK(t.series == TruncatedSeries::monomial(u, 1, 6));
}

TEST_CASE("theta of index zero is 1") {
    ClusterEngine eng(fixtures::a2());
    CHECK(eng.theta_plus(eng.index(0, 0), 6).series == TruncatedSeries::one(6, 2));
}

TEST_CASE("Kronecker loop element has exactly three broken lines") {
    ClusterEngine eng(fixtures::kronecker());
    auto lines = eng.lines_plus(eng.index(1, -1), 4);
    REQUIRE(lines.size() == 3);
    std::set<std::pair<Int, Int>> finals;
    for (const auto& l : lines) {
        CHECK(l.coeff == 1);
        finals.insert({l.final_exp.m[0], l.final_exp.m[1]});
    }
    CHECK(finals == std::set<std::pair<Int, Int>>{{1, -1}, {-1, 1}, {-1, -1}});

    // full expansion with coefficient variables
    TruncatedSeries expect(4, 2);
    expect.add_term({ivec2(1, -1), {0, 0}}, 1);
    expect.add_term({ivec2(-1, -1), {0, 1}}, 1);
    expect.add_term({ivec2(-1, 1), {1, 1}}, 1);
    CHECK(eng.theta_plus(eng.index(1, -1), 4).series == expect);

    // specialization y -> 1 gives (x1^2 + x2^2 + 1)/(x1 x2)
    LaurentPoly ell = specialize(expect, Specialization::all_ones(2));
    REQUIRE(ell.size() == 3);
    CHECK(ell.at(ivec2(1, -1)) == 1);
    CHECK(ell.at(ivec2(-1, 1)) == 1);
    CHECK(ell.at(ivec2(-1, -1)) == 1);
}

TEST_CASE("A2 thetas from enumeration") {
    ClusterEngine eng(fixtures::a2());

    // u = (0,1), endpoint in the chamber containing the (1,-1) direction:
    // the straight line plus one bend at the horizontal wall.
    PerturbedPoint p = perturbed(Rat(3), Rat(-1));
    ThetaFunction t = theta_function(eng.diagram(4), eng.index(0, 1), p);
    TruncatedSeries expect(4, 2);
    expect.add_term({ivec2(0, 1), {0, 0}}, 1);
    expect.add_term({ivec2(-1, 1), {0, 1}}, 1);
    CHECK(t.series == expect);
    CHECK(enumerate_broken_lines(eng.diagram(4), eng.index(0, 1), p).size() == 2);

    // u = (-1,0) at the positive chamber
    ThetaFunction t2 = eng.theta_plus(eng.index(-1, 0), 4);
    TruncatedSeries expect2(4, 2);
    expect2.add_term({ivec2(-1, 0), {0, 0}}, 1);
    expect2.add_term({ivec2(-1, 1), {1, 0}}, 1);
    CHECK(t2.series == expect2);
}

TEST_CASE("transport agrees with direct enumeration") {
    for (SeedDatum s : {fixtures::a2(), fixtures::kronecker()}) {
        ClusterEngine eng(std::move(s));
        const ScatteringDiagram& d = eng.diagram(4);
        std::mt19937 rng(97);
        int done = 0;
        for (int attempt = 0; attempt < 200 && done < 12; ++attempt) {
            PerturbedPoint p1 = random_generic_point(rng);
            PerturbedPoint p2 = random_generic_point(rng);
            try {
                ExponentPair u = eng.index(1, -1);
                ThetaFunction t1 = theta_function(d, u, p1);
                ThetaFunction moved = transport(d, t1, PlanarPath{{p1, p2}});
                ThetaFunction t2 = theta_function(d, u, p2);
                CHECK(moved.series == t2.series);
                ++done;
            } catch (const genericity_error&) {
                continue; // resample
            }
        }
        CHECK(done == 12);
    }
}

TEST_CASE("transport within a chamber does nothing; torus paths act trivially") {
    ClusterEngine eng(fixtures::a2());
    const ScatteringDiagram& d = eng.diagram(4);
    PerturbedPoint p1 = perturbed(Rat(1), Rat(2));
    PerturbedPoint p2 = perturbed(Rat(3), Rat(1));
    ThetaFunction t = theta_function(d, eng.index(1, 1), p1);
    CHECK(transport(d, t, PlanarPath{{p1, p2}}).series == t.series);

    ScatteringDiagram torus{4, 0, {}};
    ThetaFunction tt = theta_function(torus, ExponentPair(ivec2(2, 1), {}), p1);
    CHECK(transport(torus, tt, PlanarPath{{p1, perturbed(Rat(-5), Rat(-7))}}).series == tt.series);
}

TEST_CASE("theta index with coefficient part factors as y^q * theta") {
    ClusterEngine eng(fixtures::kronecker());
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> m(-2, 2), q(0, 2);
    for (int trial = 0; trial < 8; ++trial) {
        ExponentPair u(ivec2(m(rng), m(rng)), {q(rng), q(rng)});
        ThetaFunction full = eng.theta_plus(u, 6);
        ThetaFunction base = eng.theta_plus(eng.index(u.m), 6);
        TruncatedSeries yq = TruncatedSeries::monomial(ExponentPair(ivec2(0, 0), u.q), 1, 6);
        CHECK(full.series == mul(yq, base.series));
    }
}

TEST_CASE("stationary index u = (0, q)") {
    ClusterEngine eng(fixtures::a2());
    ExponentPair u(ivec2(0, 0), {1, 1});
    ThetaFunction t = eng.theta_plus(u, 5);
    CHECK(t.series == TruncatedSeries::monomial(u, 1, 5));
}

TEST_CASE("leading-term triangularity makes thetas independent") {
    ClusterEngine eng(fixtures::kronecker());
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> m(-2, 2);
    // distinct indices have distinct leading terms z^u, so a nonzero integer
    // combination has a surviving extreme term
    for (int trial = 0; trial < 6; ++trial) {
        std::set<std::pair<int, int>> idx;
        while (idx.size() < 3) idx.insert({m(rng), m(rng)});
        std::vector<TruncatedSeries> ts;
        for (auto [a, b] : idx) ts.push_back(eng.theta_plus(eng.index(a, b), 5).series);
        std::uniform_int_distribution<int> coeff(-3, 3);
        Int c0(coeff(rng)), c1(coeff(rng)), c2(coeff(rng));
        if (c0 == 0 && c1 == 0 && c2 == 0) c0 = 1;
        TruncatedSeries comb = add(add(scale(ts[0], c0), scale(ts[1], c1)), scale(ts[2], c2));
        bool all_zero = c0 == 0 && c1 == 0 && c2 == 0;
        CHECK(comb.is_zero() == all_zero);
    }
}

TEST_CASE("structure constants") {
    ClusterEngine eng(fixtures::kronecker());
    const ScatteringDiagram& d = eng.diagram(6);
    ExponentPair u1 = eng.index(1, -1);

    // q-degrees exactly additive with additive x-exponents -> 1
    CHECK(structure_constants(d, {u1, u1}, eng.index(2, -2)) == 1);

    // u_Q outside the coefficient cone -> 0 (negative entries can't arise)
    CHECK(structure_constants(d, {u1, u1}, ExponentPair(ivec2(2, -2), {0, 1})) == 0);

    // the u_M = 0 slot has no placeable basepoint; the expansion below covers it
    CHECK_THROWS_AS(structure_constants(d, {u1, u1}, ExponentPair(ivec2(0, 0), {1, 1})),
                    domain_error);

    // Chebyshev structure: theta_(1,-1)^2 = theta_(2,-2) + 2 y^(1,1) theta_0,
    // the coefficient form of T_2(l) = l^2 - 2
    TruncatedSeries lhs = mul(eng.theta_plus(u1, 6).series, eng.theta_plus(u1, 6).series);
    TruncatedSeries rhs = eng.theta_plus(eng.index(2, -2), 6).series;
    rhs = add(rhs, scale(TruncatedSeries::monomial(ExponentPair(ivec2(0, 0), {1, 1}), 1, 6), 2));
    CHECK(lhs == rhs);

    // symmetry on random pairs
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> m(-2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        ExponentPair a = eng.index(m(rng), m(rng)), b = eng.index(m(rng), m(rng));
        ExponentPair target = eng.index(a.m + b.m);
        if (is_zero(target.m)) continue;
        CHECK(structure_constants(d, {a, b}, target) == structure_constants(d, {b, a}, target));
    }

    CHECK_THROWS_AS(structure_constants(d, {u1}, ExponentPair(ivec2(0, 0), {1, 0})),
                    domain_error);
}

TEST_CASE("scaled index has scaled broken lines over the same supports") {
    ClusterEngine eng(fixtures::kronecker());
    const ScatteringDiagram& d6 = eng.diagram(6);
    auto lines1 = enumerate_broken_lines(d6, eng.index(1, -1), eng.positive_basepoint());
    for (int k : {2, 3}) {
        ScatteringDiagram dk = eng.diagram(2 * k + 2);
        auto linesk =
            enumerate_broken_lines(dk, eng.index(k * 1, k * -1), eng.positive_basepoint());
        // for every line of theta_u there is one for theta_{ku} with the same
        // support and k-scaled exponents
        for (const auto& l : lines1) {
            bool found = false;
            for (const auto& lk : linesk) {
                if (lk.final_exp.m != Int(k) * l.final_exp.m) continue;
                bool same_q = true;
                for (std::size_t i = 0; i < l.final_exp.q.size(); ++i)
                    if (lk.final_exp.q[i] != k * l.final_exp.q[i]) same_q = false;
                if (same_q) {
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("limit theta at generic and non-generic points") {
    ClusterEngine eng(fixtures::a2());
    const ScatteringDiagram& d = eng.diagram(5);
    ExponentPair u = eng.index(0, 1);

    // generic p: limit equals the plain theta there
    QVec2 p = qvec2(Rat(5, 2), Rat(1, 3));
    ThetaFunction lim = limit_theta(d, u, p, qvec2(Rat(1), Rat(7)));
    ThetaFunction direct = theta_function(d, u, perturbed(p));
    CHECK(lim.series == direct.series);

    // p on the horizontal wall: the two one-sided limits differ by that
    // wall's elementary transformation
    QVec2 pw = qvec2(Rat(7, 3), Rat(0));
    ThetaFunction above = limit_theta(d, u, pw, qvec2(Rat(1, 5), Rat(1)));
    ThetaFunction below = limit_theta(d, u, pw, qvec2(Rat(1, 5), Rat(-1)));
    const Wall* horizontal = nullptr;
    for (const auto& w : d.walls)
        if (w.support.kind == SupportKind::Line && w.normal == ivec2(0, 1)) horizontal = &w;
    REQUIRE(horizontal != nullptr);
    // the path from the mu-side to the mu'-side crosses downward with s = +1
    TruncatedSeries crossed =
        elementary_transform(horizontal->normal, horizontal->func, above.series);
    CHECK(crossed == below.series);

    // torus: z^u at any point
    ScatteringDiagram torus{5, 0, {}};
    ExponentPair ut(ivec2(1, 2), {});
    CHECK(limit_theta(torus, ut, qvec2(Rat(0), Rat(0)), qvec2(Rat(1), Rat(2))).series ==
          TruncatedSeries::monomial(ut, 1, 5));

    // mu along a wall through p is rejected
    CHECK_THROWS_AS(limit_theta(d, u, pw, qvec2(Rat(1), Rat(0))), genericity_error);
}

TEST_CASE("stabilization detects finite theta functions") {
    ClusterEngine eng(fixtures::kronecker());

    auto [ell, ok] = eng.theta_plus_stabilized(eng.index(1, -1), 4);
    CHECK(ok);
    CHECK(ell.series.size() == 3);

    auto [adj, ok2] = eng.theta_plus_stabilized(eng.index(0, 1), 4);
    CHECK(ok2);

    // torus stabilizes immediately
    auto torus_builder = [](int k) { return ScatteringDiagram{k, 0, {}}; };
    auto [tt, ok3] = stabilize(torus_builder, ExponentPair(ivec2(1, 0), {}),
                               perturbed(Rat(1), Rat(1)), 4);
    CHECK(ok3);
    CHECK(tt.series.size() == 1);
}
