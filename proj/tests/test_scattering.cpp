#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "scatter/scattering.hpp"
#include "scatter/seed.hpp"

using namespace scat;

namespace {

ScatteringDiagram complete_fixture(const SeedDatum& s, int order, bool translated = false) {
    auto initial = initial_diagram(s, order);
    if (translated) initial = translate_for_positive_chamber(initial);
    return consistent_completion(initial, order, s.r(), ydual_of(s));
}

} // namespace

TEST_CASE("A2 completion adds exactly the (1,-1) ray") {
    ScatteringDiagram d = complete_fixture(fixtures::a2(), 6);
    REQUIRE(d.walls.size() == 3);

    int rays = 0;
    for (const auto& w : d.walls) {
        if (w.support.kind == SupportKind::Line) continue;
        ++rays;
        CHECK(w.support.base == qvec2(0, 0));
        CHECK(w.support.dir == ivec2(1, -1));
        CHECK(w.normal == ivec2(1, 1));
        CHECK(w.func.base.m == ivec2(-1, 1));
        CHECK(w.func.base.q == std::vector<int>{1, 1});
        CHECK(w.func.coeffs == std::vector<Int>{Int(1)});
        CHECK_FALSE(w.incoming());
    }
    CHECK(rays == 1);

    // initial walls along the axes, incoming
    for (const auto& w : d.walls)
        if (w.support.kind == SupportKind::Line) CHECK(w.incoming());
}

TEST_CASE("initial A2 diagram is inconsistent before completion") {
    // The four-crossing loop obstruction sits at total y-degree 2, so order 3
    // is the first truncation that can see it.
    SeedDatum s = fixtures::a2();
    ScatteringDiagram raw{3, 2, initial_diagram(s, 3)};
    raw = normalize(raw);
    ConsistencyReport rep = check_consistency(raw, qvec2(0, 0));
    CHECK_FALSE(rep.consistent);
    CHECK_FALSE(rep.image_x == TruncatedSeries::monomial(ExponentPair(ivec2(1, 0), {0, 0}), 1, 3));

    ScatteringDiagram done = complete_fixture(s, 6);
    CHECK(check_consistency(done, qvec2(0, 0)).consistent);
}

TEST_CASE("single wall is consistent on its own") {
    SeedDatum s = fixtures::a2();
    auto walls = initial_diagram(s, 4);
    ScatteringDiagram d{4, 2, {walls[0]}};
    d = normalize(d);
    CHECK(check_consistency(d, qvec2(0, 0)).consistent);
}

TEST_CASE("empty initial set completes to the empty diagram") {
    ScatteringDiagram d = consistent_completion({}, 6, 0, std::vector<QVec2>{});
    CHECK(d.walls.empty());
    CHECK(check_consistency(d, qvec2(0, 0)).consistent);
}

TEST_CASE("Kronecker completion is positive and lives in the fourth quadrant") {
    ScatteringDiagram d = complete_fixture(fixtures::kronecker(), 6);
    int rays = 0;
    for (const auto& w : d.walls) {
        for (const auto& c : w.func.coeffs) CHECK(c >= 0);
        if (w.support.kind == SupportKind::Ray) {
            ++rays;
            // every new ray points into the cone spanned by (1,0) and (0,-1)
            CHECK(w.support.dir[0] >= 0);
            CHECK(w.support.dir[1] <= 0);
        }
    }
    CHECK(rays >= 1);
    for (const auto& joint : collect_joints(d)) CHECK(check_consistency(d, joint).consistent);
}

TEST_CASE("completion is idempotent and coherent across orders") {
    for (const SeedDatum& s : {fixtures::a2(), fixtures::kronecker()}) {
        ScatteringDiagram d6 = complete_fixture(s, 6);
        // idempotence: completing the completed walls adds nothing
        ScatteringDiagram again = consistent_completion(d6.walls, 6, s.r(), ydual_of(s));
        CHECK(again.walls.size() == d6.walls.size());
        // order coherence: truncation of the order-6 run equals the order-4 run
        ScatteringDiagram d4 = complete_fixture(s, 4);
        ScatteringDiagram cut = normalize(d6.truncated(4));
        REQUIRE(cut.walls.size() == d4.walls.size());
        for (std::size_t i = 0; i < cut.walls.size(); ++i) {
            CHECK(cut.walls[i].support == d4.walls[i].support);
            CHECK(cut.walls[i].normal == d4.walls[i].normal);
            CHECK(cut.walls[i].func.base == d4.walls[i].func.base);
            CHECK(cut.walls[i].func.coeffs == d4.walls[i].func.coeffs);
        }
    }
}

TEST_CASE("normalize merges duplicated walls and non-primitive normals") {
    SeedDatum s = fixtures::a2();
    auto walls = initial_diagram(s, 6);

    // duplicate copy: (W, 1+t, n) twice -> (W, (1+t)^2, n)
    ScatteringDiagram twice{6, 2, {walls[0], walls[0]}};
    ScatteringDiagram merged = normalize(twice);
    REQUIRE(merged.walls.size() == 1);
    CHECK(merged.walls[0].func.coeff(1) == 2);
    CHECK(merged.walls[0].func.coeff(2) == 1);

    // doubled normal: (W, f, 2n) == (W, f^2, n)
    Wall doubled = walls[0];
    doubled.normal = Int(2) * doubled.normal;
    doubled.qdual = Rat(2) * doubled.qdual;
    ScatteringDiagram dd{6, 2, {doubled}};
    ScatteringDiagram fixedd = normalize(dd);
    REQUIRE(fixedd.walls.size() == 1);
    CHECK(fixedd.walls[0].normal == walls[0].normal);
    CHECK(fixedd.walls[0].func.coeff(1) == 2);

    // trivially-acting wall is dropped
    Wall trivial = walls[0];
    trivial.func = ScatFunction(trivial.func.base, {});
    ScatteringDiagram empty = normalize(ScatteringDiagram{6, 2, {trivial}});
    CHECK(empty.walls.empty());
}

TEST_CASE("normalize preserves path-ordered products") {
    SeedDatum s = fixtures::a2();
    auto walls = initial_diagram(s, 5);
    ScatteringDiagram messy{5, 2, {walls[0], walls[0], walls[1]}};
    messy.walls[0].normal = Int(2) * messy.walls[0].normal;
    messy.walls[0].qdual = Rat(2) * messy.walls[0].qdual;
    messy.walls[0].func = walls[0].func; // (2n, f) alongside (n, f): merged as f^2 * f
    ScatteringDiagram tidy = normalize(messy);

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 12; ++trial) {
        PlanarPath path{{perturbed(Rat(c(rng)) + Rat(1, 3), Rat(c(rng)) + Rat(1, 7)),
                         perturbed(Rat(c(rng)) + Rat(2, 5), Rat(c(rng)) + Rat(3, 11))}};
        TruncatedSeries g = TruncatedSeries::monomial(
            ExponentPair(ivec2(c(rng), c(rng)), {0, 0}), 1, 5);
        CHECK(path_ordered_product(messy, path, g) == path_ordered_product(tidy, path, g));
    }
}

TEST_CASE("path-ordered products: no walls, one wall, closed loop") {
    SeedDatum s = fixtures::a2();
    ScatteringDiagram d = complete_fixture(s, 6);
    TruncatedSeries g = TruncatedSeries::monomial(ExponentPair(ivec2(0, 1), {0, 0}), 1, 6);

    // path inside one chamber crosses nothing
    PlanarPath inside{{perturbed(Rat(1), Rat(1)), perturbed(Rat(2), Rat(3))}};
    CHECK(path_ordered_product(d, inside, g) == g);

    // one crossing downward through the horizontal wall
    PlanarPath down{{perturbed(Rat(1), Rat(1)), perturbed(Rat(1), Rat(-1))}};
    TruncatedSeries img = path_ordered_product(d, down, g);
    TruncatedSeries expect = g;
    expect.add_term(ExponentPair(ivec2(-1, 1), {0, 1}), 1);
    CHECK(img == expect);

    // closed rectangle around the origin acts as the identity (consistency)
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries h =
            TruncatedSeries::monomial(ExponentPair(ivec2(c(rng), c(rng)), {0, 0}), 1, 6);
        PlanarPath loop{{perturbed(Rat(2), Rat(1)), perturbed(Rat(-2), Rat(1)),
                         perturbed(Rat(-2), Rat(-1)), perturbed(Rat(2), Rat(-1)),
                         perturbed(Rat(2), Rat(1))}};
        CHECK(path_ordered_product(d, loop, h) == h);
    }
}

TEST_CASE("path invariance for homotopic generic paths") {
    ScatteringDiagram d = complete_fixture(fixtures::kronecker(), 6);
    TruncatedSeries g = TruncatedSeries::monomial(ExponentPair(ivec2(1, -1), {0, 0}), 1, 6);
    PerturbedPoint a = perturbed(Rat(3), Rat(2));
    PerturbedPoint b = perturbed(Rat(2), Rat(-3));
    PlanarPath direct{{a, b}};
    PlanarPath dogleg{{a, perturbed(Rat(5), Rat(1)), b}};
    CHECK(path_ordered_product(d, direct, g) == path_ordered_product(d, dogleg, g));
}

TEST_CASE("chamber signatures") {
    ScatteringDiagram d = complete_fixture(fixtures::a2(), 6);

    auto sig_pos = locate_chamber(d, PerturbedPoint{qvec2(1, 1), qvec2(1, 2), kDefaultEps2});
    for (int s : sig_pos) CHECK(s == 1);

    auto sig_neg = locate_chamber(d, PerturbedPoint{qvec2(-1, -1), qvec2(-2, -1), kDefaultEps2});
    for (int s : sig_neg) CHECK(s == -1);

    ScatteringDiagram torus{6, 0, {}};
    CHECK(locate_chamber(torus, perturbed(Rat(0), Rat(0))).empty());
}

TEST_CASE("translated three-wall configuration has a positive chamber at the origin") {
    SeedDatum s = fixtures::threewall();
    auto initial = initial_diagram(s, 2);
    ScatteringDiagram probe{2, 3, initial};
    probe = normalize(probe);
    CHECK_FALSE(positive_direction(probe.walls).has_value());

    auto shifted = translate_for_positive_chamber(initial);
    PerturbedPoint origin = perturbed(Rat(0), Rat(0));
    for (const auto& w : shifted) CHECK(w.side(origin).sign() == 1);

    // distinct offsets keep every pairwise joint simple
    ScatteringDiagram moved{2, 3, shifted};
    CHECK(collect_joints(moved).size() == 3);
}

TEST_CASE("conical positive chambers are found when they exist") {
    SeedDatum s = fixtures::a2();
    auto initial = initial_diagram(s, 4);
    auto dir = positive_direction(initial);
    REQUIRE(dir.has_value());
    for (const auto& w : initial) CHECK(dot(*dir, w.qdual) > 0);

    SeedDatum k = fixtures::kronecker();
    auto kd = positive_direction(initial_diagram(k, 4));
    REQUIRE(kd.has_value());
}

TEST_CASE("translated three-wall diagram completes consistently") {
    SeedDatum s = fixtures::threewall();
    auto shifted = translate_for_positive_chamber(initial_diagram(s, 6));
    ScatteringDiagram d = consistent_completion(shifted, 6, 3, ydual_of(s));
    for (const auto& joint : collect_joints(d)) {
        ConsistencyReport rep = check_consistency(d, joint);
        CHECK(rep.consistent);
    }
    for (const auto& w : d.walls)
        for (const auto& c : w.func.coeffs) CHECK(c >= 0);
}
