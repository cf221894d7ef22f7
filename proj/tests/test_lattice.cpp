#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scatter/matrix.hpp"
#include "scatter/numeric.hpp"
#include "scatter/perturb.hpp"

using namespace scat;

TEST_CASE("dual pairing on basis vectors") {
    CHECK(dual_pair(QVec{1, 0}, QVec{0, 1}) == 0);
    CHECK(dual_pair(QVec{1, -1}, QVec{1, 1}) == 0);
    CHECK_THROWS_AS(dual_pair(QVec{1, 0}, QVec{1, 0, 0}), dimension_error);
}

TEST_CASE("dual pairing matches the rank-2 momentum formula") {
    // (a,b).(d,-c) = ad - bc for Lambda = [[0,1],[-1,0]]
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> u(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        Rat a(u(rng)), b(u(rng)), c(u(rng)), d(u(rng));
        CHECK(dual_pair(QVec{a, b}, QVec{d, -c}) == a * d - b * c);
    }
}

TEST_CASE("dual pairing is bilinear") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
    auto rv = [&] {
        QVec v(3);
        for (auto& x : v) x = Rat(num(rng), den(rng));
        return v;
    };
    for (int trial = 0; trial < 40; ++trial) {
        QVec a = rv(), b = rv(), c = rv();
        QVec ab(3);
        for (int i = 0; i < 3; ++i) ab[i] = a[i] + b[i];
        CHECK(dual_pair(ab, c) == dual_pair(a, c) + dual_pair(b, c));
    }
}

TEST_CASE("primitive part factors out the gcd") {
    auto [v1, g1] = primitive_part(IVec{2, 4});
    CHECK(v1 == IVec{1, 2});
    CHECK(g1 == 2);

    auto [v2, g2] = primitive_part(IVec{1, -1});
    CHECK(v2 == IVec{1, -1});
    CHECK(g2 == 1);

    auto [v3, g3] = primitive_part(IVec{0, -3});
    CHECK(v3 == IVec{0, -1});
    CHECK(g3 == 3);

    CHECK_THROWS_AS(primitive_part(IVec{0, 0}), domain_error);
}

TEST_CASE("primitive part scales") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> u(-20, 20), kdist(1, 9);
    for (int trial = 0; trial < 60; ++trial) {
        IVec v{Int(u(rng)), Int(u(rng)), Int(u(rng))};
        bool zero = v[0] == 0 && v[1] == 0 && v[2] == 0;
        if (zero) continue;
        Int k(kdist(rng));
        IVec kv{k * v[0], k * v[1], k * v[2]};
        auto [p1, g1] = primitive_part(v);
        auto [p2, g2] = primitive_part(kv);
        CHECK(p1 == p2);
        CHECK(g2 == k * g1);
    }
}

TEST_CASE("perturbed signs break ties lexicographically") {
    PerturbedPoint p1{qvec2(0, 0), qvec2(1, 0), qvec2(0, 0)};
    CHECK(perturbed_sign(qvec2(1, 0), p1) == 1);

    PerturbedPoint p2{qvec2(1, -1), qvec2(0, 0), qvec2(1, 0)};
    CHECK(perturbed_sign(qvec2(1, 1), p2) == 1);

    PerturbedPoint p3{qvec2(0, 0), qvec2(0, 1), qvec2(0, 1)};
    CHECK(perturbed_sign(qvec2(1, 0), p3) == 0);
}

TEST_CASE("perturbed sign agrees with the base sign away from walls") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> u(-6, 6);
    for (int trial = 0; trial < 80; ++trial) {
        QVec2 f = qvec2(u(rng), u(rng));
        PerturbedPoint p = perturbed(Rat(u(rng)), Rat(u(rng)));
        Rat base = dot(f, p.base);
        if (base == 0) continue;
        CHECK(perturbed_sign(f, p) == sign_of(base));
    }
}

TEST_CASE("Eps arithmetic") {
    Eps a{Rat(0), Rat(2), Rat(-1)}, b{Rat(0), Rat(2), Rat(0)};
    CHECK(a < b);
    CHECK((a - a).is_zero());
    CHECK((a * Rat(3)).c1 == 6);
    CHECK_THROWS_AS(a / Rat(0), domain_error);
}

TEST_CASE("exact linear algebra") {
    MatQ A = MatQ::from_int({{2, 1}, {1, 1}});
    CHECK(A.det() == 1);
    CHECK(A.rank() == 2);
    auto x = solve_linear(A, QVec{Rat(3), Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);

    MatQ S = MatQ::from_int({{1, 2}, {2, 4}});
    CHECK(S.rank() == 1);
    CHECK(S.kernel().size() == 1);
    CHECK_FALSE(solve_linear(S, QVec{Rat(1), Rat(0)}).has_value());
}
