#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "isolab/involution.hpp"

using namespace isolab;
using namespace testing_helpers;

namespace {

FieldScalar I() { return FieldScalar::imag_unit(); }

int dim_plus(const Automorphism& s) { return s.eigenspace(FieldScalar(1)).dim(); }
int dim_minus(const Automorphism& s) { return s.eigenspace(FieldScalar(-1)).dim(); }

}  // namespace

TEST_CASE("inner involutions from diagonal group elements") {
    auto sl2 = make_sl(2);
    auto s = parse_automorphism(sl2, "inner:diag(i,-i)");
    CHECK(s.order == 2);
    CHECK(s.is_inner());
    CHECK(dim_plus(s) == 1);
    CHECK(dim_minus(s) == 2);

    auto so8 = make_so(8);
    auto t = parse_automorphism(so8, "inner:diag(i,i,i,i,-i,-i,-i,-i)");
    CHECK(dim_plus(t) == 16);
    CHECK(dim_minus(t) == 12);

    // Int(s) scales E_ab by s_a / s_b
    auto sl4 = make_sl(4);
    std::vector<FieldScalar> d{FieldScalar(1), I(), FieldScalar(-1), -I()};
    Mat S = Mat::Constant(4, 4, FieldScalar(0));
    for (int a = 0; a < 4; ++a) S(a, a) = d[a];
    auto phi = inner_automorphism(sl4, S);
    CHECK(phi.order == 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            Mat E = Mat::Constant(4, 4, FieldScalar(0));
            E(a, b) = FieldScalar(1);
            Vec e = sl4->coords_checked(E);
            CHECK(phi.apply(e) == Vec((d[a] / d[b]) * e));
        }
    CHECK_THROWS_AS(inner_involution(sl4, S), InvalidInput);
    CHECK_THROWS_AS(parse_automorphism(sl4, "inner:diag(1,1,0,1)"), InvalidInput);
    CHECK_THROWS_AS(parse_automorphism(sl4, "inner:diag(1,1,1)"), InvalidInput);
}

TEST_CASE("outer involutions and swaps") {
    for (int n : {3, 4, 5}) {
        auto g = make_sl(n);
        auto th = parse_automorphism(g, "negtranspose");
        CHECK(th.order == 2);
        CHECK_FALSE(th.is_inner());
        CHECK(dim_plus(th) == n * (n - 1) / 2);
        CHECK(dim_minus(th) - dim_plus(th) == g->rank());
    }
    auto sl4 = make_sl(4);
    CHECK(dim_plus(parse_automorphism(sl4, "negtranspose:sp")) == 10);
    CHECK(dim_plus(parse_automorphism(sl4, "negtranspose:antidiag")) == 6);

    auto g = parse_algebra("sl(2)+sl(2)");
    auto sw = parse_automorphism(g, "swap");
    CHECK(sw.order == 2);
    CHECK(dim_plus(sw) == 3);
    auto both = parse_automorphism(g, "both:inner:diag(1,-1)");
    CHECK(dim_plus(both) == 2);
    auto pr = parse_automorphism(g, "pair:id|inner:diag(1,-1)");
    CHECK(dim_plus(pr) == 4);
    CHECK_THROWS_AS(parse_automorphism(sl4, "swap"), InvalidInput);
    CHECK_THROWS_AS(parse_automorphism(sl4, "frobnicate"), InvalidInput);
}

TEST_CASE("composition, conjugation and the automorphism law") {
    auto sl3 = make_sl(3);
    auto a = parse_automorphism(sl3, "negtranspose");
    auto b = parse_automorphism(sl3, "inner:diag(1,1,-1)");
    auto ab = compose(a, b);
    CHECK(ab == parse_automorphism(sl3, "compose:negtranspose,inner:diag(1,1,-1)"));
    CHECK(ab.order == 2);  // diagonal Int commutes with -x^T
    CHECK(conjugate(b, a) == a);
    Mat bad = identity(sl3->dim());
    bad(0, 0) = FieldScalar(2);
    CHECK_THROWS_AS(make_automorphism(sl3, bad, AutKind::outer, std::nullopt, "bad"), InvalidInput);
    Rng rng(3);
    Vec x = rng.vector(sl3->dim(), 4), y = rng.vector(sl3->dim(), 4);
    CHECK(ab.apply(sl3->bracket(x, y)) == sl3->bracket(ab.apply(x), ab.apply(y)));
}

TEST_CASE("matrix expressions") {
    Mat M = parse_matrix_expr("E(1,2)+E(2,1) - 3*E(3,3)", 3);
    CHECK(M == mat({{0, 1, 0}, {1, 0, 0}, {0, 0, -3}}));
    CHECK(parse_matrix_expr("antidiag(1,2,3)", 3) == mat({{0, 0, 1}, {0, 2, 0}, {3, 0, 0}}));
    CHECK_THROWS_AS(parse_matrix_expr("E(4,1)", 3), InvalidInput);
    CHECK_THROWS_AS(parse_matrix_expr("F(1,1)", 3), InvalidInput);
}

TEST_CASE("labels") {
    CHECK(fixed_label(1) == Label::g01);
    CHECK(fixed_label(2) == Label::g10);
    CHECK(fixed_label(3) == Label::g11);
    CHECK(third_label(Label::g01, Label::g10) == Label::g11);
    CHECK(parse_label("g10") == Label::g10);
    CHECK(to_string(Label::g11) == "11");
    CHECK_THROWS_AS(parse_label("2"), InvalidInput);
}

TEST_CASE("quaternionic decomposition of commuting involutions") {
    auto so8 = make_so(8);
    // sigma1 with g0 = so(3)+so(5) type block structure, sigma2 diagonal in the same torus
    auto s1 = parse_automorphism(so8, "inner:diag(1,1,1,-1,-1,1,1,1)");
    auto s2 = parse_automorphism(so8, "inner:diag(1,-1,1,1,1,1,-1,1)");
    auto Q = quaternionic(s1, s2);
    auto dm = Q.dim_matrix();
    CHECK(dm[0][0] + dm[0][1] + dm[1][0] + dm[1][1] == 28);
    for (auto& r : grading_relations(Q)) CHECK_MESSAGE(r.ok, r.name);
    for (auto& r : killing_orthogonality(Q)) CHECK_MESSAGE(r.ok, r.name);
    CHECK(Q.sigma3 == compose(s1, s2));
    for (int k = 1; k <= 3; ++k) {
        CHECK(Q.big_minus(k) == Q.sigma(k).eigenspace(FieldScalar(-1)));
        CHECK(Q.big_plus(k) == Q.sigma(k).eigenspace(FieldScalar(1)));
    }
    CHECK_THROWS_AS(quaternionic(s1, s1), InvalidInput);
    auto sl3 = make_sl(3);
    auto x = parse_automorphism(sl3, "inner:diag(1,1,-1)");
    auto y = parse_automorphism(sl3, "inner:antidiag(1,1,1)");
    CHECK_THROWS_AS(quaternionic(x, y), InvalidInput);
    CHECK_THROWS_AS(quaternionic(x, identity_automorphism(sl3)), InvalidInput);
}

TEST_CASE("dyads") {
    struct Case {
        const char* algebra;
        const char* sigma1;
        const char* t;
    };
    for (Case c : {Case{"sl(2)", "inner:diag(1,-1)", "E(1,2)+E(2,1)"}, Case{"sl(3)", "negtranspose", "diag(1,0,-1)"},
                   Case{"sl(4)", "negtranspose", "diag(1,1,-1,-1)"},
                   Case{"sl(4)", "inner:diag(1,1,1,-1)", "E(1,4)+E(4,1)"}}) {
        auto g = parse_algebra(c.algebra);
        auto s1 = parse_automorphism(g, c.sigma1);
        Vec t = g->coords_checked(parse_matrix_expr(c.t, g->rep_dim()));
        Dyad d = build_dyad(s1, t);
        Mat phi2 = multiply(d.phi.map, d.phi.map);
        CHECK(multiply(phi2, phi2) == identity(g->dim()));
        CHECK(multiply(s1.map, d.sigma2.map) == phi2);
        CHECK(d.sigma2 != s1);
        CHECK(d.sigma2.order == 2);
        auto Q = quaternionic(s1, d.sigma2);
        // phi swaps the two big spaces of sigma1 and sigma2
        CHECK(Q.g01.dim() == Q.g10.dim());
    }
    auto sl2 = make_sl(2);
    auto s1 = parse_automorphism(sl2, "inner:diag(1,-1)");
    auto d = build_dyad(s1, sl2->coords_checked(parse_matrix_expr("E(1,2)+E(2,1)", 2)));
    auto dm = quaternionic(s1, d.sigma2).dim_matrix();
    CHECK(dm[0][0] == 0);
    CHECK(dm[0][1] == 1);
    CHECK(dm[1][0] == 1);
    CHECK(dm[1][1] == 1);
    CHECK_THROWS_AS(build_dyad(s1, sl2->coords_checked(parse_matrix_expr("diag(1,-1)", 2))), InvalidInput);
}

TEST_CASE("canonical triples") {
    for (auto [alg, mu] : {std::pair{"sl(3)", "inner:diag(1,1,-1)"}, std::pair{"sl(4)", "inner:diag(1,1,-1,-1)"},
                           std::pair{"so(8)", "inner:diag(1,-1,1,-1,-1,1,-1,1)"}}) {
        auto g = parse_algebra(alg);
        auto m = parse_automorphism(g, mu);
        auto ct = canonical_triple(g, m);
        CHECK(compose(ct.theta, ct.theta_prime) == m);
        auto dm = quaternionic(ct.theta, ct.theta_prime).dim_matrix();
        CHECK(dm[0][1] == dm[1][0]);
        CHECK(dm[1][1] - dm[0][0] == g->rank());
    }
    auto sl4 = make_sl(4);
    auto ct = canonical_triple(sl4, parse_automorphism(sl4, "inner:diag(1,1,-1,-1)"));
    auto dm = quaternionic(ct.theta, ct.theta_prime).dim_matrix();
    CHECK(dm[0][0] == 2);
    CHECK(dm[0][1] == 4);
    CHECK(dm[1][0] == 4);
    CHECK(dm[1][1] == 5);
    auto sl2 = make_sl(2);
    CHECK_THROWS_AS(canonical_triple(sl2, identity_automorphism(sl2)), InvalidInput);
}

TEST_CASE("a field without i is reported as too small") {
    set_cyclotomic_order(3);
    auto sl2 = make_sl(2);
    CHECK_THROWS_AS(parse_automorphism(sl2, "inner:diag(i,-i)"), FieldTooSmall);
    auto s1 = parse_automorphism(sl2, "inner:diag(1,-1)");
    CHECK_THROWS_AS(build_dyad(s1, sl2->coords_checked(parse_matrix_expr("E(1,2)+E(2,1)", 2))), FieldTooSmall);
    set_cyclotomic_order(8);
}

TEST_CASE("reflections of so(even) are outer") {
    auto so4 = make_so(4, FormConvention::standard);
    CHECK_FALSE(parse_automorphism(so4, "inner:diag(1,1,1,-1)").is_inner());
    CHECK(parse_automorphism(so4, "inner:diag(1,1,-1,-1)").is_inner());
    auto so5 = make_so(5, FormConvention::standard);
    CHECK(parse_automorphism(so5, "inner:diag(1,1,1,1,-1)").is_inner());
    auto so8 = make_so(8);
    CHECK(parse_automorphism(so8, "inner:diag(i,i,i,i,-i,-i,-i,-i)").is_inner());
}
