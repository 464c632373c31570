#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "isolab/contraction.hpp"

using namespace isolab;
using namespace testing_helpers;

namespace {

QuaternionicDecomposition so8_31() {
    auto g = make_so(8);
    auto s1 = parse_automorphism(g, "inner:diag(i,i,i,i,-i,-i,-i,-i)");
    auto s2 = parse_automorphism(g, "inner:diag(i,-i,-i,-i,i,i,i,-i)");
    return quaternionic(s1, s2);
}

// sl(2) with three commuting involutions: every nonzero label is one-dimensional.
QuaternionicDecomposition sl2_triad() {
    auto g = make_sl(2);
    return quaternionic(parse_automorphism(g, "inner:diag(1,-1)"), parse_automorphism(g, "inner:antidiag(1,1)"));
}

Vec unit(int n, int k) {
    Vec e = Vec::Constant(n, FieldScalar(0));
    e(k) = FieldScalar(1);
    return e;
}

}  // namespace

TEST_CASE("Z2-contraction of sl(2)") {
    auto sl2 = make_sl(2);
    auto c = z2_contract(parse_automorphism(sl2, "inner:diag(1,-1)"));
    CHECK(c.dim() == 3);
    CHECK(c.dim0 == 1);
    CHECK(c.dim1 == 2);
    for (int i = 1; i < 3; ++i)
        for (int j = 1; j < 3; ++j) CHECK(c.bracket(unit(3, i), unit(3, j)) == Vec::Constant(3, FieldScalar(0)));
    // g0 acts as in the parent
    Vec h = unit(3, 0), e = unit(3, 1);
    CHECK(c.lift(c.bracket(h, e)) == sl2->bracket(c.lift(h), c.lift(e)));
    CHECK(c.restrict(c.lift(e)) == e);
    CHECK(det(c.killing()).is_zero());
    CHECK(rank(sl2->killing()) == 3);
}

TEST_CASE("contractions of larger algebras satisfy Jacobi and stay degenerate") {
    auto Q = so8_31();
    for (int k = 1; k <= 3; ++k) {
        auto c = z2_contract(Q.sigma(k));
        CHECK(c.dim() == 28);
        CHECK(c.dim1 == Q.big_minus(k).dim());
        Vec x = Vec::Constant(28, FieldScalar(0)), y = x;
        for (int j = c.dim0; j < 28; ++j) {
            x(j) = FieldScalar(j % 3 - 1);
            y(j) = FieldScalar(j % 5 - 2);
        }
        CHECK(c.bracket(x, y) == Vec::Constant(28, FieldScalar(0)));
    }
    auto sl4 = make_sl(4);
    auto c = z2_contract(parse_automorphism(sl4, "negtranspose"));
    CHECK(c.dim0 == 6);
    CHECK(det(c.killing()).is_zero());
    CHECK_THROWS_AS(z2_contract(identity_automorphism(sl4)), InvalidInput);
}

TEST_CASE("permutations and variants parse") {
    auto p = parse_permutation("10,01,11");
    CHECK(p.alpha == Label::g10);
    CHECK(p.beta == Label::g01);
    CHECK(p.gamma == Label::g11);
    CHECK(p.str() == "10,01,11");
    CHECK(all_permutations().size() == 6);
    CHECK_THROWS_AS(parse_permutation("10,10,11"), InvalidInput);
    CHECK_THROWS_AS(parse_permutation("00,10,11"), InvalidInput);
    CHECK_THROWS_AS(parse_permutation("10,01"), InvalidInput);
    CHECK(parse_variant("b") == Variant::b);
    CHECK_THROWS_AS(parse_variant("c"), InvalidInput);
}

TEST_CASE("degenerated modules of so(8)") {
    auto Q = so8_31();
    const LieAlgebra& g = *Q.algebra;
    Rng rng(17);
    for (const auto& p : all_permutations())
        for (Variant v : {Variant::a, Variant::b}) {
            auto M = degenerate_module(Q, p, v);
            CHECK(M.V.dim() == Q.space(p.alpha).dim() + Q.space(p.gamma).dim());
            CHECK(M.dim_k() == Q.g00.dim() + Q.space(p.beta).dim());
            CHECK(M.first == (v == Variant::a ? p.alpha : p.gamma));
        }
    auto M = degenerate_module(Q, parse_permutation("10,01,11"), Variant::a);
    for (int t = 0; t < 5; ++t) {
        Vec x = rng.element(Q.g01, 3), y0 = rng.element(Q.g10, 3), y1 = rng.element(Q.g11, 3);
        Vec xk = Vec::Constant(M.dim_k(), FieldScalar(0));
        Vec xc = Q.g01.coords(x);
        for (int j = 0; j < xc.size(); ++j) xk(M.dim_k00 + j) = xc(j);
        CHECK(M.act(xk, y0 + y1) == g.bracket(x, y0));
        CHECK(M.act(xk, M.act(xk, y0 + y1)) == g.zero());
        CHECK(M.nil_exp(x, y0 + y1) == y0 + y1 + g.bracket(x, y0));
        Vec z = rng.element(Q.g00, 3);
        Vec zk = Vec::Constant(M.dim_k(), FieldScalar(0));
        Vec zc = Q.g00.coords(z);
        for (int j = 0; j < zc.size(); ++j) zk(j) = zc(j);
        CHECK(M.act(zk, y0 + y1) == g.bracket(z, y0 + y1));
    }
    CHECK_THROWS_AS(M.nil_exp(Q.g10.vector(0), Q.g10.vector(0)), InvalidInput);
}

TEST_CASE("variant a on g+g with the swap is the adjoint module of the contraction") {
    auto sl2 = make_sl(2);
    auto gg = direct_sum(sl2, sl2);
    auto Q = quaternionic(parse_automorphism(gg, "swap"), parse_automorphism(gg, "both:inner:diag(1,-1)"));
    auto M = degenerate_module(Q, parse_permutation("10,01,11"), Variant::a);
    auto c = z2_contract(parse_automorphism(sl2, "inner:diag(1,-1)"));
    REQUIRE(M.dim_k() == c.dim());
    REQUIRE(M.V.dim() == c.dim());

    auto block = [&](const Vec& x, int sign) {
        Mat X = sl2->to_matrix(c.lift(x));
        Mat B = Mat::Constant(4, 4, FieldScalar(0));
        B.block(0, 0, 2, 2) = X;
        B.block(2, 2, 2, 2) = FieldScalar(sign) * X;
        return gg->coords_checked(B);
    };
    auto to_k = [&](int i) {
        Vec w = block(unit(c.dim(), i), 1);
        Vec k = Vec::Constant(M.dim_k(), FieldScalar(0));
        if (i < c.dim0) {
            Vec a = Q.g00.coords(w);
            for (int j = 0; j < a.size(); ++j) k(j) = a(j);
        } else {
            Vec a = Q.g01.coords(w);
            for (int j = 0; j < a.size(); ++j) k(M.dim_k00 + j) = a(j);
        }
        return k;
    };
    for (int i = 0; i < c.dim(); ++i)
        for (int j = 0; j < c.dim(); ++j) {
            Vec lhs = block(c.bracket(unit(c.dim(), i), unit(c.dim(), j)), -1);
            CHECK(lhs == M.act(to_k(i), block(unit(c.dim(), j), -1)));
        }
}

TEST_CASE("the two variants are dual") {
    auto Q = so8_31();
    for (const auto& p : all_permutations()) {
        auto a = degenerate_module(Q, p, Variant::a);
        auto b = degenerate_module(Q, p, Variant::b);
        auto r = duality_check(a, b);
        CHECK(r.invariant);
        CHECK(r.nondegenerate);
        CHECK(r.gram_rank == a.V.dim());
    }
    Rng rng(4);
    auto a = degenerate_module(Q, parse_permutation("01,10,11"), Variant::a);
    auto b = degenerate_module(Q, parse_permutation("01,10,11"), Variant::b);
    for (int t = 0; t < 20; ++t) {
        Vec v = rng.element(a.V, 3), w = rng.element(a.V, 3);
        Vec x = rng.vector(a.dim_k(), 3);
        CHECK((Q.algebra->killing(a.act(x, v), w) + Q.algebra->killing(v, b.act(x, w))).is_zero());
    }
    CHECK(Q.algebra->killing(Q.algebra->zero(), Q.algebra->zero()).is_zero());
    CHECK_THROWS_AS(duality_check(b, a), InvalidInput);
}

TEST_CASE("nilradical orbit dimensions") {
    Rng rng(6);
    auto T = sl2_triad();
    REQUIRE(T.g00.dim() == 0);
    for (const auto& p : all_permutations())
        for (Variant v : {Variant::a, Variant::b}) {
            auto M = degenerate_module(T, p, v);
            auto o = max_nilradical_orbit_dim(M, rng);
            CHECK(o.bound == 1);
            CHECK(o.max_orbit_dim == 1);
            CHECK(o.witness_found);
            CHECK(nilradical_orbit_dim(M, T.algebra->zero()) == 0);
        }
    auto Q = so8_31();
    for (const auto& p : all_permutations()) {
        auto M = degenerate_module(Q, p, Variant::a);
        auto o = max_nilradical_orbit_dim(M, rng);
        CHECK_MESSAGE(o.max_orbit_dim < o.bound, p.str());
        CHECK_FALSE(o.witness_found);
    }
}

TEST_CASE("generic stabilizers") {
    Rng rng(12);
    auto T = sl2_triad();
    auto M = degenerate_module(T, parse_permutation("10,01,11"), Variant::a);
    auto r = generic_stabilizer(M, rng);
    CHECK(r.ok());
    CHECK(r.dim_second_xi == 0);
    CHECK(r.stabilizer_dim() == 0);
    CHECK(r.trdeg_a == 1);
    CHECK(r.trdeg_b == 1);

    auto Q = so8_31();
    for (const auto& p : all_permutations())
        for (Variant v : {Variant::a, Variant::b}) {
            auto V = degenerate_module(Q, p, v);
            auto s = generic_stabilizer(V, rng, 3);
            CHECK_MESSAGE(s.stabilizer == s.predicted, p.str());
            CHECK_MESSAGE(s.agree, p.str());
            CHECK_MESSAGE(s.rosenlicht, p.str());
            CHECK_MESSAGE(s.cancellation, p.str());
            CHECK_MESSAGE(s.stable, p.str());
            CHECK(s.trdeg_b == 2);
        }
}
