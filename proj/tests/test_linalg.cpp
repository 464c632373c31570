#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace isolab;
using namespace testing_helpers;

TEST_CASE("cyclotomic field arithmetic") {
    REQUIRE(cyclotomic_order() == 8);
    CHECK(cyclotomic().degree == 4);
    FieldScalar i = FieldScalar::imag_unit();
    CHECK(i * i == FieldScalar(-1));
    FieldScalar z = FieldScalar::zeta_power(1);
    CHECK(z * z == i);
    FieldScalar z8 = FieldScalar(1);
    for (int k = 0; k < 8; ++k) z8 *= z;
    CHECK(z8 == FieldScalar(1));
    CHECK(FieldScalar(Rational(3, 4)).is_rational());
    CHECK(FieldScalar(Rational(3, 4)).coefficients().size() == 4u);
    CHECK(FieldScalar::parse("1/2 - 3*i") == FieldScalar(Rational(1, 2)) - FieldScalar(3) * i);
    CHECK(FieldScalar::parse("z^2") == i);
    CHECK(FieldScalar::parse("-i") == -i);
    CHECK(*FieldScalar::root_of_unity(8, 4) == FieldScalar(-1));
    CHECK_FALSE(FieldScalar::root_of_unity(3, 1).has_value());
}

TEST_CASE("field inverses are exact") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        FieldScalar x = random_scalar(rng);
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == FieldScalar(1));
    }
    CHECK_THROWS(FieldScalar(0).inverse());
}

TEST_CASE("odd cyclotomic order") {
    set_cyclotomic_order(3);
    CHECK(cyclotomic().degree == 2);
    auto w = FieldScalar::root_of_unity(6, 1);
    REQUIRE(w.has_value());
    FieldScalar w6(1);
    for (int k = 0; k < 6; ++k) w6 *= *w;
    CHECK(w6 == FieldScalar(1));
    CHECK(*w * *w * *w == FieldScalar(-1));
    CHECK_THROWS(FieldScalar::imag_unit());
    set_cyclotomic_order(8);
}

TEST_CASE("rank") {
    CHECK(rank(Mat::Constant(3, 3, FieldScalar(0))) == 0);
    CHECK(rank(identity(4)) == 4);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        Mat A = random_int_mat(rng, 5, 1), B = random_int_mat(rng, 1, 3);
        if (is_zero_matrix(A) || is_zero_matrix(B)) continue;
        CHECK(rank(multiply(A, B)) == 1);
    }
    // rank of a product of random full-rank factors through dimension 2
    Mat A = random_int_mat(rng, 6, 2), B = random_int_mat(rng, 2, 5);
    CHECK(rank(multiply(A, B)) == std::min(rank(A), rank(B)));
}

TEST_CASE("nullspace") {
    CHECK(nullspace(identity(3)).dim() == 0);
    CHECK(nullspace(Mat::Constant(2, 5, FieldScalar(0))).dim() == 5);
    Subspace N = nullspace(mat({{1, 1, 0}, {0, 0, 1}}));
    REQUIRE(N.dim() == 1);
    CHECK(N == Subspace::span(mat({{1, -1, 0}})));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        Mat M = random_int_mat(rng, 3, 6, 2);
        Subspace K = nullspace(M);
        CHECK(K.dim() == 6 - rank(M));
        for (int k = 0; k < K.dim(); ++k) CHECK(is_zero_matrix(multiply(M, K.vector(k))));
    }
}

TEST_CASE("subspace canonical form and intersection") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        Mat A = random_int_mat(rng, 3, 5), B = random_int_mat(rng, 3, 5);
        Subspace SA = Subspace::span(A), SB = Subspace::span(B);
        Subspace I = intersect(SA, SB), S = sum(SA, SB);
        Mat stacked(6, 5);
        stacked << A, B;
        CHECK(S.dim() == rank(stacked));
        CHECK(I.dim() == SA.dim() + SB.dim() - S.dim());
        for (int k = 0; k < I.dim(); ++k) {
            CHECK(SA.contains(I.vector(k)));
            CHECK(SB.contains(I.vector(k)));
        }
        // shuffled and recombined basis gives the same representative
        Mat shuffled(3, 5);
        shuffled.row(0) = A.row(2);
        shuffled.row(1) = A.row(0) + A.row(2);
        shuffled.row(2) = A.row(1) - A.row(0);
        CHECK(Subspace::span(shuffled) == SA);
    }
    Subspace A = Subspace::coordinate(4, {0, 1}), B = Subspace::coordinate(4, {2, 3});
    CHECK(intersect(A, B).dim() == 0);
    CHECK(intersect(A, A) == A);
    CHECK_THROWS(intersect(A, Subspace(3)));
}

TEST_CASE("minimal polynomial and squarefree test") {
    UniPoly p = minimal_polynomial(identity(3));
    CHECK(p == UniPoly({FieldScalar(-1), FieldScalar(1)}));
    CHECK(is_squarefree(p));
    UniPoly q = minimal_polynomial(mat({{0, 1}, {0, 0}}));
    CHECK(q == UniPoly::monomial(2));
    CHECK_FALSE(is_squarefree(q));
    UniPoly r = minimal_polynomial(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
    CHECK(r == UniPoly({FieldScalar(2), FieldScalar(-3), FieldScalar(1)}));
    CHECK(is_squarefree(r));
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
        Mat M = random_int_mat(rng, 4, 4, 3);
        CHECK(is_zero_matrix(minimal_polynomial(M)(M)));
    }
    // complex rotation: semisimple with eigenvalues +-i
    Mat J = mat({{0, -1}, {1, 0}});
    CHECK(is_squarefree(minimal_polynomial(J)));
}

TEST_CASE("interpolation") {
    auto c = interpolate({{FieldScalar(0), FieldScalar(1)}, {FieldScalar(1), FieldScalar(1)}});
    CHECK(c == UniPoly::constant(FieldScalar(1)));
    auto sq = interpolate({{0, 0}, {1, 1}, {2, 4}});
    CHECK(sq == UniPoly::monomial(2));
    std::mt19937_64 rng(13);
    for (int t = 0; t < 5; ++t) {
        std::vector<FieldScalar> cs;
        for (int k = 0; k < 6; ++k) cs.push_back(random_scalar(rng));
        UniPoly p(cs);
        std::vector<std::pair<FieldScalar, FieldScalar>> pts;
        for (int k = 0; k < 6; ++k) pts.push_back({FieldScalar(k - 2), p(FieldScalar(k - 2))});
        CHECK(interpolate(pts) == p);
    }
    CHECK_THROWS(interpolate({{1, 1}, {1, 2}}));
}

TEST_CASE("determinant, inverse, characteristic polynomial") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 5; ++t) {
        Mat M = random_int_mat(rng, 5, 5, 4);
        auto cp = charpoly(M);
        REQUIRE(cp.size() == 6u);
        CHECK(cp[5] == FieldScalar(1));
        FieldScalar d = det(M);
        CHECK(cp[0] == -d);  // (-1)^5 det
        // Cayley-Hamilton
        CHECK(is_zero_matrix(UniPoly(cp)(M)));
        if (!d.is_zero()) CHECK(multiply(M, inverse(M)) == identity(5));
    }
    Mat N = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    CHECK(det(N).is_zero());
    CHECK(UniPoly(charpoly(N)) == UniPoly::monomial(3));
}

TEST_CASE("pfaffian squared is the determinant") {
    CHECK(pfaffian(mat({{0, 3}, {-3, 0}})) == FieldScalar(3));
    Mat A4 = mat({{0, 1, 2, 3}, {-1, 0, 4, 5}, {-2, -4, 0, 6}, {-3, -5, -6, 0}});
    CHECK(pfaffian(A4) == FieldScalar(1 * 6 - 2 * 5 + 3 * 4));
    std::mt19937_64 rng(19);
    for (int t = 0; t < 10; ++t) {
        Mat R = random_int_mat(rng, 8, 8, 3);
        Mat A = R - Mat(R.transpose());
        FieldScalar p = pfaffian(A);
        CHECK(p * p == det(A));
    }
    CHECK_THROWS(pfaffian(identity(3)));
}
