#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "isolab/lie.hpp"
#include "isolab/rng.hpp"

using namespace isolab;
using namespace testing_helpers;

namespace {

Vec diag_element(const LieAlgebra& g, const std::vector<long>& d) {
    Mat X = Mat::Constant(g.rep_dim(), g.rep_dim(), FieldScalar(0));
    for (size_t k = 0; k < d.size(); ++k) X(k, k) = FieldScalar(d[k]);
    return g.coords_checked(X);
}

bool jacobi_holds(const LieAlgebra& g) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            for (int k = j + 1; k < g.dim(); ++k) {
                Vec a = g.bracket(g.unit(i), g.bracket(g.unit(j), g.unit(k)));
                Vec b = g.bracket(g.unit(j), g.bracket(g.unit(k), g.unit(i)));
                Vec c = g.bracket(g.unit(k), g.bracket(g.unit(i), g.unit(j)));
                Vec s = a + b + c;
                for (int t = 0; t < s.size(); ++t)
                    if (!s(t).is_zero()) return false;
            }
    return true;
}

// Exponents from the principal sl2: h is twice the dual Weyl vector in the
// diagonal realization, e the sum of the weight-2 basis vectors.
std::vector<int> principal_exponents(const LieAlgebra& g, const std::vector<long>& hdiag) {
    Vec h = diag_element(g, hdiag);
    Mat adh = g.ad(h);
    Vec e = g.zero();
    for (int k = 0; k < g.dim(); ++k) {
        Vec col = adh.col(k);
        if (col == FieldScalar(2) * g.unit(k)) e(k) = FieldScalar(1);
    }
    REQUIRE(g.bracket(h, e) == FieldScalar(2) * e);
    REQUIRE(is_nilpotent(g, e));
    REQUIRE(is_regular(g, e));
    auto mult = [&](long lambda) {
        Mat M = adh;
        for (int k = 0; k < g.dim(); ++k) M(k, k) -= FieldScalar(lambda);
        return g.dim() - rank(M);
    };
    std::vector<int> ex;
    for (long k = 1; 2 * k <= 4 * g.rep_dim(); ++k) {
        int c = mult(2 * k) - mult(2 * k + 2);
        for (int t = 0; t < c; ++t) ex.push_back(static_cast<int>(k));
    }
    return ex;
}

}  // namespace

TEST_CASE("dimensions and ranks") {
    auto sl2 = make_sl(2);
    CHECK(sl2->dim() == 3);
    CHECK(sl2->rank() == 1);
    CHECK(sl2->exponents() == std::vector<int>{1});
    CHECK(sl2->k0() == 0);
    CHECK(sl2->k1() == 1);
    auto so8 = make_so(8);
    CHECK(so8->dim() == 28);
    CHECK(so8->rank() == 4);
    CHECK(make_so(7, FormConvention::standard)->dim() == 21);
    CHECK(make_sp(6)->dim() == 21);
    auto s = direct_sum(sl2, sl2);
    CHECK(s->dim() == 6);
    CHECK(s->rank() == 2);
    CHECK_THROWS_AS(make_sl(1), InvalidInput);
    CHECK_THROWS_AS(make_so(2), InvalidInput);
    CHECK_THROWS_AS(parse_algebra("gl(3)"), InvalidInput);
    CHECK(parse_algebra("sl(4)+sl(4)")->dim() == 30);
    CHECK(parse_algebra("so(8,antidiag)")->label() == "so(8,antidiag)");
}

TEST_CASE("rank equals the centralizer dimension of a regular semisimple element") {
    auto sl4 = make_sl(4);
    Vec h = diag_element(*sl4, {3, 1, -1, -3});
    CHECK(centralizer(*sl4, h, sl4->whole()).dim() == 3);
    auto so8 = make_so(8);
    Vec t = diag_element(*so8, {1, 2, 3, 4, -4, -3, -2, -1});
    CHECK(centralizer(*so8, t, so8->whole()).dim() == 4);
    CHECK(is_regular(*so8, t));
    auto sp4 = make_sp(4);
    CHECK(centralizer(*sp4, diag_element(*sp4, {1, 2, -2, -1}), sp4->whole()).dim() == 2);
    // dim g - 2 #positive roots = rank
    CHECK(sl4->dim() - 2 * 6 == sl4->rank());
    CHECK(so8->dim() - 2 * 12 == so8->rank());
}

TEST_CASE("Jacobi identity on all basis triples") {
    for (auto spec : {"sl(3)", "so(5,antidiag)", "so(5,standard)", "sp(4)", "so(6)", "sl(2)+sl(2)"})
        CHECK_MESSAGE(jacobi_holds(*parse_algebra(spec)), spec);
}

TEST_CASE("bracket agrees with matrix commutator") {
    Rng rng(1);
    for (auto spec : {"sl(4)", "so(7,standard)", "sp(6)", "so(8)"}) {
        auto g = parse_algebra(spec);
        Vec x = rng.vector(g->dim(), 3), y = rng.vector(g->dim(), 3);
        Mat X = g->to_matrix(x), Y = g->to_matrix(y);
        CHECK(g->to_matrix(g->bracket(x, y)) == multiply(X, Y) - multiply(Y, X));
        CHECK(g->bracket(x, x) == g->zero());
        CHECK(classify_element(*g, g->bracket(x, x)) == ElementClass::zero);
    }
    auto sl2 = make_sl(2);
    Vec e = sl2->coords_checked(mat({{0, 1}, {0, 0}}));
    Vec f = sl2->coords_checked(mat({{0, 0}, {1, 0}}));
    Vec h = sl2->coords_checked(mat({{1, 0}, {0, -1}}));
    CHECK(sl2->bracket(e, f) == h);
    CHECK(sl2->bracket(h, e) == FieldScalar(2) * e);
    CHECK_FALSE(sl2->coords(mat({{1, 0}, {0, 1}})).has_value());
}

TEST_CASE("Killing form") {
    Rng rng(2);
    struct Case {
        const char* spec;
        long c;
    };
    // kappa = c * tr(xy), with c = 2n, n-2, n+2 for sl(n), so(n), sp(n)
    for (Case cs : {Case{"sl(3)", 6}, Case{"sl(4)", 8}, Case{"so(7,standard)", 5}, Case{"so(8)", 6},
                    Case{"sp(4)", 6}}) {
        auto g = parse_algebra(cs.spec);
        CHECK(det(g->killing()) != FieldScalar(0));
        for (int t = 0; t < 3; ++t) {
            Vec x = rng.vector(g->dim(), 3), y = rng.vector(g->dim(), 3), z = rng.vector(g->dim(), 3);
            FieldScalar tr = multiply(g->to_matrix(x), g->to_matrix(y)).trace();
            CHECK(g->killing(x, y) == FieldScalar(cs.c) * tr);
            CHECK(g->killing(g->bracket(x, y), z) + g->killing(y, g->bracket(x, z)) == FieldScalar(0));
        }
    }
    auto s = parse_algebra("sl(2)+sl(2)");
    CHECK(s->killing()(0, 3) == FieldScalar(0));
    CHECK(det(s->killing()) != FieldScalar(0));
}

TEST_CASE("element classification") {
    auto sl2 = make_sl(2);
    CHECK(classify_element(*sl2, sl2->zero()) == ElementClass::zero);
    CHECK_FALSE(is_regular(*sl2, sl2->zero()));
    Vec h = sl2->coords_checked(mat({{1, 0}, {0, -1}}));
    CHECK(classify_element(*sl2, h) == ElementClass::semisimple);
    CHECK(is_regular(*sl2, h));
    CHECK(centralizer(*sl2, Subspace::span(Mat(h.transpose())), sl2->whole()) == Subspace::span(Mat(h.transpose())));
    auto sl3 = make_sl(3);
    Vec n = sl3->coords_checked(mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
    CHECK(classify_element(*sl3, n) == ElementClass::nilpotent);
    CHECK(is_regular(*sl3, n));
    CHECK(centralizer(*sl3, n, sl3->whole()).dim() == 2);
    Vec m = sl3->coords_checked(mat({{1, 1, 0}, {0, 1, 0}, {0, 0, -2}}));
    CHECK(classify_element(*sl3, m) == ElementClass::mixed);
    CHECK(centralizer(*sl3, Subspace(8), sl3->whole()) == sl3->whole());
    Element x(sl2, h), y(sl2, sl2->unit(0));
    CHECK(bracket(x, x).coeffs == sl2->zero());
    CHECK(is_regular(x));
    CHECK_THROWS_AS(bracket(x, Element(sl3, sl3->zero())), InvalidInput);
    CHECK_THROWS_AS(Element(sl2, sl3->zero()), InvalidInput);
}

TEST_CASE("exponent tables agree with the principal sl2 oracle") {
    CHECK(principal_exponents(*make_sl(3), {2, 0, -2}) == make_sl(3)->exponents());
    CHECK(make_sl(3)->exponents() == std::vector<int>{1, 2});
    CHECK(make_sl(3)->k0() == 1);
    CHECK(principal_exponents(*make_sl(4), {3, 1, -1, -3}) == make_sl(4)->exponents());
    CHECK(principal_exponents(*make_sp(4), {3, 1, -1, -3}) == std::vector<int>{1, 3});
    CHECK(make_sp(4)->exponents() == std::vector<int>{1, 3});
    CHECK(make_sp(4)->k0() == 0);
    CHECK(principal_exponents(*make_sp(6), {5, 3, 1, -1, -3, -5}) == make_sp(6)->exponents());
    CHECK(principal_exponents(*make_so(7), {6, 4, 2, 0, -2, -4, -6}) == make_so(7)->exponents());
    auto so8 = principal_exponents(*make_so(8), {6, 4, 2, 0, 0, -2, -4, -6});
    CHECK(so8 == std::vector<int>{1, 3, 3, 5});
    CHECK(so8 == make_so(8)->exponents());
    CHECK(principal_exponents(*make_so(10), {8, 6, 4, 2, 0, 0, -2, -4, -6, -8}) == make_so(10)->exponents());
    CHECK(principal_exponents(*make_so(6), {4, 2, 0, 0, -2, -4}) == make_so(6)->exponents());
    CHECK(make_so(12)->k0() == 0);
    CHECK(make_so(12)->k1() == 6);
    CHECK(make_so(10)->k0() == 1);
}
