#include "isolab/invariants.hpp"

#include "isolab/errors.hpp"

#include <algorithm>

namespace isolab {

namespace {

Mat block_of(const LieAlgebra& g, const Vec& v, const SimpleBlock& b) {
    return g.to_matrix(v).block(b.rep_offset, b.rep_offset, b.rep_size, b.rep_size);
}

std::vector<int> basic_charpoly_degrees(const SimpleBlock& b) {
    std::vector<int> d;
    switch (b.type) {
        case 'A':
            for (int k = 2; k <= b.rep_size; ++k) d.push_back(k);
            break;
        case 'B':
        case 'C':
            for (int k = 2; k <= b.rep_size - (b.rep_size % 2); k += 2) d.push_back(k);
            break;
        case 'D':
            for (int k = 2; k < b.rep_size; k += 2) d.push_back(k);
            break;
        default:
            throw InvalidInput(std::string("no invariants for block type ") + b.type);
    }
    return d;
}

FieldScalar power(const FieldScalar& x, int k) {
    FieldScalar r(1);
    for (int j = 0; j < k; ++j) r *= x;
    return r;
}

// Solves v = a + b with a in A, b in B for A ∩ B = 0.
class Splitter {
public:
    Splitter(const Subspace& A, const Subspace& B) : A_(A), B_(B) {
        const int n = A.ambient_dim(), da = A.dim(), db = B.dim();
        Mat rows = Mat::Constant(da + db, n, FieldScalar(0));
        for (int k = 0; k < da; ++k) rows.row(k) = A.vector(k).transpose();
        for (int k = 0; k < db; ++k) rows.row(da + k) = B.vector(k).transpose();
        Subspace S = Subspace::span(rows);
        if (S.dim() != da + db) throw InvalidInput("summands of a bi-homogeneous split must be independent");
        pivots_ = S.pivots();
        Mat sq = Mat::Constant(da + db, da + db, FieldScalar(0));
        for (int r = 0; r < da + db; ++r)
            for (int c = 0; c < da + db; ++c) sq(c, r) = rows(r, pivots_[c]);
        inv_ = inverse(sq);
    }
    std::pair<Vec, Vec> operator()(const Vec& v) const {
        const int da = A_.dim(), m = static_cast<int>(pivots_.size());
        Vec rhs(m);
        for (int c = 0; c < m; ++c) rhs(c) = v(pivots_[c]);
        Vec coef = multiply(inv_, rhs);
        Vec a = Vec::Constant(v.size(), FieldScalar(0)), b = a;
        for (int k = 0; k < m; ++k) {
            if (coef(k).is_zero()) continue;
            if (k < da) a += coef(k) * A_.vector(k);
            else b += coef(k) * B_.vector(k - da);
        }
        return {a, b};
    }

private:
    Subspace A_, B_;
    std::vector<int> pivots_;
    Mat inv_;
};

std::vector<Mat> nilpotent_basis_matrices(const LieAlgebra& g, const Subspace& S, int limit) {
    std::vector<Mat> out;
    for (int k = 0; k < S.dim() && static_cast<int>(out.size()) < limit; ++k)
        if (is_nilpotent(g, S.vector(k))) out.push_back(g.to_matrix(S.vector(k)));
    return out;
}

Vec conjugate_coords(const LieAlgebra& g, const Mat& s, const Mat& s_inv, const Vec& v) {
    return g.coords_checked(multiply(multiply(s, g.to_matrix(v)), s_inv));
}

}  // namespace

std::string InvariantOracle::name() const {
    std::string base = kind == InvariantKind::pfaffian ? "pf" : "c" + std::to_string(degree);
    if (algebra->blocks().size() > 1) base += "[" + std::to_string(block) + "]";
    return base;
}

Mat exp_nilpotent(const Mat& N) {
    const int n = static_cast<int>(N.rows());
    Mat result = identity(n), term = identity(n);
    for (int k = 1; k <= n; ++k) {
        term = multiply(term, N);
        if (is_zero_matrix(term)) return result;
        FieldScalar inv_k = FieldScalar(Rational(1, k));
        term = inv_k * term;
        result += term;
    }
    if (!is_zero_matrix(multiply(term, N))) throw InvalidInput("exp_nilpotent of a non-nilpotent matrix");
    return result;
}

InvariantOracle pfaffian_invariant(AlgebraPtr g, const Subspace& domain, int block) {
    const auto& blocks = g->blocks();
    if (block < 0 || block >= static_cast<int>(blocks.size())) throw InvalidInput("no such simple block");
    const SimpleBlock b = blocks[block];
    if (b.type != 'D' || b.rep_size % 2 != 0 || b.form.rows() == 0)
        throw InvalidInput("the Pfaffian needs an even orthogonal block");
    InvariantOracle F;
    F.algebra = g;
    F.domain = domain;
    F.degree = b.rep_size / 2;
    F.kind = InvariantKind::pfaffian;
    F.block = block;
    const LieAlgebra* gp = g.get();
    F.eval = [gp, b](const Vec& v) { return pfaffian(multiply(b.form, block_of(*gp, v, b))); };
    return F;
}

std::vector<InvariantOracle> charpoly_invariants(AlgebraPtr g, const Subspace& domain) {
    std::vector<InvariantOracle> out;
    const auto& blocks = g->blocks();
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
        const SimpleBlock b = blocks[bi];
        const LieAlgebra* gp = g.get();
        for (int d : basic_charpoly_degrees(b)) {
            InvariantOracle F;
            F.algebra = g;
            F.domain = domain;
            F.degree = d;
            F.kind = InvariantKind::charpoly;
            F.block = bi;
            const int n = b.rep_size;
            F.eval = [gp, b, d, n](const Vec& v) {
                auto c = charpoly(block_of(*gp, v, b));
                return d % 2 ? FieldScalar(-c[n - d]) : c[n - d];
            };
            out.push_back(std::move(F));
        }
        if (b.type == 'D') out.push_back(pfaffian_invariant(g, domain, bi));
    }
    return out;
}

bool self_test(const InvariantOracle& F, Rng& rng, int points) {
    const LieAlgebra& g = *F.algebra;
    auto nil = nilpotent_basis_matrices(g, g.whole(), 3);
    for (int p = 0; p < points; ++p) {
        Vec v = rng.element(F.domain, 3);
        const FieldScalar fv = F(v);
        if (F(FieldScalar(2) * v) != power(FieldScalar(2), F.degree) * fv) return false;
        for (const auto& N : nil) {
            Mat s = exp_nilpotent(N), si = exp_nilpotent(Mat(-N));
            if (F(conjugate_coords(g, s, si, v)) != fv) return false;
        }
    }
    return true;
}

UniPoly restrict_to_line(const Evaluator& F, int degree, const Vec& p, const Vec& d) {
    std::vector<std::pair<FieldScalar, FieldScalar>> pts;
    for (int t = 0; t <= degree; ++t) {
        FieldScalar ft(t);
        pts.emplace_back(ft, F(p + ft * d));
    }
    return interpolate(pts);
}

FieldScalar BiHomogSplit::component(int j, const Vec& y0, const Vec& y1) const {
    return restrict_to_line(source.eval, source.degree, y1, y0).coeff(j);
}

Evaluator BiHomogSplit::component_evaluator(int j) const {
    auto split = std::make_shared<Splitter>(first, second);
    auto src = source.eval;
    const int deg = source.degree;
    return [split, src, deg, j](const Vec& v) {
        auto [a, b] = (*split)(v);
        return restrict_to_line(src, deg, b, a).coeff(j);
    };
}

BiHomogSplit bihomog_extract(const InvariantOracle& F, const Subspace& first, const Subspace& second, Rng& rng,
                             int samples) {
    BiHomogSplit s;
    s.source = F;
    s.first = first;
    s.second = second;
    std::vector<bool> seen(F.degree + 1, false);
    for (int k = 0; k < samples; ++k) {
        Vec y0 = rng.element(first, 3), y1 = rng.element(second, 3);
        UniPoly p = restrict_to_line(F.eval, F.degree, y1, y0);
        for (int j = 0; j <= F.degree; ++j)
            if (!p.coeff(j).is_zero()) seen[j] = true;
    }
    for (int j = 0; j <= F.degree; ++j)
        if (seen[j]) s.nonzero.push_back(j);
    if (s.nonzero.empty())
        throw Inconclusive(F.name() + " vanished at every bi-homogeneous sample");
    s.bottom = s.nonzero.front();
    s.top = s.nonzero.back();
    return s;
}

Evaluator contracted_invariant(const InvariantOracle& F, const DegeneratedModule& V, Rng& rng) {
    auto split = bihomog_extract(F, V.Q.space(V.first), V.Q.space(V.second), rng);
    return split.component_evaluator(split.top);
}

InvarianceReport verify_invariance(const Evaluator& F, int degree, const DegeneratedModule& V, Rng& rng,
                                   int points) {
    InvarianceReport r;
    const Subspace& B = V.Q.space(V.perm.beta);
    for (int p = 0; p < points; ++p) {
        Vec v = rng.element(V.V, 3);
        const FieldScalar fv = F(v);
        Vec x = rng.element(B, 3);
        if (F(V.nil_exp(x, v)) != fv) {
            r.ok = false;
            r.failure = "nilradical";
            r.counterexample = v;
            return r;
        }
        // g00 part: every basis direction at the first two points, a random combination afterwards
        std::vector<Vec> dirs;
        if (p < 2) {
            for (int i = 0; i < V.dim_k00; ++i) dirs.push_back(V.act_basis(i, v));
        } else if (V.dim_k00 > 0) {
            Vec c = Vec::Constant(V.dim_k(), FieldScalar(0));
            for (int i = 0; i < V.dim_k00; ++i) c(i) = rng.scalar(3);
            dirs.push_back(V.act(c, v));
        }
        for (const auto& d : dirs)
            if (!restrict_to_line(F, degree, v, d).coeff(1).is_zero()) {
                r.ok = false;
                r.failure = "g00 derivative";
                r.counterexample = v;
                return r;
            }
        ++r.points;
    }
    return r;
}

Vec gradient(const Evaluator& F, int degree, const Vec& v, const Subspace& domain) {
    Vec grad(domain.dim());
    for (int k = 0; k < domain.dim(); ++k) grad(k) = restrict_to_line(F, degree, v, domain.vector(k)).coeff(1);
    return grad;
}

int gradient_rank(const std::vector<InvariantOracle>& Fs, const Vec& v, const Subspace& domain) {
    if (Fs.empty()) return 0;
    Mat G = Mat::Constant(static_cast<int>(Fs.size()), domain.dim(), FieldScalar(0));
    for (int i = 0; i < static_cast<int>(Fs.size()); ++i)
        G.row(i) = gradient(Fs[i].eval, Fs[i].degree, v, domain).transpose();
    return rank(G);
}

bool independence_at(const Vec& e, const std::vector<InvariantOracle>& Fs, const Subspace& domain) {
    return gradient_rank(Fs, e, domain) == static_cast<int>(Fs.size());
}

VanishingTest vanishes_on(const InvariantOracle& F, const Subspace& S, Rng& rng, int grid_budget) {
    VanishingTest t;
    const int d = S.dim();
    if (d == 0) {
        t.vanishes = F(Vec::Constant(S.ambient_dim(), FieldScalar(0))).is_zero();
        t.certified = true;
        return t;
    }
    long cells = 1;
    for (int k = 0; k < d && cells <= grid_budget; ++k) cells *= F.degree + 1;
    t.vanishes = true;
    if (cells <= grid_budget) {
        // a polynomial of degree < deg+1 in each variable vanishing on the grid is zero
        std::vector<int> idx(d, 0);
        for (long c = 0; c < cells; ++c) {
            Vec v = Vec::Constant(S.ambient_dim(), FieldScalar(0));
            for (int k = 0; k < d; ++k)
                if (idx[k]) v += FieldScalar(idx[k]) * S.vector(k);
            if (!F(v).is_zero()) {
                t.vanishes = false;
                break;
            }
            for (int k = 0; k < d; ++k) {
                if (++idx[k] <= F.degree) break;
                idx[k] = 0;
            }
        }
        t.certified = true;
        return t;
    }
    for (int k = 0; k < 32; ++k)
        if (!F(rng.element(S, 1000)).is_zero()) {
            t.vanishes = false;
            t.certified = true;
            return t;
        }
    return t;
}

VanishingReport vanishing_on_X(const QuaternionicDecomposition& Q, const std::vector<InvariantOracle>& Fs, Rng& rng,
                               bool basic_family, bool strict) {
    const LieAlgebra& g = *Q.algebra;
    VanishingReport r;
    const Subspace big = Q.big_minus(1);
    Rng rc = rng.fork("c10");
    CartanSubspace c10 = find_css(g, Q.g10, rc, "g10");
    r.dim_c10 = c10.dim();
    Subspace Z = centralizer(g, c10.space, big);
    if (!is_abelian(g, Z)) {
        r.condition_failure = "z_g(c10) ∩ g1* is not abelian";
    } else {
        Rng rz = rng.fork("z witness");
        Vec x = generic_element(g, Z, rz);
        CssCertificate cert = certify_css(g, big, Z, x);
        if (!cert.witness_semisimple) r.condition_failure = "z_g(c10) ∩ g1* has no semisimple generic element";
        else if (!cert.ok()) r.condition_failure = "z_g(c10) ∩ g1* is not saturated in g1*";
    }
    r.condition_ok = r.condition_failure.empty();
    if (!r.condition_ok && strict) throw InvalidInput(r.condition_failure + ", so it is not a Cartan subspace of g1*");
    if (r.condition_ok) {
        r.dim_big = Z.dim();
    } else {
        Rng rb = rng.fork("big css");
        r.dim_big = find_css(g, big, rb, "g1*").dim();
    }
    r.k = r.dim_big - r.dim_c10;

    auto nil = nilpotent_basis_matrices(g, Q.g00, 3);
    std::vector<InvariantOracle> vanishing;
    for (const auto& F : Fs) {
        Rng rv = rng.fork("vanish " + F.name());
        if (vanishes_on(F, big, rv).vanishes) continue;
        VanishingTest t = vanishes_on(F, c10.space, rv);
        r.entries.push_back({F.name(), F.degree, t.vanishes, t.certified});
        if (t.vanishes) vanishing.push_back(F);
        for (const auto& N : nil) {
            Vec p = rv.element(c10.space, 3);
            Mat s = exp_nilpotent(N), si = exp_nilpotent(Mat(-N));
            if (F(conjugate_coords(g, s, si, p)) != F(p)) r.translates_agree = false;
        }
    }
    r.vanishing = static_cast<int>(vanishing.size());
    Rng rg = rng.fork("gradient point");
    r.vanishing_independent = gradient_rank(vanishing, rg.element(big, 5), big);
    if (basic_family) r.count_matches = r.vanishing_independent == r.k;
    return r;
}

std::vector<int> independent_degrees(const std::vector<InvariantOracle>& Fs, const Subspace& domain, Rng& rng) {
    std::vector<InvariantOracle> sorted = Fs;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const InvariantOracle& a, const InvariantOracle& b) { return a.degree < b.degree; });
    Vec v = rng.element(domain, 5);
    Mat G = Mat::Constant(0, domain.dim(), FieldScalar(0));
    std::vector<int> degrees;
    int current = 0;
    for (const auto& F : sorted) {
        Mat H(G.rows() + 1, domain.dim());
        if (G.rows()) H.topRows(G.rows()) = G;
        H.row(G.rows()) = gradient(F.eval, F.degree, v, domain).transpose();
        int rk = rank(H);
        if (rk > current) {
            G = H;
            current = rk;
            degrees.push_back(F.degree);
        }
    }
    return degrees;
}

}  // namespace isolab
