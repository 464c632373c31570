#include "isolab/contraction.hpp"

#include "isolab/errors.hpp"

#include <sstream>

namespace isolab {

namespace {

SparseVec sparse(const Vec& v) {
    SparseVec s;
    for (int k = 0; k < v.size(); ++k)
        if (!v(k).is_zero()) s.push_back({k, v(k)});
    return s;
}

Vec concat(const Vec& a, const Vec& b) {
    Vec v(a.size() + b.size());
    for (int k = 0; k < a.size(); ++k) v(k) = a(k);
    for (int k = 0; k < b.size(); ++k) v(a.size() + k) = b(k);
    return v;
}

// Component of v in g_l, via the projector (1/4) sum over the Klein group.
Vec project(const QuaternionicDecomposition& Q, Label l, const Vec& v) {
    const int i = (l == Label::g10 || l == Label::g11) ? 1 : 0;
    const int j = (l == Label::g01 || l == Label::g11) ? 1 : 0;
    Vec a = Q.sigma1.apply(v), b = Q.sigma2.apply(v), c = Q.sigma3.apply(v);
    Vec out = v + (i ? -a : a) + (j ? -b : b) + ((i + j) % 2 ? -c : c);
    FieldScalar q = FieldScalar(Rational(1, 4));
    for (int k = 0; k < out.size(); ++k) out(k) *= q;
    return out;
}

}  // namespace

Vec ContractedAlgebra::bracket(const Vec& x, const Vec& y) const {
    const int n = dim();
    Vec out = Vec::Constant(n, FieldScalar(0));
    for (int i = 0; i < n; ++i) {
        if (x(i).is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y(j).is_zero()) continue;
            const auto& s = structure[i * n + j];
            if (s.empty()) continue;
            FieldScalar xy = x(i) * y(j);
            for (const auto& t : s) out(t.index) += xy * t.coeff;
        }
    }
    return out;
}

Mat ContractedAlgebra::ad(const Vec& x) const {
    const int n = dim();
    Mat A = Mat::Constant(n, n, FieldScalar(0));
    for (int j = 0; j < n; ++j) {
        Vec e = Vec::Constant(n, FieldScalar(0));
        e(j) = FieldScalar(1);
        A.col(j) = bracket(x, e);
    }
    return A;
}

Mat ContractedAlgebra::killing() const {
    const int n = dim();
    std::vector<Mat> ads;
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Constant(n, FieldScalar(0));
        e(i) = FieldScalar(1);
        ads.push_back(ad(e));
    }
    Mat K = Mat::Constant(n, n, FieldScalar(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            FieldScalar t(0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (!ads[i](a, b).is_zero() && !ads[j](b, a).is_zero()) t += ads[i](a, b) * ads[j](b, a);
            K(i, j) = t;
            K(j, i) = t;
        }
    return K;
}

Vec ContractedAlgebra::restrict(const Vec& p) const {
    Vec s = sigma.apply(p);
    FieldScalar half = FieldScalar(Rational(1, 2));
    Vec p0 = (p + s) * half, p1 = (p - s) * half;
    return concat(g0.coords(p0), g1.coords(p1));
}

ContractedAlgebra z2_contract(const Automorphism& sigma) {
    if (sigma.order != 2) throw InvalidInput("a Z2-contraction needs an involution");
    const LieAlgebra& g = *sigma.algebra;
    ContractedAlgebra c;
    c.parent = sigma.algebra;
    c.sigma = sigma;
    c.g0 = sigma.eigenspace(FieldScalar(1));
    c.g1 = sigma.eigenspace(FieldScalar(-1));
    c.dim0 = c.g0.dim();
    c.dim1 = c.g1.dim();
    const int n = c.dim();
    c.embedding = Mat::Constant(g.dim(), n, FieldScalar(0));
    for (int k = 0; k < c.dim0; ++k) c.embedding.col(k) = c.g0.vector(k);
    for (int k = 0; k < c.dim1; ++k) c.embedding.col(c.dim0 + k) = c.g1.vector(k);

    c.structure.assign(n * n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const bool odd_i = i >= c.dim0, odd_j = j >= c.dim0;
            if (odd_i && odd_j) continue;
            Vec b = g.bracket(c.embedding.col(i), c.embedding.col(j));
            if (!odd_i && !odd_j) {
                if (!c.g0.contains(b)) throw InternalInconsistency("[g0,g0] leaves g0");
                c.structure[i * n + j] = sparse(concat(c.g0.coords(b), Vec::Constant(c.dim1, FieldScalar(0))));
            } else {
                if (!c.g1.contains(b)) throw InternalInconsistency("[g0,g1] leaves g1");
                c.structure[i * n + j] = sparse(concat(Vec::Constant(c.dim0, FieldScalar(0)), c.g1.coords(b)));
            }
        }

    // Jacobi on all basis triples
    std::vector<FieldScalar> acc(n);
    std::vector<int> touched;
    auto add_double = [&](int a, int b, int d) {
        for (const auto& t : c.structure[a * n + b])
            for (const auto& u : c.structure[t.index * n + d]) {
                if (acc[u.index].is_zero()) touched.push_back(u.index);
                acc[u.index] += t.coeff * u.coeff;
            }
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                touched.clear();
                add_double(i, j, k);
                add_double(j, k, i);
                add_double(k, i, j);
                for (int t : touched) {
                    if (!acc[t].is_zero())
                        throw InternalInconsistency("Jacobi identity fails in the contraction at basis triple (" +
                                                    std::to_string(i) + "," + std::to_string(j) + "," +
                                                    std::to_string(k) + ")");
                }
                for (int t : touched) acc[t] = FieldScalar(0);
            }
    return c;
}

std::string Permutation::str() const {
    return to_string(alpha) + "," + to_string(beta) + "," + to_string(gamma);
}

Permutation parse_permutation(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 3) throw InvalidInput("permutation must list three labels, e.g. 10,01,11");
    Permutation p{parse_label(parts[0]), parse_label(parts[1]), parse_label(parts[2])};
    for (Label l : {p.alpha, p.beta, p.gamma})
        if (l == Label::g00) throw InvalidInput("permutation labels must be nonzero");
    if (p.alpha == p.beta || p.beta == p.gamma || p.alpha == p.gamma)
        throw InvalidInput("permutation labels must be distinct");
    return p;
}

std::vector<Permutation> all_permutations() {
    std::vector<Permutation> out;
    for (Label a : kNonzeroLabels)
        for (Label c : kNonzeroLabels)
            if (a != c) out.push_back({a, third_label(a, c), c});
    return out;
}

std::string to_string(Variant v) { return v == Variant::a ? "a" : "b"; }

Variant parse_variant(const std::string& s) {
    if (s == "a") return Variant::a;
    if (s == "b") return Variant::b;
    throw InvalidInput("variant must be a or b, got '" + s + "'");
}

Vec DegeneratedModule::act(const Vec& x, const Vec& v) const {
    const LieAlgebra& g = *Q.algebra;
    Vec x00 = g.zero(), xb = g.zero();
    for (int i = 0; i < dim_k(); ++i) {
        if (x(i).is_zero()) continue;
        (i < dim_k00 ? x00 : xb) += x(i) * k_basis[i];
    }
    return g.bracket(x00, v) + g.bracket(xb, project(Q, first, v));
}

Vec DegeneratedModule::act_basis(int i, const Vec& v) const {
    const LieAlgebra& g = *Q.algebra;
    if (i < dim_k00) return g.bracket(k_basis[i], v);
    return g.bracket(k_basis[i], project(Q, first, v));
}

Vec DegeneratedModule::nil_exp(const Vec& x_beta, const Vec& v) const {
    if (!Q.space(perm.beta).contains(x_beta)) throw InvalidInput("nil_exp needs an element of g_beta");
    return v + Q.algebra->bracket(x_beta, project(Q, first, v));
}

Vec DegeneratedModule::k_bracket(const Vec& x, const Vec& y) const {
    const LieAlgebra& g = *Q.algebra;
    auto split = [&](const Vec& z) {
        Vec a = g.zero(), b = g.zero();
        for (int i = 0; i < dim_k(); ++i)
            if (!z(i).is_zero()) (i < dim_k00 ? a : b) += z(i) * k_basis[i];
        return std::pair{a, b};
    };
    auto [x0, xb] = split(x);
    auto [y0, yb] = split(y);
    Vec b00 = g.bracket(x0, y0);
    Vec bb = g.bracket(x0, yb) - g.bracket(y0, xb);
    return concat(Q.g00.coords(b00), Q.space(perm.beta).coords(bb));
}

DegeneratedModule degenerate_module(const QuaternionicDecomposition& Q, const Permutation& perm, Variant variant) {
    if (third_label(perm.alpha, perm.gamma) != perm.beta) throw InvalidInput("not a permutation of 01,10,11");
    DegeneratedModule M;
    M.Q = Q;
    M.perm = perm;
    M.variant = variant;
    M.first = variant == Variant::a ? perm.alpha : perm.gamma;
    M.second = variant == Variant::a ? perm.gamma : perm.alpha;
    const Subspace& F = Q.space(M.first);
    const Subspace& S = Q.space(M.second);
    const Subspace& B = Q.space(perm.beta);
    M.V = sum(F, S);
    for (int k = 0; k < Q.g00.dim(); ++k) M.k_basis.push_back(Q.g00.vector(k));
    for (int k = 0; k < B.dim(); ++k) M.k_basis.push_back(B.vector(k));
    M.dim_k00 = Q.g00.dim();

    // V coordinates: F coordinates then S coordinates
    const int dF = F.dim(), dV = F.dim() + S.dim();
    auto vcoords = [&](const Vec& w) { return concat(F.coords(project(Q, M.first, w)), S.coords(project(Q, M.second, w))); };
    for (int i = 0; i < M.dim_k(); ++i) {
        Mat A = Mat::Constant(dV, dV, FieldScalar(0));
        for (int c = 0; c < dV; ++c) {
            Vec v = c < dF ? F.vector(c) : S.vector(c - dF);
            Vec w = M.act_basis(i, v);
            if (!M.V.contains(w)) throw InternalInconsistency("k does not preserve V");
            A.col(c) = vcoords(w);
        }
        M.action.push_back(std::move(A));
    }
    // nilradical acts with square zero, and the module law holds on the basis
    for (int i = M.dim_k00; i < M.dim_k(); ++i)
        for (int j = M.dim_k00; j < M.dim_k(); ++j)
            if (!is_zero_matrix(multiply(M.action[i], M.action[j])))
                throw InternalInconsistency("two nilradical actions do not compose to zero");
    const int dk = M.dim_k();
    for (int i = 0; i < dk; ++i)
        for (int j = i + 1; j < dk; ++j) {
            Vec ei = Vec::Constant(dk, FieldScalar(0)), ej = ei;
            ei(i) = FieldScalar(1);
            ej(j) = FieldScalar(1);
            Vec c = M.k_bracket(ei, ej);
            Mat lhs = multiply(M.action[i], M.action[j]) - multiply(M.action[j], M.action[i]);
            for (int l = 0; l < dk; ++l)
                if (!c(l).is_zero()) lhs -= c(l) * M.action[l];
            if (!is_zero_matrix(lhs))
                throw InternalInconsistency("module law fails for k basis pair (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
        }
    return M;
}

DualityReport duality_check(const DegeneratedModule& Va, const DegeneratedModule& Vb) {
    if (Va.variant != Variant::a || Vb.variant != Variant::b)
        throw InvalidInput("duality_check takes a variant a module and a variant b module");
    if (Va.V != Vb.V || Va.perm.beta != Vb.perm.beta || Va.perm.alpha != Vb.perm.alpha)
        throw InvalidInput("modules must share decomposition and permutation");
    const LieAlgebra& g = *Va.Q.algebra;
    const Subspace& V = Va.V;
    // g_alpha and g_gamma are Killing-orthogonal, so the pairing is kappa restricted to V
    DualityReport r;
    for (int i = 0; i < Va.dim_k(); ++i)
        for (int p = 0; p < V.dim(); ++p)
            for (int q = 0; q < V.dim(); ++q) {
                Vec v = V.vector(p), w = V.vector(q);
                FieldScalar s = g.killing(Va.act_basis(i, v), w) + g.killing(v, Vb.act_basis(i, w));
                if (!s.is_zero())
                    throw InternalInconsistency("duality pairing is not invariant under k basis element " +
                                                std::to_string(i));
            }
    r.invariant = true;
    Mat G = Mat::Constant(V.dim(), V.dim(), FieldScalar(0));
    for (int p = 0; p < V.dim(); ++p)
        for (int q = 0; q < V.dim(); ++q) G(p, q) = g.killing(V.vector(p), V.vector(q));
    r.gram_rank = rank(G);
    r.nondegenerate = r.gram_rank == V.dim();
    return r;
}

int nilradical_orbit_dim(const DegeneratedModule& V, const Vec& y) {
    Vec yF = project(V.Q, V.first, y);
    return rank(bracket_map(*V.Q.algebra, yF, V.Q.space(V.perm.beta)));
}

OrbitReport max_nilradical_orbit_dim(const DegeneratedModule& V, Rng& rng, int samples) {
    const LieAlgebra& g = *V.Q.algebra;
    const Subspace& F = V.Q.space(V.first);
    OrbitReport r;
    r.bound = V.Q.space(V.second).dim();
    if (F.dim() == 0) {
        r.witness = g.zero();
        r.witness_found = r.bound == 0;
        return r;
    }
    // G00·c_F is dense in g_F and the orbit dimension is G00-invariant, so its
    // generic value is attained at any element of c_F with minimal centralizer.
    Rng rc = rng.fork("orbit css");
    CartanSubspace c = find_css(g, F, rc, "g" + to_string(V.first));
    Rng rg = rng.fork("orbit generic");
    Vec x = generic_element(g, c.space, rg);
    r.witness = x;
    r.max_orbit_dim = nilradical_orbit_dim(V, x);
    for (int s = 0; s < samples; ++s) {
        Vec y = rng.element(F, 3);
        ++r.samples;
        if (nilradical_orbit_dim(V, y) > r.max_orbit_dim)
            throw InternalInconsistency("a dense sample beats the certified generic orbit dimension");
    }
    if (r.max_orbit_dim > r.bound) throw InternalInconsistency("N_beta-orbit larger than the receiving summand");
    r.witness_found = r.max_orbit_dim == r.bound;
    return r;
}

Subspace stabilizer_at(const DegeneratedModule& V, const Vec& v) {
    const LieAlgebra& g = *V.Q.algebra;
    Mat A = Mat::Constant(g.dim(), V.dim_k(), FieldScalar(0));
    for (int i = 0; i < V.dim_k(); ++i) A.col(i) = V.act_basis(i, v);
    Subspace ker = nullspace(A);
    std::vector<Vec> vs;
    for (int k = 0; k < ker.dim(); ++k) {
        Vec x = g.zero();
        Vec c = ker.vector(k);
        for (int i = 0; i < V.dim_k(); ++i)
            if (!c(i).is_zero()) x += c(i) * V.k_basis[i];
        vs.push_back(x);
    }
    return Subspace::span(g.dim(), vs);
}

namespace {

struct GenericPoint {
    Vec xi, eta;
    int css_first = 0, css_second_xi = 0;
    Subspace z00, zbeta, zsecond;
};

GenericPoint draw_point(const DegeneratedModule& V, Rng& rng) {
    const LieAlgebra& g = *V.Q.algebra;
    const QuaternionicDecomposition& Q = V.Q;
    GenericPoint p;
    Rng r1 = rng.fork("css first");
    CartanSubspace cF = find_css(g, Q.space(V.first), r1, "g" + to_string(V.first));
    p.css_first = cF.dim();
    Rng r2 = rng.fork("xi");
    p.xi = cF.dim() ? generic_element(g, cF.space, r2) : g.zero();
    p.z00 = centralizer(g, p.xi, Q.g00);
    p.zbeta = centralizer(g, p.xi, Q.space(V.perm.beta));
    p.zsecond = centralizer(g, p.xi, Q.space(V.second));
    Rng r3 = rng.fork("css second");
    CartanSubspace cS = find_css(g, p.zsecond, r3, "g" + to_string(V.second) + "^xi");
    p.css_second_xi = cS.dim();
    Rng r4 = rng.fork("eta");
    p.eta = cS.dim() ? generic_element(g, cS.space, r4) : g.zero();
    return p;
}

}  // namespace

StabilizerReport generic_stabilizer(const DegeneratedModule& V, Rng& rng, int resamples) {
    const LieAlgebra& g = *V.Q.algebra;
    const QuaternionicDecomposition& Q = V.Q;
    StabilizerReport r;
    r.perm = V.perm;
    r.variant = V.variant;
    Rng r0 = rng.fork("point");
    GenericPoint p = draw_point(V, r0);
    r.xi = p.xi;
    r.eta = p.eta;
    r.css_first = p.css_first;
    r.css_second_xi = p.css_second_xi;
    r.stabilizer = stabilizer_at(V, p.xi + p.eta);
    Subspace z00eta = centralizer(g, p.eta, p.z00);
    r.predicted = sum(z00eta, p.zbeta);
    r.dim_00_xi_eta = z00eta.dim();
    r.dim_beta_xi = p.zbeta.dim();
    r.dim_second_xi = p.zsecond.dim();

    Rng rb = rng.fork("big css");
    r.css_big = find_css(g, sum(Q.space(V.first), Q.space(V.second)), rb, "big").dim();
    r.trdeg_a = r.css_first + r.css_second_xi;
    r.trdeg_b = r.css_big;
    r.agree = r.trdeg_a == r.trdeg_b;
    const int dimV = V.V.dim(), dimK = V.dim_k();
    r.rosenlicht = dimV - dimK + r.stabilizer.dim() == r.trdeg_a;
    r.cancellation = r.dim_beta_xi - r.dim_second_xi ==
                     Q.space(V.perm.beta).dim() - Q.space(V.second).dim();

    r.resampled_dims.push_back(r.stabilizer.dim());
    for (int s = 1; s < resamples; ++s) {
        Rng rs = rng.fork("resample" + std::to_string(s));
        GenericPoint q = draw_point(V, rs);
        r.resampled_dims.push_back(stabilizer_at(V, q.xi + q.eta).dim());
    }
    r.stable = true;
    for (int d : r.resampled_dims) r.stable = r.stable && d == r.stabilizer.dim();

    Rng ro = rng.fork("orbit");
    r.orbit = max_nilradical_orbit_dim(V, ro);
    return r;
}

}  // namespace isolab
