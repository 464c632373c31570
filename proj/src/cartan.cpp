#include "isolab/cartan.hpp"

#include "isolab/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace isolab {

namespace {

bool is_zero_vec(const Vec& v) {
    for (int k = 0; k < v.size(); ++k)
        if (!v(k).is_zero()) return false;
    return true;
}

std::optional<Vec> transpose_partner(const LieAlgebra& g, const Vec& v) {
    return g.coords(Mat(g.to_matrix(v).transpose()));
}

bool has_split_spectrum(const LieAlgebra& g, const Vec& y, bool rational_only) {
    auto ev = split_eigenvalues(g.to_matrix(y));
    if (!ev) return false;
    if (rational_only)
        for (const auto& l : *ev)
            if (!l.is_rational()) return false;
    return true;
}

std::vector<int> shuffled(int n, Rng& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int k = n - 1; k > 0; --k) std::swap(order[k], order[rng.uniform(0, k)]);
    return order;
}

int label_index(Label l) {
    switch (l) {
        case Label::g01: return 0;
        case Label::g10: return 1;
        case Label::g11: return 2;
        case Label::g00: break;
    }
    throw InvalidInput("g00 has no Cartan subspace");
}

CartanSubspace trivial_css(const LieAlgebra& g, const Subspace& ambient, const std::string& name) {
    CartanSubspace c;
    c.ambient_name = name;
    c.ambient = ambient;
    c.space = Subspace(g.dim());
    c.witness = g.zero();
    c.certificate = {true, true, true, true};
    return c;
}

}  // namespace

CssCertificate certify_css(const LieAlgebra& g, const Subspace& ambient, const Subspace& space, const Vec& witness) {
    CssCertificate c;
    c.abelian = is_abelian(g, space);
    c.witness_semisimple = is_semisimple(g, witness) && space.contains(witness);
    c.witness_generic = centralizer(g, witness, ambient) == space;
    c.saturated = centralizer(g, space, ambient) == space;
    return c;
}

CartanSubspace find_css(const LieAlgebra& g, const Subspace& ambient, Rng& rng, const std::string& name,
                        CssSearch opts) {
    if (ambient.dim() == 0) return trivial_css(g, ambient, name);
    for (int attempt = 0; attempt < opts.budget; ++attempt) {
        const long box = opts.box + attempt / 5;
        Vec x = rng.element(ambient, box);
        if (!is_semisimple(g, x)) continue;
        Subspace c = centralizer(g, x, ambient);
        if (!is_abelian(g, c)) continue;
        // semisimple x with abelian z_g(x) ∩ ambient already forces saturation
        CartanSubspace out;
        out.ambient_name = name;
        out.ambient = ambient;
        out.space = c;
        out.witness = x;
        out.certificate = certify_css(g, ambient, c, x);
        if (!out.certificate.ok())
            throw InternalInconsistency("CSS candidate in " + name + " is abelian but not saturated");
        return out;
    }
    throw Inconclusive("no certified Cartan subspace of " + name + " after " + std::to_string(opts.budget) +
                       " samples");
}

CartanSubspace find_split_css(const LieAlgebra& g, const Subspace& ambient, Rng& rng, const std::string& name,
                              int budget) {
    if (ambient.dim() == 0) return trivial_css(g, ambient, name);
    const int n = g.dim();
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Vec> gens;
        Subspace t(n);
        bool stuck = false;
        while (true) {
            Subspace Z = gens.empty() ? ambient : centralizer(g, t, ambient);
            if (Z == t) break;
            auto order = shuffled(Z.dim(), rng);
            std::optional<Vec> pick;
            for (bool rational : {true, false}) {
                for (int k : order) {
                    Vec v = Z.vector(k);
                    std::vector<Vec> cands{v};
                    if (auto p = transpose_partner(g, v); p && Z.contains(*p)) {
                        cands.push_back(v + *p);
                        cands.push_back(v - *p);
                    }
                    for (const auto& y : cands) {
                        if (is_zero_vec(y) || t.contains(y)) continue;
                        if (has_split_spectrum(g, y, rational)) {
                            pick = y;
                            break;
                        }
                    }
                    if (pick) break;
                }
                if (pick) break;
            }
            if (!pick) {
                stuck = true;
                break;
            }
            gens.push_back(*pick);
            t = Subspace::span(n, gens);
        }
        if (stuck) continue;
        for (int w = 0; w < 40; ++w) {
            Vec x = g.zero();
            for (const auto& v : gens) x += rng.scalar(2 + w / 5) * v;
            if (centralizer(g, x, ambient) != t) continue;
            CartanSubspace out;
            out.ambient_name = name;
            out.ambient = ambient;
            out.space = t;
            out.witness = x;
            out.generators = gens;
            out.certificate = certify_css(g, ambient, t, x);
            if (!out.certificate.ok()) throw InternalInconsistency("split torus in " + name + " failed its certificate");
            return out;
        }
    }
    throw Inconclusive("no split Cartan subspace of " + name + " found; realign the realization");
}

Vec generic_element(const LieAlgebra& g, const Subspace& S, Rng& rng, int budget) {
    const Subspace whole = g.whole();
    const Subspace z = centralizer(g, S, whole);
    for (int k = 0; k < budget; ++k) {
        Vec x = rng.element(S, 2 + k / 5);
        if (centralizer(g, x, whole) == z) return x;
    }
    throw Inconclusive("no generic element found in a subspace of dimension " + std::to_string(S.dim()));
}

const CartanSubspace& CoincidenceTable::little_css(Label l) const { return little.at(label_index(l)); }

const CoincidenceEntry& CoincidenceTable::entry(Label alpha, Label gamma) const {
    for (const auto& e : entries)
        if (e.alpha == alpha && e.gamma == gamma) return e;
    throw InvalidInput("no coincidence entry for that pair");
}

int big_index(Label alpha, Label gamma) {
    Label beta = third_label(alpha, gamma);
    for (int k = 1; k <= 3; ++k)
        if (fixed_label(k) == beta) return k;
    return 0;
}

CoincidenceEntry coincidence(const QuaternionicDecomposition& Q, const CartanSubspace& c, Label alpha, Label gamma,
                             int big_dim, Rng& rng) {
    const LieAlgebra& g = *Q.algebra;
    CoincidenceEntry e;
    e.alpha = alpha;
    e.gamma = gamma;
    e.beta = third_label(alpha, gamma);
    e.big = big_index(alpha, gamma);
    e.little_dim = c.dim();
    e.big_dim = big_dim;
    e.dims_equal = c.dim() == big_dim;
    Subspace big = sum(Q.space(alpha), Q.space(gamma));
    e.saturated = centralizer(g, c.space, big) == c.space;
    Vec x = generic_element(g, c.space, rng);
    e.witness_rank = rank(bracket_map(g, x, Q.space(e.beta)));
    e.witness_full = e.witness_rank == Q.space(gamma).dim();
    if (e.saturated != e.witness_full || e.saturated != e.dims_equal)
        throw InternalInconsistency("coincidence methods disagree for c" + to_string(alpha) + " in g" +
                                    to_string(alpha) + "+g" + to_string(gamma) + ": dims " +
                                    std::to_string(e.dims_equal) + ", saturation " + std::to_string(e.saturated) +
                                    ", witness " + std::to_string(e.witness_full));
    e.coincide = e.saturated;
    return e;
}

CoincidenceTable rank_table(const QuaternionicDecomposition& Q, Rng& rng) {
    const LieAlgebra& g = *Q.algebra;
    CoincidenceTable T;
    for (Label l : kNonzeroLabels) {
        Rng r = rng.fork("little" + to_string(l));
        T.little[label_index(l)] = find_css(g, Q.space(l), r, "g" + to_string(l));
    }
    for (int k = 1; k <= 3; ++k) {
        Rng r = rng.fork("big" + std::to_string(k));
        T.big[k - 1] = find_css(g, Q.big_minus(k), r, "sigma" + std::to_string(k) + " (-1)-space");
    }
    for (Label a : kNonzeroLabels)
        for (Label c : kNonzeroLabels) {
            if (a == c) continue;
            int k = big_index(a, c);
            if (T.little_css(a).dim() > T.big_css(k).dim())
                throw InternalInconsistency("little CSS larger than an enclosing big CSS");
            Rng r = rng.fork("coincidence" + to_string(a) + to_string(c));
            T.entries.push_back(coincidence(Q, T.little_css(a), a, c, T.big_css(k).dim(), r));
        }
    return T;
}

RaspredResult verify_raspred(const QuaternionicDecomposition& Q, const Vec& x, Label alpha) {
    if (alpha == Label::g00) throw InvalidInput("x must lie in a nonzero label");
    if (!Q.space(alpha).contains(x)) throw InvalidInput("x is not in g" + to_string(alpha));
    RaspredResult r;
    std::vector<Label> others;
    for (Label l : kNonzeroLabels)
        if (l != alpha) others.push_back(l);
    r.beta = others[0];
    r.gamma = others[1];
    r.dim_beta = rank(bracket_map(*Q.algebra, x, Q.space(r.beta)));
    r.dim_gamma = rank(bracket_map(*Q.algebra, x, Q.space(r.gamma)));
    return r;
}

Subspace bracket_span(const LieAlgebra& g, const Subspace& A, const Subspace& B) {
    std::vector<Vec> out;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < B.dim(); ++j) out.push_back(g.bracket(A.vector(i), B.vector(j)));
    return Subspace::span(g.dim(), out);
}

std::vector<RelationCheck> g11_zero_lemma(const QuaternionicDecomposition& Q) {
    if (Q.g11.dim() != 0) throw InvalidInput("the g11 = 0 checks need g11 = 0");
    const LieAlgebra& g = *Q.algebra;
    const Subspace zero(g.dim());
    Subspace m01 = bracket_span(g, Q.g01, Q.g01), m10 = bracket_span(g, Q.g10, Q.g10);
    std::vector<RelationCheck> out;
    out.push_back({"[m01,g10] = 0", brackets_into(g, m01, Q.g10, zero)});
    out.push_back({"[m10,g01] = 0", brackets_into(g, m10, Q.g01, zero)});
    out.push_back({"kappa(m01,m10) = 0",
                   is_zero_matrix(multiply(multiply(m01.basis(), g.killing()), Mat(m10.basis().transpose())))});
    out.push_back({"m01 ∩ m10 = 0", intersect(m01, m10).dim() == 0});
    Subspace I10 = sum(m10, Q.g10), I01 = sum(m01, Q.g01);
    out.push_back({"m10+g10 is an ideal", brackets_into(g, g.whole(), I10, I10)});
    out.push_back({"m01+g01 is an ideal", brackets_into(g, g.whole(), I01, I01)});
    out.push_back({"the two ideals are disjoint", intersect(I10, I01).dim() == 0});
    return out;
}

std::optional<std::vector<WeightSpace>> torus_weights(const LieAlgebra& g, const std::vector<Vec>& torus,
                                                      const Subspace& W) {
    std::vector<LinearOp> ops;
    std::vector<std::vector<FieldScalar>> cands;
    for (const auto& t : torus) {
        auto ev = split_eigenvalues(g.to_matrix(t));
        if (!ev) return std::nullopt;
        cands.push_back(differences(*ev));
        ops.push_back([&g, t](const Vec& v) { return g.bracket(t, v); });
    }
    return joint_decompose(W, ops, cands);
}

std::optional<Vec> borel_nilpotent_search(const LieAlgebra& g, const std::vector<Vec>& torus, const Subspace& W,
                                          Rng& rng, const std::function<bool(const Vec&)>& accept, int orderings) {
    auto ws = torus_weights(g, torus, W);
    if (!ws) throw InvalidInput("torus is not split on the target space");
    // weights as rational vectors
    std::vector<std::vector<Rational>> flat;
    for (const auto& w : *ws) {
        std::vector<Rational> f;
        for (const auto& c : w.weight)
            for (const auto& q : c.coefficients()) f.push_back(q);
        flat.push_back(std::move(f));
    }
    const size_t len = flat.empty() ? 0 : flat.front().size();
    std::set<std::vector<bool>> seen;
    for (int raw = 0; raw < 8 * orderings && static_cast<int>(seen.size()) < orderings; ++raw) {
        std::vector<long> L(len);
        for (auto& l : L) l = rng.uniform(-997, 997);
        std::vector<bool> positive;
        bool degenerate = false;
        for (const auto& f : flat) {
            Rational v = 0;
            bool zero_weight = true;
            for (size_t k = 0; k < len; ++k) {
                v += Rational(L[k]) * f[k];
                if (f[k] != 0) zero_weight = false;
            }
            if (!zero_weight && v == 0) degenerate = true;
            positive.push_back(v > 0);
        }
        if (degenerate || !seen.insert(positive).second) continue;
        std::vector<Vec> P;
        for (size_t k = 0; k < ws->size(); ++k)
            if (positive[k])
                for (int j = 0; j < (*ws)[k].space.dim(); ++j) P.push_back((*ws)[k].space.vector(j));
        if (P.empty()) continue;
        Vec e = rng.element(Subspace::span(g.dim(), P), 3);
        if (!is_nilpotent(g, e)) throw InternalInconsistency("positive weight space contains a non-nilpotent element");
        if (accept(e)) return e;
    }
    return std::nullopt;
}

RestrictedRootSystem restricted_roots(const LieAlgebra& g, const CartanSubspace& c) {
    if (c.dim() > 0 && static_cast<int>(c.generators.size()) != c.dim())
        throw InvalidInput("restricted roots need a split CSS; realign the CSS");
    auto ws = torus_weights(g, c.generators, g.whole());
    if (!ws) throw InvalidInput("CSS has a non-split spectrum; realign the CSS");
    RestrictedRootSystem R;
    R.css_basis = c.generators;
    R.zero_space = Subspace(g.dim());
    for (auto& w : *ws) {
        bool zero = true;
        for (const auto& v : w.weight) {
            if (!v.is_rational()) throw InvalidInput("CSS has an irrational spectrum; realign the CSS");
            if (!v.is_zero()) zero = false;
        }
        if (zero) {
            R.zero_space = w.space;
            continue;
        }
        R.roots.push_back(w.weight);
        R.root_spaces.push_back(w.space);
        R.multiplicities.push_back(w.space.dim());
    }
    int total = R.zero_space.dim();
    for (int m : R.multiplicities) total += m;
    if (total != g.dim()) throw InternalInconsistency("restricted root spaces do not fill g");
    for (size_t a = 0; a < R.roots.size(); ++a) {
        std::vector<FieldScalar> neg;
        for (const auto& v : R.roots[a]) neg.push_back(-v);
        auto it = std::find(R.roots.begin(), R.roots.end(), neg);
        if (it == R.roots.end() || R.multiplicities[it - R.roots.begin()] != R.multiplicities[a])
            throw InternalInconsistency("restricted roots are not symmetric under negation");
    }
    return R;
}

Automorphism sigma3_from_form(AlgebraPtr g, const RestrictedRootSystem& phi, const std::vector<long>& ell,
                              const Automorphism& sigma) {
    if (ell.size() != phi.css_basis.size()) throw InvalidInput("linear form has the wrong length");
    const int n = g->dim();
    std::vector<Vec> cols;
    std::vector<int> signs;
    for (int j = 0; j < phi.zero_space.dim(); ++j) {
        cols.push_back(phi.zero_space.vector(j));
        signs.push_back(1);
    }
    bool any_odd = false;
    for (size_t a = 0; a < phi.roots.size(); ++a) {
        Rational level = 0;
        for (size_t k = 0; k < ell.size(); ++k) level += Rational(ell[k]) * phi.roots[a][k].rational();
        if (level.get_den() != 1) throw InvalidInput("linear form is not integral on the restricted roots");
        mpz_class lv = level.get_num();
        bool odd = mpz_odd_p(lv.get_mpz_t()) != 0;
        any_odd = any_odd || odd;
        for (int j = 0; j < phi.root_spaces[a].dim(); ++j) {
            cols.push_back(phi.root_spaces[a].vector(j));
            signs.push_back(odd ? -1 : 1);
        }
    }
    if (!any_odd) throw InvalidInput("linear form takes only even values on the restricted roots");
    Mat B(n, n), D = Mat::Constant(n, n, FieldScalar(0));
    for (int k = 0; k < n; ++k) {
        B.col(k) = cols[k];
        D(k, k) = FieldScalar(signs[k]);
    }
    Automorphism s3 = make_automorphism(std::move(g), multiply(multiply(B, D), inverse(B)), AutKind::composite,
                                        std::nullopt, "parity of a linear form on restricted roots");
    if (s3.order != 2) throw InternalInconsistency("form-induced map is not an involution");
    if (multiply(s3.map, sigma.map) != multiply(sigma.map, s3.map))
        throw InternalInconsistency("form-induced involution does not commute with sigma");
    return s3;
}

}  // namespace isolab
