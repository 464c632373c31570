#include "isolab/involution.hpp"

#include "isolab/errors.hpp"
#include "isolab/spectrum.hpp"

#include <algorithm>
#include <cctype>

namespace isolab {

namespace {

constexpr int kMaxOrder = 12;

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

// Split on sep outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

Mat map_power_identity_check(const Mat& map, int& order) {
    const int n = static_cast<int>(map.rows());
    Mat I = identity(n);
    Mat P = map;
    order = 1;
    while (P != I) {
        if (++order > kMaxOrder) throw InvalidInput("automorphism has order above " + std::to_string(kMaxOrder));
        P = multiply(P, map);
    }
    return P;
}

Mat symplectic_form(int n) {
    if (n % 2) throw InvalidInput("symplectic form needs even size");
    Mat J = Mat::Constant(n, n, FieldScalar(0));
    for (int a = 0; a < n; ++a) J(a, n - 1 - a) = FieldScalar(a < n / 2 ? 1 : -1);
    return J;
}

Mat antidiag_form(int n) {
    Mat J = Mat::Constant(n, n, FieldScalar(0));
    for (int a = 0; a < n; ++a) J(a, n - 1 - a) = FieldScalar(1);
    return J;
}

const AlgebraPtr& part(const AlgebraPtr& g, int k) {
    if (g->parts().size() != 2) throw InvalidInput("'" + g->label() + "' is not a direct sum of two summands");
    return g->parts()[k];
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat m = Mat::Constant(a.rows() + b.rows(), a.cols() + b.cols(), FieldScalar(0));
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

}  // namespace

std::string to_string(AutKind k) {
    switch (k) {
        case AutKind::inner: return "inner";
        case AutKind::outer: return "outer";
        case AutKind::composite: return "composite";
    }
    return "?";
}

bool Automorphism::is_identity() const { return map == identity(algebra->dim()); }

Subspace Automorphism::eigenspace(const FieldScalar& lambda) const {
    Mat M = map;
    for (int k = 0; k < M.rows(); ++k) M(k, k) -= lambda;
    return nullspace(M);
}

Automorphism make_automorphism(AlgebraPtr g, Mat map, AutKind kind, std::optional<Mat> witness,
                               std::string description) {
    const int n = g->dim();
    if (map.rows() != n || map.cols() != n) throw InvalidInput("automorphism matrix has the wrong size");
    if (rank(map) != n) throw InvalidInput("map is not invertible");
    std::vector<Vec> img(n);
    for (int k = 0; k < n; ++k) img[k] = map.col(k);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const SparseVec& c = g->structure(i, j);
            Vec lhs = Vec::Constant(n, FieldScalar(0));
            for (const auto& t : c)
                for (int r = 0; r < n; ++r)
                    if (!img[t.index](r).is_zero()) lhs(r) += t.coeff * img[t.index](r);
            if (lhs != g->bracket(img[i], img[j]))
                throw InvalidInput("map does not preserve the bracket: " + description);
        }
    Mat K = g->killing();
    if (multiply(multiply(Mat(map.transpose()), K), map) != K)
        throw InternalInconsistency("automorphism does not preserve the Killing form");
    Automorphism a;
    a.algebra = std::move(g);
    map_power_identity_check(map, a.order);
    a.map = std::move(map);
    a.kind = kind;
    a.witness = std::move(witness);
    a.description = std::move(description);
    return a;
}

Mat induced_map(const LieAlgebra& g, const std::function<Mat(const Mat&)>& f) {
    Mat M(g.dim(), g.dim());
    for (int k = 0; k < g.dim(); ++k) {
        auto c = g.coords(f(g.basis_matrix(k)));
        if (!c) throw InvalidInput("map does not preserve " + g.label());
        M.col(k) = *c;
    }
    return M;
}

Automorphism identity_automorphism(AlgebraPtr g) {
    Automorphism a;
    a.map = identity(g->dim());
    a.witness = identity(g->rep_dim());
    a.kind = AutKind::inner;
    a.order = 1;
    a.description = "id";
    a.algebra = std::move(g);
    return a;
}

namespace {

// Int(s) is inner unless s mixes simple blocks or, on a type D block with
// s^T J s = c J, det(s) = -c^(n/2), i.e. s is a scaled reflection.
bool witness_is_inner(const LieAlgebra& g, const Mat& s) {
    const auto& blocks = g.blocks();
    for (const auto& b : blocks) {
        for (int i = b.rep_offset; i < b.rep_offset + b.rep_size; ++i)
            for (int j = 0; j < s.cols(); ++j)
                if ((j < b.rep_offset || j >= b.rep_offset + b.rep_size) && !s(i, j).is_zero()) return false;
        if (b.type != 'D') continue;
        const int n = b.rep_size;
        Mat sb = s.block(b.rep_offset, b.rep_offset, n, n);
        Mat lhs = multiply(multiply(Mat(sb.transpose()), b.form), sb);
        FieldScalar c(0);
        for (int i = 0; i < n && c.is_zero(); ++i)
            for (int j = 0; j < n && c.is_zero(); ++j)
                if (!b.form(i, j).is_zero()) c = lhs(i, j) / b.form(i, j);
        FieldScalar cp(1);
        for (int k = 0; k < n / 2; ++k) cp = cp * c;
        if (det(sb) != cp) return false;
    }
    return true;
}

}  // namespace

Automorphism inner_automorphism(AlgebraPtr g, const Mat& s) {
    if (s.rows() != g->rep_dim() || s.cols() != g->rep_dim())
        throw InvalidInput("group element has the wrong size for " + g->label());
    Mat si;
    try {
        si = inverse(s);
    } catch (const std::domain_error&) {
        throw InvalidInput("group element is singular");
    }
    Mat map = induced_map(*g, [&](const Mat& X) { return multiply(multiply(s, X), si); });
    const AutKind kind = witness_is_inner(*g, s) ? AutKind::inner : AutKind::outer;
    return make_automorphism(std::move(g), std::move(map), kind, s, "Int(s)");
}

Automorphism inner_involution(AlgebraPtr g, const Mat& s) {
    Mat s2 = multiply(s, s);
    if (s2 != Mat(s2(0, 0) * identity(static_cast<int>(s.rows()))))
        throw InvalidInput("s^2 is not scalar, so Int(s) is not an involution");
    Automorphism a = inner_automorphism(std::move(g), s);
    if (a.order > 2) throw InternalInconsistency("Int(s) with scalar s^2 has order above 2");
    return a;
}

Automorphism outer_involution_sl(AlgebraPtr g, const std::optional<Mat>& form) {
    const int n = g->rep_dim();
    Mat J = form ? *form : identity(n);
    Mat Ji;
    try {
        Ji = inverse(J);
    } catch (const std::domain_error&) {
        throw InvalidInput("form is singular");
    }
    Mat map = induced_map(*g, [&](const Mat& X) { return Mat(-multiply(multiply(J, Mat(X.transpose())), Ji)); });
    Automorphism a = make_automorphism(std::move(g), std::move(map), AutKind::outer, std::nullopt,
                                       form ? "-J x^T J^-1" : "-x^T");
    if (a.order > 2) throw InvalidInput("x -> -J x^T J^-1 is not an involution for this J");
    return a;
}

Automorphism swap_involution(AlgebraPtr g) {
    const auto& a = part(g, 0);
    const auto& b = part(g, 1);
    if (a->label() != b->label()) throw InvalidInput("swap needs two equal summands");
    const int d = a->dim();
    Mat M = Mat::Constant(2 * d, 2 * d, FieldScalar(0));
    for (int k = 0; k < d; ++k) {
        M(d + k, k) = FieldScalar(1);
        M(k, d + k) = FieldScalar(1);
    }
    return make_automorphism(std::move(g), std::move(M), AutKind::outer, std::nullopt, "swap");
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
    if (a.algebra != b.algebra) throw InvalidInput("composing automorphisms of different algebras");
    std::optional<Mat> w;
    AutKind kind = AutKind::composite;
    if (a.witness && b.witness) {
        w = multiply(*a.witness, *b.witness);
        kind = witness_is_inner(*a.algebra, *w) ? AutKind::inner : AutKind::outer;
    }
    return make_automorphism(a.algebra, multiply(a.map, b.map), kind, std::move(w),
                             "(" + a.description + ")(" + b.description + ")");
}

Automorphism conjugate(const Automorphism& phi, const Automorphism& sigma) {
    if (phi.algebra != sigma.algebra) throw InvalidInput("conjugating automorphisms of different algebras");
    std::optional<Mat> w;
    if (phi.witness && sigma.witness) w = multiply(multiply(*phi.witness, *sigma.witness), inverse(*phi.witness));
    return make_automorphism(sigma.algebra, multiply(multiply(phi.map, sigma.map), inverse(phi.map)), sigma.kind,
                             std::move(w), "phi (" + sigma.description + ") phi^-1");
}

Automorphism block_sum(AlgebraPtr g, const Automorphism& a, const Automorphism& b) {
    if (a.algebra != part(g, 0) || b.algebra != part(g, 1))
        throw InvalidInput("block_sum: automorphisms do not match the summands");
    std::optional<Mat> w;
    if (a.witness && b.witness) w = block_diag(*a.witness, *b.witness);
    AutKind kind = (a.kind == AutKind::inner && b.kind == AutKind::inner) ? AutKind::inner : AutKind::outer;
    return make_automorphism(std::move(g), block_diag(a.map, b.map), kind, std::move(w),
                             "(" + a.description + ")+(" + b.description + ")");
}

bool operator==(const Automorphism& a, const Automorphism& b) { return a.algebra == b.algebra && a.map == b.map; }

Mat parse_group_matrix(const std::string& spec0, int n) {
    std::string spec = trim(spec0);
    bool anti = false;
    if (starts_with(spec, "antidiag(")) {
        anti = true;
        spec = spec.substr(8);
    } else if (starts_with(spec, "diag(")) {
        spec = spec.substr(4);
    } else {
        throw InvalidInput("expected diag(...) or antidiag(...): " + spec0);
    }
    if (spec.size() < 2 || spec.back() != ')') throw InvalidInput("unbalanced parentheses: " + spec0);
    auto entries = split_top(spec.substr(1, spec.size() - 2), ',');
    if (static_cast<int>(entries.size()) != n)
        throw InvalidInput("expected " + std::to_string(n) + " entries in " + spec0);
    Mat M = Mat::Constant(n, n, FieldScalar(0));
    for (int a = 0; a < n; ++a) {
        FieldScalar v;
        try {
            v = FieldScalar::parse(entries[a]);
        } catch (const std::domain_error& e) {
            throw FieldTooSmall(std::string(e.what()) + "; raise ISOLAB_CYCLOTOMIC_M");
        } catch (const std::exception& e) {
            throw InvalidInput("bad matrix entry '" + entries[a] + "': " + e.what());
        }
        M(a, anti ? n - 1 - a : a) = v;
    }
    return M;
}

Mat parse_matrix_expr(const std::string& spec0, int n) {
    std::string spec = trim(spec0);
    if (starts_with(spec, "diag(") || starts_with(spec, "antidiag(")) return parse_group_matrix(spec, n);
    Mat M = Mat::Constant(n, n, FieldScalar(0));
    // signed terms of the form [coef*]E(a,b)
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0, sign = 1;
    std::string cur;
    for (char c : spec) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0) {
            if (!trim(cur).empty()) terms.push_back({sign, trim(cur)});
            cur.clear();
            sign = c == '-' ? -1 : 1;
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    if (!trim(cur).empty()) terms.push_back({sign, trim(cur)});
    if (terms.empty()) throw InvalidInput("empty matrix expression");
    for (auto& [sg, t] : terms) {
        FieldScalar coef(sg);
        std::string e = t;
        auto star = t.rfind('*');
        if (star != std::string::npos) {
            coef = coef * FieldScalar::parse(t.substr(0, star));
            e = t.substr(star + 1);
        }
        int a = 0, b = 0;
        char tail = 0;
        if (std::sscanf(e.c_str(), "E(%d,%d)%c", &a, &b, &tail) != 2)
            throw InvalidInput("expected E(a,b) in matrix expression: " + t);
        if (a < 1 || b < 1 || a > n || b > n) throw InvalidInput("index out of range in " + t);
        M(a - 1, b - 1) += coef;
    }
    return M;
}

Automorphism parse_automorphism(AlgebraPtr g, const std::string& spec0) {
    const std::string spec = trim(spec0);
    const int n = g->rep_dim();
    if (spec == "id") return identity_automorphism(std::move(g));
    if (spec == "negtranspose") return outer_involution_sl(std::move(g));
    if (spec == "negtranspose:sp") return outer_involution_sl(std::move(g), symplectic_form(n));
    if (spec == "negtranspose:antidiag") return outer_involution_sl(std::move(g), antidiag_form(n));
    if (spec == "swap") return swap_involution(std::move(g));
    if (starts_with(spec, "inner:")) {
        Automorphism a = inner_involution(g, parse_group_matrix(spec.substr(6), n));
        a.description = spec;
        return a;
    }
    if (starts_with(spec, "conj:")) {
        Automorphism a = inner_automorphism(g, parse_matrix_expr(spec.substr(5), n));
        a.description = spec;
        return a;
    }
    if (starts_with(spec, "compose:")) {
        auto args = split_top(spec.substr(8), ',');
        if (args.size() != 2) throw InvalidInput("compose takes two arguments: " + spec);
        return compose(parse_automorphism(g, args[0]), parse_automorphism(g, args[1]));
    }
    if (starts_with(spec, "both:")) {
        std::string inner = spec.substr(5);
        return block_sum(g, parse_automorphism(part(g, 0), inner), parse_automorphism(part(g, 1), inner));
    }
    if (starts_with(spec, "pair:")) {
        auto args = split_top(spec.substr(5), '|');
        if (args.size() != 2) throw InvalidInput("pair takes two arguments: " + spec);
        return block_sum(g, parse_automorphism(part(g, 0), args[0]), parse_automorphism(part(g, 1), args[1]));
    }
    throw InvalidInput("unknown automorphism '" + spec + "'");
}

std::string to_string(Label l) {
    switch (l) {
        case Label::g00: return "00";
        case Label::g01: return "01";
        case Label::g10: return "10";
        case Label::g11: return "11";
    }
    return "?";
}

Label parse_label(const std::string& s0) {
    std::string s = trim(s0);
    if (starts_with(s, "g")) s = s.substr(1);
    if (s == "00") return Label::g00;
    if (s == "01") return Label::g01;
    if (s == "10") return Label::g10;
    if (s == "11") return Label::g11;
    throw InvalidInput("bad label '" + s0 + "'");
}

Label fixed_label(int k) {
    switch (k) {
        case 1: return Label::g01;
        case 2: return Label::g10;
        case 3: return Label::g11;
    }
    throw InvalidInput("sigma index must be 1, 2 or 3");
}

Label third_label(Label a, Label b) {
    if (a == Label::g00 || b == Label::g00 || a == b) throw InvalidInput("third_label needs two distinct nonzero labels");
    for (Label l : kNonzeroLabels)
        if (l != a && l != b) return l;
    return Label::g00;
}

const Subspace& QuaternionicDecomposition::space(Label l) const {
    switch (l) {
        case Label::g00: return g00;
        case Label::g01: return g01;
        case Label::g10: return g10;
        case Label::g11: return g11;
    }
    return g00;
}

std::array<std::array<int, 2>, 2> QuaternionicDecomposition::dim_matrix() const {
    return {{{g00.dim(), g01.dim()}, {g10.dim(), g11.dim()}}};
}

Subspace QuaternionicDecomposition::big_minus(int k) const {
    Label f = fixed_label(k);
    Subspace s(algebra->dim());
    for (Label l : kNonzeroLabels)
        if (l != f) s = sum(s, space(l));
    return s;
}

Subspace QuaternionicDecomposition::big_plus(int k) const { return sum(g00, space(fixed_label(k))); }

const Automorphism& QuaternionicDecomposition::sigma(int k) const {
    switch (k) {
        case 1: return sigma1;
        case 2: return sigma2;
        case 3: return sigma3;
    }
    throw InvalidInput("sigma index must be 1, 2 or 3");
}

QuaternionicDecomposition quaternionic(const Automorphism& s1, const Automorphism& s2) {
    if (s1.algebra != s2.algebra) throw InvalidInput("involutions act on different algebras");
    if (s1.order != 2 || s2.order != 2) throw InvalidInput("both maps must be involutions (order exactly 2)");
    if (s1 == s2) throw InvalidInput("sigma1 and sigma2 coincide");
    if (multiply(s1.map, s2.map) != multiply(s2.map, s1.map)) throw InvalidInput("involutions do not commute");
    QuaternionicDecomposition Q;
    Q.algebra = s1.algebra;
    Q.sigma1 = s1;
    Q.sigma2 = s2;
    Q.sigma3 = compose(s1, s2);
    const FieldScalar one(1), minus(-1);
    Subspace p1 = s1.eigenspace(one), m1 = s1.eigenspace(minus);
    Subspace p2 = s2.eigenspace(one), m2 = s2.eigenspace(minus);
    Q.g00 = intersect(p1, p2);
    Q.g01 = intersect(p1, m2);
    Q.g10 = intersect(m1, p2);
    Q.g11 = intersect(m1, m2);
    if (Q.g00.dim() + Q.g01.dim() + Q.g10.dim() + Q.g11.dim() != Q.algebra->dim())
        throw InternalInconsistency("joint eigenspaces do not fill the algebra");
    for (const auto& r : grading_relations(Q))
        if (!r.ok) throw InternalInconsistency("grading relation fails: " + r.name);
    for (const auto& r : killing_orthogonality(Q))
        if (!r.ok) throw InternalInconsistency("Killing orthogonality fails: " + r.name);
    return Q;
}

std::vector<RelationCheck> grading_relations(const QuaternionicDecomposition& Q) {
    const Label L[4] = {Label::g00, Label::g01, Label::g10, Label::g11};
    std::vector<RelationCheck> out;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            Label c = L[a ^ b];  // labels add in Z/2 x Z/2
            std::string name = "[g" + to_string(L[a]) + ",g" + to_string(L[b]) + "] in g" + to_string(c);
            out.push_back({name, brackets_into(*Q.algebra, Q.space(L[a]), Q.space(L[b]), Q.space(c))});
        }
    return out;
}

std::vector<RelationCheck> killing_orthogonality(const QuaternionicDecomposition& Q) {
    const Label L[4] = {Label::g00, Label::g01, Label::g10, Label::g11};
    const Mat& K = Q.algebra->killing();
    std::vector<RelationCheck> out;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            const Subspace &A = Q.space(L[a]), &B = Q.space(L[b]);
            bool ok = is_zero_matrix(multiply(multiply(A.basis(), K), Mat(B.basis().transpose())));
            out.push_back({"g" + to_string(L[a]) + " perp g" + to_string(L[b]), ok});
        }
    return out;
}

Dyad build_dyad(const Automorphism& sigma1, const Vec& t) {
    const AlgebraPtr& g = sigma1.algebra;
    if (sigma1.order != 2) throw InvalidInput("dyad needs an involution");
    if (t.size() != g->dim()) throw InvalidInput("torus direction has the wrong length");
    if (t == g->zero()) throw InvalidInput("torus direction is zero");
    if (sigma1.apply(t) != Vec(-t)) throw InvalidInput("torus direction is not in the (-1)-eigenspace of sigma1");
    Mat T = g->to_matrix(t);
    auto ev = split_eigenvalues(T);
    if (!ev) throw InvalidInput("torus direction is not semisimple with split spectrum");
    for (const auto& l : *ev)
        if (!l.is_rational()) throw InvalidInput("torus direction needs rational eigenvalues");
    FieldScalar i;
    try {
        i = FieldScalar::imag_unit();
    } catch (const std::domain_error&) {
        throw FieldTooSmall("dyad needs i; use ISOLAB_CYCLOTOMIC_M divisible by 4");
    }
    const auto& lam = *ev;
    // common rational step of the spectrum
    Rational step = 0;
    for (const auto& l : lam) {
        Rational d = l.rational() - lam[0].rational();
        if (d == 0) continue;
        d = abs(d);
        if (step == 0) {
            step = d;
        } else {
            mpz_class num = gcd(step.get_num() * d.get_den(), d.get_num() * step.get_den());
            step = Rational(num, step.get_den() * d.get_den());
            step.canonicalize();
        }
    }
    const int n = g->rep_dim();
    Mat s = Mat::Constant(n, n, FieldScalar(0));
    for (size_t a = 0; a < lam.size(); ++a) {
        Mat P = identity(n);
        for (size_t b = 0; b < lam.size(); ++b) {
            if (b == a) continue;
            Mat F = T;
            for (int k = 0; k < n; ++k) F(k, k) -= lam[b];
            P = multiply(P, Mat(F * (lam[a] - lam[b]).inverse()));
        }
        Rational mu = (lam[a].rational() - lam[0].rational()) / step;
        mpz_class e = mu.get_num() % 4;
        if (e < 0) e += 4;
        FieldScalar c(1);
        for (long k = 0; k < e.get_si(); ++k) c *= i;
        s += c * P;
    }
    Automorphism phi = inner_automorphism(g, s);
    Automorphism sigma2 = conjugate(phi, sigma1);
    Mat I = identity(g->dim());
    Mat phi2 = multiply(phi.map, phi.map);
    if (multiply(phi2, phi2) != I) throw InternalInconsistency("dyad: phi^4 != id");
    if (multiply(sigma1.map, sigma2.map) != phi2) throw InternalInconsistency("dyad: sigma1 sigma2 != phi^2");
    if (multiply(sigma1.map, sigma2.map) != multiply(sigma2.map, sigma1.map))
        throw InternalInconsistency("dyad: sigma1 and sigma2 do not commute");
    if (sigma2 == sigma1) throw InvalidInput("dyad collapses: the torus direction gives sigma2 = sigma1");
    return {std::move(phi), std::move(sigma2), std::move(s)};
}

CanonicalTriple canonical_triple(AlgebraPtr g, const Automorphism& mu) {
    if (mu.algebra != g) throw InvalidInput("mu acts on a different algebra");
    if (mu.is_identity()) throw InvalidInput("mu must be a nontrivial involution");
    if (mu.order != 2) throw InvalidInput("mu must be an involution");
    if (!mu.witness) throw InvalidInput("mu must be inner with a group witness");
    const Mat& s = *mu.witness;
    const int n = g->rep_dim();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && !s(a, b).is_zero()) throw InvalidInput("canonical triple needs a diagonal witness for mu");
    Automorphism theta = outer_involution_sl(g);
    {
        Subspace g0 = theta.eigenspace(FieldScalar(1)), g1 = theta.eigenspace(FieldScalar(-1));
        if (g1.dim() - g0.dim() != g->rank())
            throw InvalidInput("x -> -x^T is not of maximal rank in this realization of " + g->label());
    }
    auto root = [](const FieldScalar& x) {
        auto r = sqrt_in_field(x);
        if (!r) throw FieldTooSmall("square root of " + x.str() + " is not in the field; raise ISOLAB_CYCLOTOMIC_M");
        return *r;
    };
    std::vector<FieldScalar> d(n, FieldScalar(0));
    for (const auto& blk : g->blocks()) {
        const int o = blk.rep_offset, m = blk.rep_size;
        if (blk.form.size() == 0) {
            for (int a = 0; a < m; ++a) d[o + a] = root(s(o + a, o + a).inverse());
            continue;
        }
        // the form pairs a with m-1-a; need g_a g_{a'} = c for a constant c with c^2 s_a s_{a'} = 1
        std::optional<FieldScalar> c;
        if (m % 2 == 1) c = s(o + m / 2, o + m / 2).inverse();
        for (int a = 0; a < m / 2; ++a) {
            FieldScalar lam = s(o + a, o + a) * s(o + m - 1 - a, o + m - 1 - a);
            if (!c) c = root(lam.inverse());
            if (*c * *c * lam != FieldScalar(1)) throw InvalidInput("witness of mu does not preserve the form up to scale");
        }
        for (int a = 0; a < m / 2; ++a) {
            d[o + a] = root(s(o + a, o + a).inverse());
            d[o + m - 1 - a] = *c / d[o + a];
        }
        if (m % 2 == 1) d[o + m / 2] = root(*c);
    }
    Mat G = Mat::Constant(n, n, FieldScalar(0));
    for (int a = 0; a < n; ++a) G(a, a) = d[a];
    Automorphism theta_prime = conjugate(inner_automorphism(g, G), theta);
    theta_prime.description = "-g0^2 x^T g0^-2";
    if (compose(theta, theta_prime) != mu) throw InternalInconsistency("canonical triple: theta theta' != mu");
    if (theta_prime.order != 2) throw InternalInconsistency("canonical triple: theta' is not an involution");
    if (theta_prime.eigenspace(FieldScalar(-1)).dim() - theta_prime.eigenspace(FieldScalar(1)).dim() != g->rank())
        throw InternalInconsistency("canonical triple: theta' is not of maximal rank");
    QuaternionicDecomposition Q = quaternionic(theta, theta_prime);
    auto dm = Q.dim_matrix();
    if (dm[0][1] != dm[1][0] || dm[1][1] - dm[0][0] != g->rank())
        throw InternalInconsistency("canonical triple: unexpected dimension pattern");
    return {std::move(theta), std::move(theta_prime), std::move(G)};
}

}  // namespace isolab
