#include "isolab/lie.hpp"

#include <algorithm>
#include <regex>

namespace isolab {

LieAlgebra::LieAlgebra(std::string label, int rep_dim, std::vector<SparseMat> basis,
                       std::vector<SimpleBlock> blocks)
    : label_(std::move(label)), rep_dim_(rep_dim), basis_(std::move(basis)), blocks_(std::move(blocks)) {
    const int n = dim(), len = rep_dim_ * rep_dim_;
    Mat F = Mat::Constant(n, len, FieldScalar(0));
    for (int k = 0; k < n; ++k)
        for (const auto& e : basis_[k]) F(k, e.row * rep_dim_ + e.col) += e.value;
    Echelon ech = rref(F);
    if (static_cast<int>(ech.pivots.size()) != n)
        throw InvalidInput("basis matrices of " + label_ + " are linearly dependent");
    pivot_entries_ = ech.pivots;
    Mat P(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) P(j, k) = F(k, pivot_entries_[j]);
    coord_map_ = inverse(P);
    build_structure_constants();
    build_killing();
}

int LieAlgebra::rank() const {
    int r = 0;
    for (const auto& b : blocks_) r += b.rank;
    return r;
}

std::vector<int> LieAlgebra::exponents() const {
    std::vector<int> out;
    for (const auto& b : blocks_) {
        auto e = exponents_of(b.type, b.rank);
        out.insert(out.end(), e.begin(), e.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

int LieAlgebra::k0() const {
    int c = 0;
    for (int e : exponents()) c += (e % 2 == 0);
    return c;
}

int LieAlgebra::k1() const { return rank() - k0(); }

Mat LieAlgebra::basis_matrix(int k) const {
    Mat m = Mat::Constant(rep_dim_, rep_dim_, FieldScalar(0));
    for (const auto& e : basis_[k]) m(e.row, e.col) += e.value;
    return m;
}

Mat LieAlgebra::to_matrix(const Vec& x) const {
    Mat m = Mat::Constant(rep_dim_, rep_dim_, FieldScalar(0));
    for (int k = 0; k < dim(); ++k) {
        if (x(k).is_zero()) continue;
        for (const auto& e : basis_[k]) m(e.row, e.col) += x(k) * e.value;
    }
    return m;
}

std::optional<Vec> LieAlgebra::coords(const Mat& X) const {
    if (X.rows() != rep_dim_ || X.cols() != rep_dim_) return std::nullopt;
    const int n = dim();
    Vec xp(n);
    for (int j = 0; j < n; ++j) xp(j) = X(pivot_entries_[j] / rep_dim_, pivot_entries_[j] % rep_dim_);
    Vec c = multiply(coord_map_, xp);
    if (to_matrix(c) != X) return std::nullopt;
    return c;
}

Vec LieAlgebra::coords_checked(const Mat& X) const {
    auto c = coords(X);
    if (!c) throw InvalidInput("matrix does not lie in " + label_);
    return *c;
}

void LieAlgebra::build_structure_constants() {
    const int n = dim();
    sc_.assign(static_cast<size_t>(n) * n, SparseVec{});
    // Row index of each basis matrix for sparse products.
    std::vector<std::vector<std::vector<std::pair<int, FieldScalar>>>> by_row(n);
    for (int k = 0; k < n; ++k) {
        by_row[k].resize(rep_dim_);
        for (const auto& e : basis_[k]) by_row[k][e.row].push_back({e.col, e.value});
    }
    Mat C(rep_dim_, rep_dim_);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            C.setConstant(FieldScalar(0));
            bool nonzero = false;
            for (const auto& e : basis_[i])
                for (const auto& [c, v] : by_row[j][e.col]) {
                    C(e.row, c) += e.value * v;
                    nonzero = true;
                }
            for (const auto& e : basis_[j])
                for (const auto& [c, v] : by_row[i][e.col]) {
                    C(e.row, c) -= e.value * v;
                    nonzero = true;
                }
            if (!nonzero || is_zero_matrix(C)) continue;
            auto coeff = coords(C);
            if (!coeff) throw InternalInconsistency("bracket does not close in " + label_);
            SparseVec s, t;
            for (int k = 0; k < n; ++k)
                if (!(*coeff)(k).is_zero()) {
                    s.push_back({k, (*coeff)(k)});
                    t.push_back({k, -(*coeff)(k)});
                }
            sc_[i * n + j] = std::move(s);
            sc_[j * n + i] = std::move(t);
        }
}

void LieAlgebra::build_killing() {
    const int n = dim();
    killing_ = Mat::Constant(n, n, FieldScalar(0));
    auto lookup = [&](int a, int b, int k) -> FieldScalar {
        for (const auto& t : sc_[a * n + b])
            if (t.index == k) return t.coeff;
        return FieldScalar(0);
    };
    // tr(ad_i ad_j) = sum_k sum_l c_{ik}^l c_{jl}^k
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            FieldScalar acc(0);
            for (int k = 0; k < n; ++k)
                for (const auto& t : sc_[i * n + k]) {
                    FieldScalar c = lookup(j, t.index, k);
                    if (!c.is_zero()) acc += t.coeff * c;
                }
            killing_(i, j) = acc;
            killing_(j, i) = acc;
        }
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
    const int n = dim();
    Vec out = zero();
    for (int i = 0; i < n; ++i) {
        if (x(i).is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y(j).is_zero()) continue;
            const auto& s = sc_[i * n + j];
            if (s.empty()) continue;
            FieldScalar xy = x(i) * y(j);
            for (const auto& t : s) out(t.index) += xy * t.coeff;
        }
    }
    return out;
}

Vec LieAlgebra::bracket_basis(int i, const Vec& y) const {
    const int n = dim();
    Vec out = zero();
    for (int j = 0; j < n; ++j) {
        if (y(j).is_zero()) continue;
        for (const auto& t : sc_[i * n + j]) out(t.index) += y(j) * t.coeff;
    }
    return out;
}

Mat LieAlgebra::ad(const Vec& x) const {
    const int n = dim();
    Mat A = Mat::Constant(n, n, FieldScalar(0));
    for (int i = 0; i < n; ++i) {
        if (x(i).is_zero()) continue;
        for (int j = 0; j < n; ++j)
            for (const auto& t : sc_[i * n + j]) A(t.index, j) += x(i) * t.coeff;
    }
    return A;
}

FieldScalar LieAlgebra::killing(const Vec& x, const Vec& y) const {
    FieldScalar acc(0);
    for (int i = 0; i < dim(); ++i) {
        if (x(i).is_zero()) continue;
        for (int j = 0; j < dim(); ++j)
            if (!y(j).is_zero() && !killing_(i, j).is_zero()) acc += x(i) * killing_(i, j) * y(j);
    }
    return acc;
}

Vec LieAlgebra::unit(int k) const {
    Vec v = zero();
    v(k) = FieldScalar(1);
    return v;
}

// ---- constructors

std::vector<int> exponents_of(char type, int rank) {
    std::vector<int> e;
    switch (type) {
        case 'A':
            for (int k = 1; k <= rank; ++k) e.push_back(k);
            break;
        case 'B':
        case 'C':
            for (int k = 1; k <= rank; ++k) e.push_back(2 * k - 1);
            break;
        case 'D':
            for (int k = 1; k < rank; ++k) e.push_back(2 * k - 1);
            e.push_back(rank - 1);
            break;
        default:
            throw InvalidInput(std::string("unsupported type ") + type);
    }
    std::sort(e.begin(), e.end());
    return e;
}

AlgebraPtr make_sl(int n) {
    if (n < 2) throw InvalidInput("sl(n) needs n >= 2");
    std::vector<SparseMat> basis;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b) basis.push_back({{a, b, FieldScalar(1)}});
            else if (a + 1 < n) basis.push_back({{a, a, FieldScalar(1)}, {a + 1, a + 1, FieldScalar(-1)}});
        }
    SimpleBlock blk{'A', n, 0, 0, n * n - 1, n - 1, Mat()};
    return std::make_shared<LieAlgebra>("sl(" + std::to_string(n) + ")", n, std::move(basis),
                                        std::vector<SimpleBlock>{blk});
}

AlgebraPtr make_form_algebra(const std::string& label, const Mat& J, char type) {
    const int n = static_cast<int>(J.rows());
    std::vector<int> pinv(n, -1);  // pinv[q] = row c with J(c,q) != 0
    for (int c = 0; c < n; ++c)
        for (int q = 0; q < n; ++q)
            if (!J(c, q).is_zero()) {
                if (pinv[q] != -1) throw InvalidInput("form matrix must be monomial");
                pinv[q] = c;
            }
    for (int q = 0; q < n; ++q)
        if (pinv[q] == -1) throw InvalidInput("form matrix is singular");
    auto residual = [&](int p, int q) {
        Mat X = Mat::Constant(n, n, FieldScalar(0));
        X(p, q) = FieldScalar(1);
        return Mat(multiply(Mat(X.transpose()), J) + multiply(J, X));
    };
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    std::vector<SparseMat> basis;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (seen[p][q]) continue;
            const int p2 = pinv[q], q2 = pinv[p];
            seen[p][q] = seen[p2][q2] = true;
            std::vector<std::pair<int, int>> orbit{{p, q}};
            if (p2 != p || q2 != q) orbit.push_back({p2, q2});
            // Joint residual of the orbit variables, one column per variable.
            std::vector<Mat> res;
            for (auto [a, b] : orbit) res.push_back(residual(a, b));
            Mat M(n * n, static_cast<Eigen::Index>(orbit.size()));
            for (size_t v = 0; v < orbit.size(); ++v)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) M(i * n + j, v) = res[v](i, j);
            Subspace K = nullspace(M);
            for (int k = 0; k < K.dim(); ++k) {
                SparseMat B;
                for (size_t v = 0; v < orbit.size(); ++v)
                    if (!K.basis()(k, v).is_zero())
                        B.push_back({orbit[v].first, orbit[v].second, K.basis()(k, v)});
                basis.push_back(std::move(B));
            }
        }
    const int d = static_cast<int>(basis.size());
    int rk = (type == 'A') ? n - 1 : n / 2;
    SimpleBlock blk{type, n, 0, 0, d, rk, J};
    return std::make_shared<LieAlgebra>(label, n, std::move(basis), std::vector<SimpleBlock>{blk});
}

AlgebraPtr make_so(int n, FormConvention form) {
    if (n < 3) throw InvalidInput("so(n) needs n >= 3");
    Mat J = Mat::Constant(n, n, FieldScalar(0));
    for (int a = 0; a < n; ++a) {
        if (form == FormConvention::antidiagonal) J(a, n - 1 - a) = FieldScalar(1);
        else J(a, a) = FieldScalar(1);
    }
    std::string label = "so(" + std::to_string(n) + (form == FormConvention::antidiagonal ? ",antidiag)" : ",standard)");
    return make_form_algebra(label, J, n % 2 ? 'B' : 'D');
}

AlgebraPtr make_sp(int two_n) {
    if (two_n < 2 || two_n % 2) throw InvalidInput("sp(2n) needs an even size >= 2");
    Mat J = Mat::Constant(two_n, two_n, FieldScalar(0));
    for (int a = 0; a < two_n; ++a) J(a, two_n - 1 - a) = FieldScalar(a < two_n / 2 ? 1 : -1);
    return make_form_algebra("sp(" + std::to_string(two_n) + ")", J, 'C');
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
    const int shift = a->rep_dim();
    std::vector<SparseMat> basis;
    for (int k = 0; k < a->dim(); ++k) basis.push_back(a->basis_sparse(k));
    for (int k = 0; k < b->dim(); ++k) {
        SparseMat m = b->basis_sparse(k);
        for (auto& e : m) {
            e.row += shift;
            e.col += shift;
        }
        basis.push_back(std::move(m));
    }
    std::vector<SimpleBlock> blocks = a->blocks();
    for (auto blk : b->blocks()) {
        blk.rep_offset += shift;
        blk.basis_offset += a->dim();
        blocks.push_back(std::move(blk));
    }
    auto sum = std::make_shared<LieAlgebra>(a->label() + "+" + b->label(), shift + b->rep_dim(), std::move(basis),
                                            std::move(blocks));
    sum->set_parts({a, b});
    return sum;
}

AlgebraPtr parse_algebra(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto plus = s.find('+');
    if (plus != std::string::npos)
        return direct_sum(parse_algebra(s.substr(0, plus)), parse_algebra(s.substr(plus + 1)));
    static const std::regex re(R"((sl|so|sp)\((\d+)(?:,(antidiag|antidiagonal|standard))?\))");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw InvalidInput("cannot parse algebra spec '" + spec + "'");
    const int n = std::stoi(m[2]);
    if (m[1] == "sl") {
        if (m[3].matched) throw InvalidInput("sl takes no form convention");
        return make_sl(n);
    }
    if (m[1] == "sp") {
        if (m[3].matched) throw InvalidInput("sp uses the antidiagonal form only");
        return make_sp(n);
    }
    FormConvention f = (m[3].matched && m[3] == "standard") ? FormConvention::standard : FormConvention::antidiagonal;
    return make_so(n, f);
}

// ---- elements

Element::Element(AlgebraPtr g, Vec c) : algebra(std::move(g)), coeffs(std::move(c)) {
    if (!algebra) throw InvalidInput("element without algebra");
    if (coeffs.size() != algebra->dim()) throw InvalidInput("coefficient length does not match algebra dimension");
}

Element bracket(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw InvalidInput("bracket of elements from different algebras");
    return Element(x.algebra, x.algebra->bracket(x.coeffs, y.coeffs));
}

FieldScalar killing(const Element& x, const Element& y) {
    if (x.algebra != y.algebra) throw InvalidInput("killing form of elements from different algebras");
    return x.algebra->killing(x.coeffs, y.coeffs);
}

Mat ad(const Element& x) { return x.algebra->ad(x.coeffs); }

Mat bracket_map(const LieAlgebra& g, const Vec& x, const Subspace& W) {
    Mat M(g.dim(), W.dim());
    for (int k = 0; k < W.dim(); ++k) M.col(k) = g.bracket(x, W.vector(k));
    return M;
}

Subspace centralizer(const LieAlgebra& g, const Subspace& S, const Subspace& W) {
    if (S.dim() == 0 || W.dim() == 0) return W;
    Mat M(static_cast<Eigen::Index>(S.dim()) * g.dim(), W.dim());
    for (int s = 0; s < S.dim(); ++s) M.middleRows(s * g.dim(), g.dim()) = bracket_map(g, S.vector(s), W);
    Subspace K = nullspace(M);
    return Subspace::span(multiply(K.basis(), W.basis()));
}

Subspace centralizer(const LieAlgebra& g, const Vec& x, const Subspace& W) {
    if (W.dim() == 0) return W;
    Subspace K = nullspace(bracket_map(g, x, W));
    return Subspace::span(multiply(K.basis(), W.basis()));
}

bool is_semisimple(const LieAlgebra& g, const Vec& x) {
    return is_squarefree(minimal_polynomial(g.to_matrix(x)));
}

bool is_nilpotent(const LieAlgebra& g, const Vec& x) {
    Mat X = g.to_matrix(x);
    Mat P = X;
    for (int k = 1; k < g.rep_dim(); ++k) {
        if (is_zero_matrix(P)) return true;
        P = multiply(P, X);
    }
    return is_zero_matrix(P);
}

ElementClass classify_element(const LieAlgebra& g, const Vec& x) {
    bool ss = is_semisimple(g, x), nil = is_nilpotent(g, x);
    if (ss && nil) return ElementClass::zero;
    if (ss) return ElementClass::semisimple;
    if (nil) return ElementClass::nilpotent;
    return ElementClass::mixed;
}

ElementClass classify_element(const Element& x) { return classify_element(*x.algebra, x.coeffs); }

bool is_regular(const LieAlgebra& g, const Vec& x) {
    return centralizer(g, x, g.whole()).dim() == g.rank();
}

bool is_regular(const Element& x) { return is_regular(*x.algebra, x.coeffs); }

std::string to_string(ElementClass c) {
    switch (c) {
        case ElementClass::semisimple: return "semisimple";
        case ElementClass::nilpotent: return "nilpotent";
        case ElementClass::mixed: return "mixed";
        case ElementClass::zero: return "zero";
    }
    return "?";
}

bool is_abelian(const LieAlgebra& g, const Subspace& S) {
    for (int a = 0; a < S.dim(); ++a)
        for (int b = a + 1; b < S.dim(); ++b) {
            Vec c = g.bracket(S.vector(a), S.vector(b));
            for (int k = 0; k < c.size(); ++k)
                if (!c(k).is_zero()) return false;
        }
    return true;
}

bool brackets_into(const LieAlgebra& g, const Subspace& A, const Subspace& B, const Subspace& C) {
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < B.dim(); ++b)
            if (!C.contains(g.bracket(A.vector(a), B.vector(b)))) return false;
    return true;
}

}  // namespace isolab
