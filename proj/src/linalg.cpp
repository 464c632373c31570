#include "isolab/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace isolab {

Echelon rref(const Mat& M) {
    Mat a = M;
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) a.row(p).swap(a.row(r));
        if (!a(r, c).is_one()) {
            FieldScalar inv = a(r, c).inverse();
            for (int j = c; j < cols; ++j)
                if (!a(r, j).is_zero()) a(r, j) *= inv;
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            FieldScalar f = a(i, c);
            for (int j = c; j < cols; ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    Echelon e;
    e.R = a.topRows(r);
    e.pivots = std::move(piv);
    return e;
}

Mat identity(int n) {
    Mat I = Mat::Constant(n, n, FieldScalar(0));
    for (int k = 0; k < n; ++k) I(k, k) = FieldScalar(1);
    return I;
}

Mat inverse(const Mat& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const int n = static_cast<int>(M.rows());
    Mat aug(n, 2 * n);
    aug.leftCols(n) = M;
    aug.rightCols(n) = identity(n);
    Echelon e = rref(aug);
    if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
        throw std::domain_error("matrix is singular");
    return e.R.rightCols(n);
}

Mat multiply(const Mat& A, const Mat& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("dimension mismatch in multiply");
    Mat C = Mat::Constant(A.rows(), B.cols(), FieldScalar(0));
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index k = 0; k < A.cols(); ++k) {
            const FieldScalar& a = A(i, k);
            if (a.is_zero()) continue;
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                if (!B(k, j).is_zero()) C(i, j) += a * B(k, j);
        }
    return C;
}

Vec multiply(const Mat& A, const Vec& x) {
    if (A.cols() != x.size()) throw std::invalid_argument("dimension mismatch in multiply");
    Vec y = Vec::Constant(A.rows(), FieldScalar(0));
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
        if (x(k).is_zero()) continue;
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (!A(i, k).is_zero()) y(i) += A(i, k) * x(k);
    }
    return y;
}

bool is_zero_matrix(const Mat& A) {
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (!A(i, j).is_zero()) return false;
    return true;
}

// ---- Subspace

Subspace Subspace::span(const Mat& rows) {
    Subspace s(static_cast<int>(rows.cols()));
    if (rows.rows() == 0) return s;
    Echelon e = rref(rows);
    s.b_ = std::move(e.R);
    s.piv_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vectors) {
    Mat m(static_cast<Eigen::Index>(vectors.size()), ambient);
    for (size_t k = 0; k < vectors.size(); ++k) {
        if (vectors[k].size() != ambient) throw std::invalid_argument("vector length mismatch");
        m.row(k) = vectors[k].transpose();
    }
    return span(m);
}

Subspace Subspace::full(int ambient) { return span(identity(ambient)); }

Subspace Subspace::coordinate(int ambient, const std::vector<int>& indices) {
    Mat m = Mat::Constant(static_cast<Eigen::Index>(indices.size()), ambient, FieldScalar(0));
    for (size_t k = 0; k < indices.size(); ++k) m(k, indices[k]) = FieldScalar(1);
    return span(m);
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("ambient mismatch in Subspace::reduce");
    Vec r = v;
    for (int k = 0; k < dim(); ++k) {
        FieldScalar f = r(piv_[k]);
        if (f.is_zero()) continue;
        for (int j = piv_[k]; j < n_; ++j)
            if (!b_(k, j).is_zero()) r(j) -= f * b_(k, j);
    }
    return r;
}

bool Subspace::contains(const Vec& v) const {
    Vec r = reduce(v);
    for (int j = 0; j < n_; ++j)
        if (!r(j).is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& o) const {
    if (o.n_ != n_) throw std::invalid_argument("ambient mismatch in Subspace::contains");
    for (int k = 0; k < o.dim(); ++k)
        if (!contains(o.vector(k))) return false;
    return true;
}

Vec Subspace::coords(const Vec& v) const {
    Vec c(dim());
    for (int k = 0; k < dim(); ++k) c(k) = v(piv_[k]);
    return c;
}

Vec Subspace::from_coords(const Vec& c) const {
    Vec v = Vec::Constant(n_, FieldScalar(0));
    for (int k = 0; k < dim(); ++k) {
        if (c(k).is_zero()) continue;
        for (int j = piv_[k]; j < n_; ++j)
            if (!b_(k, j).is_zero()) v(j) += c(k) * b_(k, j);
    }
    return v;
}

Mat Subspace::equations() const {
    if (dim() == 0) return identity(n_);
    Subspace ann = nullspace(b_);
    return ann.basis();
}

Subspace nullspace(const Mat& M) {
    const int n = static_cast<int>(M.cols());
    if (M.rows() == 0) return Subspace::full(n);
    Echelon e = rref(M);
    std::vector<bool> is_piv(n, false);
    for (int p : e.pivots) is_piv[p] = true;
    std::vector<Vec> vs;
    for (int f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        Vec v = Vec::Constant(n, FieldScalar(0));
        v(f) = FieldScalar(1);
        for (size_t r = 0; r < e.pivots.size(); ++r)
            if (!e.R(r, f).is_zero()) v(e.pivots[r]) = -e.R(r, f);
        vs.push_back(std::move(v));
    }
    return Subspace::span(n, vs);
}

Subspace sum(const Subspace& A, const Subspace& B) {
    if (A.ambient_dim() != B.ambient_dim()) throw std::invalid_argument("ambient mismatch in sum");
    Mat m(A.dim() + B.dim(), A.ambient_dim());
    if (A.dim()) m.topRows(A.dim()) = A.basis();
    if (B.dim()) m.bottomRows(B.dim()) = B.basis();
    return Subspace::span(m);
}

Subspace intersect(const Subspace& A, const Subspace& B) {
    if (A.ambient_dim() != B.ambient_dim())
        throw std::invalid_argument("ambient mismatch in intersect");
    const int n = A.ambient_dim();
    if (A.dim() == 0 || B.dim() == 0) return Subspace(n);
    if (B.dim() == n) return A;
    if (A.dim() == n) return B;
    Mat N = B.equations();
    Mat NA = multiply(N, Mat(A.basis().transpose()));
    Subspace K = nullspace(NA);
    Mat rows = multiply(K.basis(), A.basis());
    return Subspace::span(rows);
}

// ---- UniPoly

UniPoly::UniPoly(std::vector<FieldScalar> c) : c_(std::move(c)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const FieldScalar& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(int k, const FieldScalar& c) {
    std::vector<FieldScalar> v(k + 1, FieldScalar(0));
    v[k] = c;
    return UniPoly(std::move(v));
}

FieldScalar UniPoly::operator()(const FieldScalar& x) const {
    FieldScalar r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Mat UniPoly::operator()(const Mat& X) const {
    const int n = static_cast<int>(X.rows());
    Mat r = Mat::Constant(n, n, FieldScalar(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = multiply(r, X);
        for (int k = 0; k < n; ++k) r(k, k) += *it;
    }
    return r;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<FieldScalar> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * FieldScalar(static_cast<long>(k));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return *this;
    FieldScalar inv = c_.back().inverse();
    std::vector<FieldScalar> d = c_;
    for (auto& x : d) x *= inv;
    return UniPoly(std::move(d));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<FieldScalar> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {UniPoly(), *this};
    std::vector<FieldScalar> q(degree() - dd + 1, FieldScalar(0));
    FieldScalar lead_inv = d.leading().inverse();
    for (int k = degree(); k >= dd; --k) {
        if (r[k].is_zero()) continue;
        FieldScalar f = r[k] * lead_inv;
        q[k - dd] = f;
        for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
    }
    r.resize(dd);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<FieldScalar> r(std::max(a.c_.size(), b.c_.size()), FieldScalar(0));
    for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<FieldScalar> r(std::max(a.c_.size(), b.c_.size()), FieldScalar(0));
    for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) r[k] -= b.c_[k];
    return UniPoly(std::move(r));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<FieldScalar> r(a.c_.size() + b.c_.size() - 1, FieldScalar(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
}

std::string UniPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = c_[k].str();
        if (k == 0) os << c;
        else {
            if (!c_[k].is_one()) os << "(" << c << ")*";
            os << "t";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly minimal_polynomial(const Mat& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("minimal_polynomial of non-square matrix");
    const int n = static_cast<int>(M.rows());
    const int len = n * n;
    // Echelon rows of flattened powers, each with the combination of powers it represents.
    std::vector<Vec> rows;
    std::vector<int> piv;
    std::vector<std::vector<FieldScalar>> combos;
    Mat P = identity(n);
    for (int k = 0; k <= n; ++k) {
        Vec v(len);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(i * n + j) = P(i, j);
        std::vector<FieldScalar> combo(k + 1, FieldScalar(0));
        combo[k] = FieldScalar(1);
        for (size_t r = 0; r < rows.size(); ++r) {
            FieldScalar f = v(piv[r]);
            if (f.is_zero()) continue;
            for (int j = 0; j < len; ++j)
                if (!rows[r](j).is_zero()) v(j) -= f * rows[r](j);
            for (size_t j = 0; j < combos[r].size(); ++j) combo[j] -= f * combos[r][j];
        }
        int p = 0;
        while (p < len && v(p).is_zero()) ++p;
        if (p == len) return UniPoly(std::move(combo)).monic();
        FieldScalar inv = v(p).inverse();
        for (int j = p; j < len; ++j) v(j) *= inv;
        for (auto& c : combo) c *= inv;
        rows.push_back(std::move(v));
        piv.push_back(p);
        combos.push_back(std::move(combo));
        P = multiply(P, M);
    }
    throw std::logic_error("minimal polynomial degree exceeds matrix size");
}

bool is_squarefree(const UniPoly& p) {
    if (p.degree() <= 0) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

UniPoly interpolate(const std::vector<std::pair<FieldScalar, FieldScalar>>& pts) {
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (pts[i].first == pts[j].first) throw std::invalid_argument("repeated abscissa in interpolate");
    // Newton divided differences.
    std::vector<FieldScalar> dd(n);
    for (size_t i = 0; i < n; ++i) dd[i] = pts[i].second;
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (pts[i].first - pts[i - level].first);
            if (i == level) break;
        }
    UniPoly result;
    UniPoly basis = UniPoly::constant(FieldScalar(1));
    for (size_t i = 0; i < n; ++i) {
        result = result + basis * UniPoly::constant(dd[i]);
        basis = basis * UniPoly({-pts[i].first, FieldScalar(1)});
    }
    return result;
}

FieldScalar pfaffian(const Mat& A0) {
    if (A0.rows() != A0.cols()) throw std::invalid_argument("pfaffian of non-square matrix");
    const int n = static_cast<int>(A0.rows());
    if (n % 2 == 1) throw std::invalid_argument("pfaffian of odd-size matrix");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A0(i, j) != -A0(j, i)) throw std::invalid_argument("pfaffian of non-skew matrix");
    Mat A = A0;
    FieldScalar result(1);
    for (int k = 0; k < n; k += 2) {
        int p = k + 1;
        while (p < n && A(k, p).is_zero()) ++p;
        if (p == n) return FieldScalar(0);
        if (p != k + 1) {
            A.row(p).swap(A.row(k + 1));
            A.col(p).swap(A.col(k + 1));
            result = -result;
        }
        const FieldScalar a = A(k, k + 1);
        result *= a;
        const FieldScalar inv = a.inverse();
        for (int i = k + 2; i < n; ++i) {
            const FieldScalar ui = A(i, k) * inv, vi = A(i, k + 1) * inv;
            if (ui.is_zero() && vi.is_zero()) continue;
            for (int j = k + 2; j < n; ++j) {
                if (!ui.is_zero() && !A(k + 1, j).is_zero()) A(i, j) += ui * A(k + 1, j);
                if (!vi.is_zero() && !A(k, j).is_zero()) A(i, j) -= vi * A(k, j);
            }
        }
    }
    return result;
}

}  // namespace isolab
