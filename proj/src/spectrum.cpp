#include "isolab/spectrum.hpp"

#include "isolab/errors.hpp"

#include <algorithm>

namespace isolab {

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    if (n > mpz_class("1000000000000"))
        throw Inconclusive("rational root search: constant too large to enumerate divisors");
    std::vector<std::pair<mpz_class, int>> fac;
    mpz_class m = n;
    for (mpz_class p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) fac.push_back({p, e});
    }
    if (m > 1) fac.push_back({m, 1});
    std::vector<mpz_class> divs{1};
    for (auto& [p, e] : fac) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

bool is_root(const std::vector<mpz_class>& c, const Rational& x) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rational(*it);
    return acc == 0;
}

}  // namespace

std::vector<FieldScalar> roots_of_unity_in_field() {
    const int m = cyclotomic_order();
    std::vector<FieldScalar> out;
    for (int k = 0; k < m; ++k) out.push_back(FieldScalar::zeta_power(k));
    if (m % 2 == 1)
        for (int k = 0; k < m; ++k) out.push_back(-FieldScalar::zeta_power(k));
    return out;
}

std::vector<Rational> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw InvalidInput("roots of the zero polynomial");
    std::vector<Rational> q;
    for (const auto& c : p.coeffs()) q.push_back(c.rational());
    std::vector<Rational> roots;
    size_t low = 0;
    while (q[low] == 0) ++low;
    if (low > 0) roots.push_back(Rational(0));
    q.erase(q.begin(), q.begin() + low);
    if (q.size() <= 1) return roots;
    mpz_class den = 1;
    for (auto& c : q) den = lcm(den, c.get_den());
    std::vector<mpz_class> z;
    mpz_class content = 0;
    for (auto& c : q) {
        Rational v = c * Rational(den);
        z.push_back(v.get_num());
        content = gcd(content, v.get_num());
    }
    for (auto& c : z) c /= content;
    if (z.size() == 2) {
        roots.push_back(Rational(-z[0], z[1]));
        roots.back().canonicalize();
        return roots;
    }
    auto da = divisors(z.front()), db = divisors(z.back());
    for (const auto& b : db)
        for (const auto& a : da) {
            if (gcd(a, b) != 1) continue;
            for (int sgn : {1, -1}) {
                Rational x(sgn * a, b);
                x.canonicalize();
                if (is_root(z, x)) roots.push_back(x);
            }
        }
    return roots;
}

std::vector<FieldScalar> split_roots(const UniPoly& p0) {
    if (p0.is_zero()) throw InvalidInput("roots of the zero polynomial");
    std::vector<FieldScalar> roots;
    std::vector<FieldScalar> c = p0.coeffs();
    size_t low = 0;
    while (c[low].is_zero()) ++low;
    if (low > 0) roots.push_back(FieldScalar(0));
    c.erase(c.begin(), c.begin() + low);
    if (c.size() <= 1) return roots;
    const int d = cyclotomic().degree;
    for (const auto& u : roots_of_unity_in_field()) {
        // p(u s) split into rational components along 1, zeta, ..., zeta^{d-1}
        std::vector<std::vector<FieldScalar>> comp(d, std::vector<FieldScalar>(c.size(), FieldScalar(0)));
        FieldScalar uk(1);
        for (size_t k = 0; k < c.size(); ++k) {
            FieldScalar q = c[k] * uk;
            for (int j = 0; j < d; ++j) comp[j][k] = FieldScalar(q.coeff(j));
            uk *= u;
        }
        UniPoly g;
        for (int j = 0; j < d; ++j) {
            UniPoly cj(comp[j]);
            if (cj.is_zero()) continue;
            g = g.is_zero() ? cj.monic() : gcd(g, cj);
            if (g.degree() == 0) break;
        }
        if (g.degree() < 1) continue;
        for (const auto& r : rational_roots(g)) {
            if (r <= 0) continue;
            FieldScalar root = FieldScalar(r) * u;
            if (std::find(roots.begin(), roots.end(), root) == roots.end()) roots.push_back(root);
        }
    }
    return roots;
}

std::optional<std::vector<FieldScalar>> split_eigenvalues(const Mat& M) {
    UniPoly mp = minimal_polynomial(M);
    if (!is_squarefree(mp)) return std::nullopt;
    auto roots = split_roots(mp);
    if (static_cast<int>(roots.size()) != mp.degree()) return std::nullopt;
    return roots;
}

std::optional<FieldScalar> sqrt_in_field(const FieldScalar& x) {
    if (x.is_zero()) return FieldScalar(0);
    auto r = split_roots(UniPoly({-x, FieldScalar(0), FieldScalar(1)}));
    if (r.empty()) return std::nullopt;
    return r.front();
}

std::optional<std::vector<WeightSpace>> joint_decompose(const Subspace& W, const std::vector<LinearOp>& ops,
                                                        const std::vector<std::vector<FieldScalar>>& candidates) {
    std::vector<WeightSpace> spaces{{{}, W}};
    for (size_t k = 0; k < ops.size(); ++k) {
        std::vector<WeightSpace> next;
        for (const auto& ws : spaces) {
            const Subspace& S = ws.space;
            const int n = S.dim();
            Mat A(n, n);
            for (int j = 0; j < n; ++j) {
                Vec img = ops[k](S.vector(j));
                if (!S.contains(img)) throw InternalInconsistency("operator does not preserve the subspace");
                A.col(j) = S.coords(img);
            }
            int found = 0;
            for (const auto& lambda : candidates[k]) {
                Mat B = A;
                for (int t = 0; t < n; ++t) B(t, t) -= lambda;
                Subspace K = nullspace(B);
                if (K.dim() == 0) continue;
                found += K.dim();
                WeightSpace w{ws.weight, Subspace::span(multiply(K.basis(), S.basis()))};
                w.weight.push_back(lambda);
                next.push_back(std::move(w));
            }
            if (found != n) return std::nullopt;
        }
        spaces = std::move(next);
    }
    return spaces;
}

std::vector<FieldScalar> differences(const std::vector<FieldScalar>& xs) {
    std::vector<FieldScalar> out;
    for (const auto& a : xs)
        for (const auto& b : xs) {
            FieldScalar d = a - b;
            if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        }
    return out;
}

}  // namespace isolab
