#include "isolab/field.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace isolab {

namespace {

using QPoly = std::vector<Rational>;

void trim_poly(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by monic-or-not b (remainder must vanish).
QPoly exact_divide(QPoly a, const QPoly& b) {
    trim_poly(a);
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) - 1 < db) return {};
    QPoly q(a.size() - db, Rational(0));
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        Rational c = a[k] / b[db];
        q[k - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
    }
    return q;
}

QPoly cyclotomic_poly(int m) {
    QPoly num(m + 1, Rational(0));
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = exact_divide(num, cyclotomic_poly(d));
    return num;
}

CyclotomicConfig make_config(int m) {
    if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
    CyclotomicConfig cfg;
    cfg.m = m;
    cfg.phi = cyclotomic_poly(m);
    cfg.degree = static_cast<int>(cfg.phi.size()) - 1;
    return cfg;
}

int initial_order() {
    if (const char* env = std::getenv("ISOLAB_CYCLOTOMIC_M")) {
        int m = std::atoi(env);
        if (m >= 1) return m;
    }
    return 8;
}

CyclotomicConfig& config_slot() {
    static CyclotomicConfig cfg = make_config(initial_order());
    return cfg;
}

void reduce(QPoly& r) {
    const auto& cfg = cyclotomic();
    const int d = cfg.degree;
    for (int k = static_cast<int>(r.size()) - 1; k >= d; --k) {
        if (r[k] == 0) continue;
        Rational c = r[k];
        for (int j = 0; j <= d; ++j) r[k - d + j] -= c * cfg.phi[j];
    }
    if (static_cast<int>(r.size()) > d) r.resize(d);
}

}  // namespace

const CyclotomicConfig& cyclotomic() { return config_slot(); }

void set_cyclotomic_order(int m) { config_slot() = make_config(m); }

int cyclotomic_order() { return cyclotomic().m; }

FieldScalar::FieldScalar(const Rational& q) {
    if (q != 0) c_.push_back(q);
}

void FieldScalar::trim() { trim_poly(c_); }

FieldScalar FieldScalar::zeta_power(long k) {
    const auto& cfg = cyclotomic();
    long e = ((k % cfg.m) + cfg.m) % cfg.m;
    QPoly p(e + 1, Rational(0));
    p[e] = 1;
    reduce(p);
    return FieldScalar(std::move(p));
}

std::optional<FieldScalar> FieldScalar::root_of_unity(long order, long k) {
    if (order <= 0) return std::nullopt;
    long g = std::gcd(order, ((k % order) + order) % order);
    if (g == 0) g = order;
    long a = (((k % order) + order) % order) / g;
    long b = order / g;
    const long m = cyclotomic().m;
    if (m % b == 0) return zeta_power(a * (m / b));
    if (m % 2 == 1 && (2 * m) % b == 0) {
        // zeta_{2m} = -zeta_m^{(m+1)/2}
        long e = a * (2 * m / b);
        FieldScalar z = -zeta_power((m + 1) / 2);
        FieldScalar r(1);
        for (long j = 0; j < e % (2 * m); ++j) r *= z;
        return r;
    }
    return std::nullopt;
}

FieldScalar FieldScalar::imag_unit() {
    auto r = root_of_unity(4, 1);
    if (!r)
        throw std::domain_error("i is not in Q(zeta_" + std::to_string(cyclotomic_order()) +
                                "); use a cyclotomic order divisible by 4");
    return *r;
}

Rational FieldScalar::rational() const {
    if (!is_rational()) throw std::domain_error("field element is not rational: " + str());
    return c_.empty() ? Rational(0) : c_[0];
}

Rational FieldScalar::coeff(int k) const {
    return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0);
}

std::vector<Rational> FieldScalar::coefficients() const {
    std::vector<Rational> out(cyclotomic().degree, Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) out[k] = c_[k];
    return out;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
    if (c_.empty()) return *this;
    if (o.c_.empty()) {
        c_.clear();
        return *this;
    }
    if (o.c_.size() == 1) {
        for (auto& x : c_) x *= o.c_[0];
        return *this;
    }
    if (c_.size() == 1) {
        Rational s = c_[0];
        c_ = o.c_;
        for (auto& x : c_) x *= s;
        return *this;
    }
    QPoly r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t a = 0; a < c_.size(); ++a) {
        if (c_[a] == 0) continue;
        for (size_t b = 0; b < o.c_.size(); ++b)
            if (o.c_[b] != 0) r[a + b] += c_[a] * o.c_[b];
    }
    reduce(r);
    c_ = std::move(r);
    trim();
    return *this;
}

FieldScalar FieldScalar::operator-() const {
    FieldScalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

FieldScalar FieldScalar::inverse() const {
    if (c_.empty()) throw std::domain_error("division by zero in Q(zeta_m)");
    if (c_.size() == 1) return FieldScalar(Rational(1) / c_[0]);
    // Solve (this * x) = 1 via the d x d multiplication matrix.
    const int d = cyclotomic().degree;
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, Rational(0)));
    for (int j = 0; j < d; ++j) {
        FieldScalar col = *this * zeta_power(j);
        for (int i = 0; i < d; ++i) a[i][j] = col.coeff(i);
    }
    a[0][d] = 1;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        while (piv < d && a[piv][col] == 0) ++piv;
        if (piv == d) throw std::domain_error("singular multiplication matrix");
        std::swap(a[piv], a[col]);
        Rational inv = 1 / a[col][col];
        for (int j = col; j <= d; ++j) a[col][j] *= inv;
        for (int i = 0; i < d; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (int j = col; j <= d; ++j) a[i][j] -= f * a[col][j];
        }
    }
    QPoly x(d);
    for (int i = 0; i < d; ++i) x[i] = a[i][d];
    return FieldScalar(std::move(x));
}

std::string FieldScalar::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        Rational c = c_[k];
        if (!first) os << (c < 0 ? "-" : "+");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        if (k == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "z";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

namespace {

class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    FieldScalar parse() {
        FieldScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail() { throw std::invalid_argument("cannot parse scalar: '" + s_ + "'"); }

    FieldScalar expr() {
        FieldScalar v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    FieldScalar term() {
        FieldScalar v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) v /= unary();
            else return v;
        }
    }
    FieldScalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    FieldScalar power() {
        FieldScalar base = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            long e = integer();
            FieldScalar r(1);
            for (long k = 0; k < e; ++k) r *= base;
            return neg ? r.inverse() : r;
        }
        return base;
    }
    long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail();
        return std::stol(s_.substr(start, pos_ - start));
    }
    FieldScalar atom() {
        skip();
        if (pos_ >= s_.size()) fail();
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            FieldScalar v = expr();
            if (!eat(')')) fail();
            return v;
        }
        if (c == 'i') {
            ++pos_;
            return FieldScalar::imag_unit();
        }
        if (c == 'z') {
            ++pos_;
            return FieldScalar::zeta_power(1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return FieldScalar(Rational(s_.substr(start, pos_ - start)));
        }
        fail();
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

FieldScalar FieldScalar::parse(const std::string& text) { return ScalarParser(text).parse(); }

}  // namespace isolab
