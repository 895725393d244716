#include "qsing/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qsing/errors.hpp"

namespace qsing {

namespace {

std::atomic<std::int64_t> g_conductor_cap{100000};

std::int64_t mod_pos(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// Integer polynomials, coefficients low-to-high.

void trim(std::vector<Int>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division a / b where b is monic.
std::vector<Int> div_exact_monic(std::vector<Int> a, const std::vector<Int>& b) {
    trim(a);
    if (a.empty()) return {};
    const int db = static_cast<int>(b.size()) - 1;
    std::vector<Int> q(a.size() - db, 0);
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        Int c = a[k];
        if (c == 0) continue;
        q[k - db] = c;
        for (int i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
    }
    return q;
}

std::mutex g_cache_mutex;
std::map<std::int64_t, std::shared_ptr<const ConductorData>> g_cache;

std::shared_ptr<const ConductorData> get_data(std::int64_t m);

std::shared_ptr<const ConductorData> build_data(std::int64_t m) {
    auto d = std::make_shared<ConductorData>();
    d->conductor = m;
    if (m == 1) {
        d->phi = {Int(-1), Int(1)}; // x - 1
    } else {
        std::vector<Int> p(m + 1, 0);
        p[0] = -1;
        p[m] = 1; // x^m - 1
        for (std::int64_t e = 1; e < m; ++e) {
            if (m % e == 0) p = div_exact_monic(std::move(p), get_data(e)->phi);
        }
        d->phi = std::move(p);
    }
    d->degree = static_cast<int>(d->phi.size()) - 1;
    const int deg = d->degree;
    if (deg >= 2) {
        d->rows.resize(deg - 1);
        std::vector<Int> row(deg);
        for (int i = 0; i < deg; ++i) row[i] = -d->phi[i]; // x^deg mod Phi
        d->rows[0] = row;
        for (int k = 1; k <= deg - 2; ++k) {
            std::vector<Int> nx(deg, 0);
            for (int i = 1; i < deg; ++i) nx[i] = row[i - 1];
            const Int& top = row[deg - 1];
            if (top != 0)
                for (int i = 0; i < deg; ++i) nx[i] += top * d->rows[0][i];
            row = std::move(nx);
            d->rows[k] = row;
        }
    } else if (deg == 1) {
        d->rows.clear();
    }
    return d;
}

std::shared_ptr<const ConductorData> get_data(std::int64_t m) {
    if (m <= 0) throw InvalidConductor("conductor must be positive, got " + std::to_string(m));
    if (m > g_conductor_cap.load())
        throw ConductorCapExceeded("conductor " + std::to_string(m) + " exceeds cap " +
                                   std::to_string(g_conductor_cap.load()));
    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = g_cache.find(m);
        if (it != g_cache.end()) return it->second;
    }
    auto d = build_data(m);
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    auto [it, inserted] = g_cache.emplace(m, d);
    return it->second;
}

// One multiply-by-x step in the power basis, reducing the overflow
// coefficient with the x^deg row.
void shift_reduce(std::vector<Int>& v, const ConductorData& d) {
    const int deg = d.degree;
    Int top = v[deg - 1];
    for (int i = deg - 1; i >= 1; --i) v[i] = v[i - 1];
    v[0] = 0;
    if (top != 0) {
        if (deg == 1) {
            // x = +1 (M=1) or -1 (M=2): row is -phi[0]
            v[0] += top * (-d.phi[0]);
        } else {
            for (int i = 0; i < deg; ++i) v[i] += top * d.rows[0][i];
        }
    }
}

// x^k mod Phi as a coefficient vector; 0 <= k < conductor.
std::vector<Int> x_power(std::int64_t k, const ConductorData& d) {
    const int deg = d.degree;
    std::vector<Int> v(deg, 0);
    if (k < deg) {
        v[k] = 1;
        return v;
    }
    v[deg - 1] = 1;
    for (std::int64_t s = deg - 1; s < k; ++s) shift_reduce(v, d);
    return v;
}

Int content_with(const std::vector<Int>& num, const Int& den) {
    Int g = den;
    for (const auto& c : num) {
        if (c == 0) continue;
        g = boost::multiprecision::gcd(g, c < 0 ? Int(-c) : c);
        if (g == 1) return g;
    }
    return g;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    return a / g * b;
}

// Rational polynomials, used only for the extended Euclidean inverse.
struct RatPoly {
    std::vector<Rational> c;
    int deg() const {
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (!c[i].is_zero()) return i;
        return -1;
    }
};

RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
        Rational x = i < a.c.size() ? a.c[i] : Rational();
        Rational y = i < b.c.size() ? b.c[i] : Rational();
        r.c[i] = x - y;
    }
    return r;
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    if (a.deg() < 0 || b.deg() < 0) return r;
    r.c.assign(a.deg() + b.deg() + 1, Rational());
    for (int i = 0; i <= a.deg(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j <= b.deg(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

// a = q*b + r with deg r < deg b.
std::pair<RatPoly, RatPoly> rp_divmod(RatPoly a, const RatPoly& b) {
    RatPoly q;
    int db = b.deg();
    if (db < 0) throw DivisionByZero("polynomial division by zero");
    int da = a.deg();
    if (da < db) return {q, a};
    q.c.assign(da - db + 1, Rational());
    const Rational lead = b.c[db];
    for (int k = da; k >= db; --k) {
        if (k >= static_cast<int>(a.c.size()) || a.c[k].is_zero()) continue;
        Rational f = a.c[k] / lead;
        q.c[k - db] = f;
        for (int i = 0; i <= db; ++i) a.c[k - db + i] -= f * b.c[i];
    }
    return {q, a};
}

} // namespace

std::int64_t euler_phi(std::int64_t m) {
    std::int64_t result = m;
    std::int64_t n = m;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

Cyclotomic::Cyclotomic() : data_(get_data(1)), num_{Int(0)}, den_(1) {}

Cyclotomic::Cyclotomic(std::shared_ptr<const ConductorData> data, std::vector<Int> num, Int den)
    : data_(std::move(data)), num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void Cyclotomic::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Int g = content_with(num_, den_);
    if (g > 1) {
        den_ /= g;
        for (auto& c : num_) c /= g;
    }
    bool all_zero = true;
    for (const auto& c : num_)
        if (c != 0) {
            all_zero = false;
            break;
        }
    if (all_zero) den_ = 1;
}

Cyclotomic Cyclotomic::from_rational(const Rational& q) {
    auto d = get_data(1);
    return Cyclotomic(d, {q.numerator()}, q.denominator());
}

Cyclotomic Cyclotomic::root_of_unity(std::int64_t j, std::int64_t m) {
    if (m <= 0) throw InvalidConductor("root_of_unity: conductor must be >= 1");
    auto d = get_data(m);
    std::int64_t k = ((j % m) + m) % m;
    return Cyclotomic(d, x_power(k, *d), Int(1));
}

void Cyclotomic::set_conductor_cap(std::int64_t cap) { g_conductor_cap.store(cap); }
std::int64_t Cyclotomic::conductor_cap() { return g_conductor_cap.load(); }

bool Cyclotomic::is_zero() const {
    for (const auto& c : num_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::invalid_argument("rational_value: element not rational");
    // At conductor 1 the basis vector is 1; at conductor 2, x == -1 never
    // appears with index > 0, so num_[0]/den is the value for every M.
    return Rational(num_[0], den_);
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<Int> n(num_);
    for (auto& c : n) c = -c;
    return Cyclotomic(data_, std::move(n), den_);
}

Cyclotomic Cyclotomic::lifted_to(std::int64_t L) const {
    std::int64_t m = conductor();
    if (L == m) return *this;
    if (L <= 0 || L % m != 0)
        throw InvalidConductor("lifted_to: target conductor must be a positive multiple");
    auto dl = get_data(L);
    if (is_zero()) return Cyclotomic(dl, std::vector<Int>(dl->degree, 0), Int(1));
    if (is_rational()) {
        std::vector<Int> n(dl->degree, 0);
        n[0] = num_[0];
        return Cyclotomic(dl, std::move(n), den_);
    }
    const std::int64_t stride = L / m;
    const int degL = dl->degree;
    std::vector<Int> acc(degL, 0);
    std::vector<Int> p(degL, 0);
    p[0] = 1; // x^0
    for (int i = 0; i < degree(); ++i) {
        if (num_[i] != 0)
            for (int t = 0; t < degL; ++t) acc[t] += num_[i] * p[t];
        if (i + 1 < degree())
            for (std::int64_t s = 0; s < stride; ++s) shift_reduce(p, *dl);
    }
    return Cyclotomic(dl, std::move(acc), den_);
}

namespace {
// Lift a pair to their least common conductor.
std::pair<Cyclotomic, Cyclotomic> lift_pair(const Cyclotomic& a, const Cyclotomic& b) {
    std::int64_t L = lcm64(a.conductor(), b.conductor());
    return {a.lifted_to(L), b.lifted_to(L)};
}
} // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor()) {
        auto [x, y] = lift_pair(a, b);
        return x + y;
    }
    std::vector<Int> n(a.num_.size());
    for (size_t i = 0; i < n.size(); ++i) n[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    return Cyclotomic(a.data_, std::move(n), a.den_ * b.den_);
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor()) {
        auto [x, y] = lift_pair(a, b);
        return x * y;
    }
    const int deg = a.degree();
    std::vector<Int> conv(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i) {
        if (a.num_[i] == 0) continue;
        for (int j = 0; j < deg; ++j) {
            if (b.num_[j] == 0) continue;
            conv[i + j] += a.num_[i] * b.num_[j];
        }
    }
    const auto& d = *a.data_;
    for (int k = 2 * deg - 2; k >= deg; --k) {
        if (conv[k] == 0) continue;
        const auto& row = d.rows[k - deg];
        for (int i = 0; i < deg; ++i) conv[i] += conv[k] * row[i];
    }
    conv.resize(deg);
    return Cyclotomic(a.data_, std::move(conv), a.den_ * b.den_);
}

Cyclotomic Cyclotomic::inv() const {
    if (is_zero()) throw DivisionByZero("cyclotomic inverse of zero");
    if (is_rational()) {
        Rational q = rational_value();
        return from_rational(Rational(q.denominator(), q.numerator())).lifted_to(conductor());
    }
    // Extended Euclid in Q[x]: u*a + v*Phi = gcd = const.
    RatPoly a;
    a.c.resize(degree());
    for (int i = 0; i < degree(); ++i) a.c[i] = Rational(num_[i], den_);
    RatPoly b;
    b.c.resize(data_->phi.size());
    for (size_t i = 0; i < data_->phi.size(); ++i) b.c[i] = Rational(data_->phi[i]);

    RatPoly r0 = b, r1 = a;
    RatPoly u0, u1;
    u0.c = {Rational(0)};
    u1.c = {Rational(1)};
    while (r1.deg() > 0) {
        auto [q, r] = rp_divmod(r0, r1);
        RatPoly u2 = rp_sub(u0, rp_mul(q, u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
    }
    if (r1.deg() < 0) throw DivisionByZero("cyclotomic inverse: zero gcd");
    const Rational g = r1.c[0];
    // result = u1 / g
    Int den_lcm = 1;
    for (auto& c : u1.c) {
        Rational v = c / g;
        c = v;
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, v.denominator()) * v.denominator();
    }
    std::vector<Int> n(degree(), 0);
    for (int i = 0; i < degree() && i < static_cast<int>(u1.c.size()); ++i)
        n[i] = u1.c[i].numerator() * (den_lcm / u1.c[i].denominator());
    return Cyclotomic(data_, std::move(n), den_lcm);
}

Cyclotomic Cyclotomic::conj() const {
    const std::int64_t m = conductor();
    const int deg = degree();
    std::vector<Int> acc(deg, 0);
    // result = sum_i num_[i] * x^((m - i) mod m)
    if (num_[0] != 0) acc[0] += num_[0];
    std::vector<Int> p(deg, 0);
    p[0] = 1;
    std::int64_t k = 0;
    for (std::int64_t target = m - deg + 1; target <= m - 1; ++target) {
        if (target < 1) continue;
        while (k < target) {
            shift_reduce(p, *data_);
            ++k;
        }
        int i = static_cast<int>(m - target);
        if (i >= 1 && i < deg && num_[i] != 0)
            for (int t = 0; t < deg; ++t) acc[t] += num_[i] * p[t];
    }
    return Cyclotomic(data_, std::move(acc), den_);
}

Cyclotomic Cyclotomic::galois(std::int64_t u) const {
    const std::int64_t m = conductor();
    u = mod_pos(u, m);
    if (std::gcd(u, m) != 1)
        throw std::invalid_argument("galois: exponent not coprime to conductor");
    const int deg = degree();
    // target exponents (i*u mod m) for i = 0..deg-1, visited in one
    // incremental sweep of x^k
    std::vector<std::pair<std::int64_t, int>> want;
    want.reserve(deg);
    for (int i = 0; i < deg; ++i)
        if (num_[i] != 0) want.emplace_back(mod_pos(static_cast<std::int64_t>(i) * u, m), i);
    std::sort(want.begin(), want.end());
    std::vector<Int> acc(deg, 0);
    std::vector<Int> p(deg, 0);
    p[0] = 1;
    std::int64_t k = 0;
    for (const auto& [target, i] : want) {
        while (k < target) {
            shift_reduce(p, *data_);
            ++k;
        }
        for (int t = 0; t < deg; ++t) acc[t] += num_[i] * p[t];
    }
    return Cyclotomic(data_, std::move(acc), den_);
}

Cyclotomic Cyclotomic::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    Cyclotomic base = *this;
    Cyclotomic result = Cyclotomic::one().lifted_to(conductor());
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor()) {
        auto [x, y] = lift_pair(a, b);
        return x == y;
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

std::complex<double> Cyclotomic::approx() const {
    const double m = static_cast<double>(conductor());
    std::complex<double> acc(0.0, 0.0);
    const double den = den_.convert_to<double>();
    for (int i = 0; i < degree(); ++i) {
        if (num_[i] == 0) continue;
        double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / m;
        acc += (num_[i].convert_to<double>() / den) *
               std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    os << "c[" << conductor() << "]:(";
    for (int i = 0; i < degree(); ++i) {
        if (i) os << ",";
        os << Rational(num_[i], den_).str();
    }
    os << ")";
    return os.str();
}

Cyclotomic Cyclotomic::parse(const std::string& s) {
    if (s.size() < 6 || s[0] != 'c' || s[1] != '[')
        throw std::invalid_argument("Cyclotomic::parse: bad format: " + s);
    auto close = s.find(']');
    std::int64_t m = std::stoll(s.substr(2, close - 2));
    auto open = s.find('(', close);
    auto end = s.rfind(')');
    std::string body = s.substr(open + 1, end - open - 1);
    std::vector<Rational> coeffs;
    std::string cur;
    for (char ch : body) {
        if (ch == ',') {
            coeffs.push_back(Rational::parse(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) coeffs.push_back(Rational::parse(cur));
    auto d = get_data(m);
    if (static_cast<int>(coeffs.size()) != d->degree)
        throw std::invalid_argument("Cyclotomic::parse: wrong coefficient count");
    Int den = 1;
    for (auto& q : coeffs)
        den = den / boost::multiprecision::gcd(den, q.denominator()) * q.denominator();
    std::vector<Int> num(d->degree);
    for (int i = 0; i < d->degree; ++i)
        num[i] = coeffs[i].numerator() * (den / coeffs[i].denominator());
    return Cyclotomic(d, std::move(num), den);
}

void Cyclotomic::append_key(std::string& out) const {
    out += std::to_string(conductor());
    out += '|';
    out += den_.str();
    out += '|';
    for (const auto& c : num_) {
        out += c.str();
        out += ',';
    }
}

} // namespace qsing
