#include "arran/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace arran::exact {

namespace {

using Poly = std::vector<Rational>; // little-endian, may carry trailing zeros

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// in-place remainder of a by monic b
void mod_monic(Poly& a, const Poly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        Rational lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        a.pop_back();
        trim(a);
    }
}

// exact quotient a / b for monic b with zero remainder
Poly div_monic(Poly a, const Poly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (a.empty()) return {};
    Poly q(a.size() > db ? a.size() - db : 0, Rational(0));
    while (a.size() > db) {
        Rational lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        q[shift] = lead;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        trim(a);
    }
    return q;
}

Poly mul_poly(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

std::map<unsigned, Poly> g_phi_cache;
std::mutex g_phi_mutex;

} // namespace

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> small, large;
    for (unsigned d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

const std::vector<Rational>& cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw input_error("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    auto it = g_phi_cache.find(n);
    if (it != g_phi_cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up so
    // every divisor is already cached.
    std::vector<unsigned> divs;
    for (unsigned d : divisors(n))
        if (d < n) divs.push_back(d);
    for (unsigned d : divs) {
        if (g_phi_cache.count(d)) continue;
        // recurse without re-locking: divisors are processed in increasing order
        Poly num(d + 1, Rational(0));
        num[0] = -1;
        num[d] = 1;
        for (unsigned e : divisors(d))
            if (e < d) num = div_monic(std::move(num), g_phi_cache.at(e));
        g_phi_cache.emplace(d, std::move(num));
    }
    Poly num(n + 1, Rational(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned d : divs) num = div_monic(std::move(num), g_phi_cache.at(d));
    return g_phi_cache.emplace(n, std::move(num)).first->second;
}

Cyclo::Cyclo(unsigned order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
    if (order_ == 0) throw input_error("cyclotomic order must be positive");
    if (c_.size() != euler_phi(order_))
        throw input_error("coefficient vector length must equal phi(order)");
}

Cyclo Cyclo::root_of_unity(unsigned n, long k) {
    if (n == 0) throw input_error("cyclotomic order must be positive");
    long kk = k % static_cast<long>(n);
    if (kk < 0) kk += n;
    Poly p(static_cast<std::size_t>(kk) + 1, Rational(0));
    p.back() = 1;
    mod_monic(p, cyclotomic_polynomial(n));
    p.resize(euler_phi(n), Rational(0));
    return Cyclo(n, std::move(p));
}

bool Cyclo::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclo::is_one() const {
    if (c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Cyclo Cyclo::embedded(unsigned m) const {
    if (m == order_) return *this;
    if (m % order_ != 0) throw input_error("embedding target order must be a multiple");
    const unsigned step = m / order_;
    Poly p(static_cast<std::size_t>(euler_phi(order_) - 1) * step + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
    mod_monic(p, cyclotomic_polynomial(m));
    p.resize(euler_phi(m), Rational(0));
    return Cyclo(m, std::move(p));
}

std::pair<Cyclo, Cyclo> promote(const Cyclo& a, const Cyclo& b) {
    unsigned l = std::lcm(a.order(), b.order());
    return {a.embedded(l), b.embedded(l)};
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    auto [x, y] = promote(a, b);
    Poly p = mul_poly(x.c_, y.c_);
    mod_monic(p, cyclotomic_polynomial(x.order_));
    p.resize(euler_phi(x.order_), Rational(0));
    return Cyclo(x.order_, std::move(p));
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw non_invertible("inverse of zero in Q(zeta)");
    if (is_rational()) {
        Cyclo r = *this;
        r.c_[0] = Rational(1) / r.c_[0];
        for (std::size_t i = 1; i < r.c_.size(); ++i) r.c_[i] = 0;
        return r;
    }
    // extended Euclid in Q[x]: u*f + v*Phi = gcd = const, so f^-1 = u/gcd
    Poly r0 = cyclotomic_polynomial(order_), r1 = c_;
    trim(r1);
    Poly u0{}, u1{Rational(1)}; // coefficients of f in the Bezout combination
    while (true) {
        trim(r1);
        if (r1.empty()) throw non_invertible("inverse of zero divisor in Q(zeta)");
        if (r1.size() == 1) break;
        // r0 = q*r1 + r2, monic division after scaling
        Rational lead = r1.back();
        Poly r1m = r1;
        for (auto& x : r1m) x /= lead;
        Poly q = div_monic(r0, r1m); // r0 - q*r1m has degree < deg r1
        for (auto& x : q) x /= lead; // so that r0 - q*r1 is the remainder
        Poly r2 = r0;
        {
            Poly qr = mul_poly(q, r1);
            if (qr.size() > r2.size()) r2.resize(qr.size(), Rational(0));
            for (std::size_t i = 0; i < qr.size(); ++i) r2[i] -= qr[i];
            trim(r2);
        }
        Poly u2 = u0;
        {
            Poly qu = mul_poly(q, u1);
            if (qu.size() > u2.size()) u2.resize(qu.size(), Rational(0));
            for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
            trim(u2);
        }
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    Rational g = r1[0];
    Poly inv = u1;
    for (auto& x : inv) x /= g;
    mod_monic(inv, cyclotomic_polynomial(order_));
    inv.resize(euler_phi(order_), Rational(0));
    return Cyclo(order_, std::move(inv));
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

Cyclo Cyclo::pow(long e) const {
    if (e == 0) return Cyclo::one();
    Cyclo base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    Cyclo acc = Cyclo::one();
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    auto [x, y] = promote(a, b);
    return x.c_ == y.c_;
}

bool lex_less(const Cyclo& a, const Cyclo& b) {
    auto [x, y] = promote(a, b);
    const auto& u = x.coeffs();
    const auto& v = y.coeffs();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != v[i]) return u[i] < v[i];
    }
    return false;
}

} // namespace arran::exact
