#pragma once

// Shared helpers for the test binaries: independent small oracles that
// deliberately avoid the library's own elimination code paths.

#include <cstdint>
#include <random>
#include <vector>

#include "arran/cyclo.hpp"
#include "arran/matrix.hpp"

namespace testutil {

using arran::exact::Cyclo;
using arran::exact::Integer;
using arran::exact::MatrixF;
using arran::exact::Rational;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// Plain Gaussian elimination rank over F_p (row-major dense).
inline std::size_t fp_rank(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
    std::size_t rank = 0;
    std::size_t nr = m.size(), nc = nr ? m[0].size() : 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t sel = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (m[i][col] % p != 0) { sel = i; break; }
        if (sel == nr) continue;
        std::swap(m[rank], m[sel]);
        std::uint64_t inv = invmod(m[rank][col] % p, p);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            if (m[i][col] % p == 0) continue;
            std::uint64_t f = mulmod(m[i][col] % p, inv, p);
            for (std::size_t j = col; j < nc; ++j) {
                std::uint64_t sub = mulmod(f, m[rank][j] % p, p);
                m[i][j] = (m[i][j] % p + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

// Reduces a rational mod p (requires p coprime to the denominator).
inline std::uint64_t rational_mod_p(const Rational& r, std::uint64_t p) {
    Integer num = numerator(r) % p;
    Integer den = denominator(r) % p;
    std::uint64_t n = static_cast<std::uint64_t>((num % p + Integer(p)) % p);
    std::uint64_t d = static_cast<std::uint64_t>((den % p + Integer(p)) % p);
    return mulmod(n, invmod(d, p), p);
}

// Finds a primitive N-th root of unity in F_p; requires p = 1 (mod N).
inline std::uint64_t fp_root_of_unity(unsigned n, std::uint64_t p) {
    for (std::uint64_t g = 2; g < p; ++g) {
        std::uint64_t w = powmod(g, (p - 1) / n, p);
        bool primitive = w != 1;
        for (unsigned k = 1; primitive && k < n; ++k)
            if (powmod(w, k, p) == 1) primitive = false;
        if (primitive) return w;
    }
    return 0;
}

// Evaluates a cyclotomic value at zeta = w in F_p.
inline std::uint64_t cyclo_mod_p(const Cyclo& v, std::uint64_t w, std::uint64_t p) {
    std::uint64_t acc = 0, wp = 1;
    for (const auto& c : v.coeffs()) {
        acc = (acc + mulmod(rational_mod_p(c, p), wp, p)) % p;
        wp = mulmod(wp, w, p);
    }
    return acc;
}

inline std::size_t fp_rank_of(const MatrixF& m, std::uint64_t p) {
    std::uint64_t w = fp_root_of_unity(m.order(), p);
    std::vector<std::vector<std::uint64_t>> mm(m.rows(), std::vector<std::uint64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) mm[i][j] = cyclo_mod_p(m.at(i, j), w, p);
    return fp_rank(std::move(mm), p);
}

// Primes p = 1 (mod 12), safe for orders 1,2,3,4,6,12.
inline const std::vector<std::uint64_t>& oracle_primes() {
    static const std::vector<std::uint64_t> ps = {1000033, 1000117, 1000213, 1000249, 1000453};
    return ps;
}

// gcd of all k x k minors of an integer matrix (0 when all vanish); this is
// the independent characterization d_1 * ... * d_k of Smith invariants.
inline Integer minor_gcd(const std::vector<std::vector<Integer>>& m, std::size_t k);

namespace detail {
inline Integer det(const std::vector<std::vector<Integer>>& m, std::vector<std::size_t> rows,
                   std::vector<std::size_t> cols) {
    std::size_t n = rows.size();
    if (n == 1) return m[rows[0]][cols[0]];
    Integer acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
        std::vector<std::size_t> sub_cols;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sub_cols.push_back(cols[j]);
        Integer term = m[rows[0]][cols[i]] * det(m, sub_rows, sub_cols);
        acc += (i % 2 == 0) ? term : -term;
    }
    return acc;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

inline Integer minor_gcd(const std::vector<std::vector<Integer>>& m, std::size_t k) {
    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    std::vector<std::size_t> cur;
    detail::choose(m.size(), k, 0, cur, row_sets);
    detail::choose(m[0].size(), k, 0, cur, col_sets);
    Integer g = 0;
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) g = arran::exact::int_gcd(g, detail::det(m, rs, cs));
    return g < 0 ? Integer(-g) : g;
}

} // namespace testutil
