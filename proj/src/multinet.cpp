#include "arran/multinet.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "arran/errors.hpp"
#include "arran/matrix.hpp"

namespace arran::net {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

std::string class_list(const std::vector<std::size_t>& lines) {
    std::ostringstream os;
    os << "{";
    for (std::size_t t = 0; t < lines.size(); ++t) os << (t ? "," : "") << lines[t];
    os << "}";
    return os.str();
}

// ---- enumeration ------------------------------------------------------

struct PointState {
    std::vector<std::size_t> positions; // support positions through the point
    std::size_t assigned = 0;
    std::vector<unsigned> sums;         // per-class weighted multiplicity
    unsigned distinct = 0;
};

struct SearchContext {
    const Arrangement* arr = nullptr;
    const Lattice* lattice = nullptr;
    unsigned k = 0;
    unsigned mu_max = 1;
    unsigned e = 0;
    std::vector<std::size_t> support;           // global line index per position
    std::vector<PointState> points;
    std::vector<std::vector<std::size_t>> points_of_pos;
    std::vector<unsigned> cls, muv;
    std::vector<unsigned> weight;               // per-class total multiplicity
    unsigned used = 0;
    unsigned assigned_weight = 0;
    std::chrono::steady_clock::time_point deadline;
    std::uint64_t nodes = 0;
    bool out_of_time = false;
    std::set<std::string> keys;
    std::vector<Multinet>* found = nullptr;
};

bool point_allows(const PointState& ps, unsigned k, unsigned c, unsigned m) {
    const unsigned distinct = ps.distinct + (ps.sums[c] == 0 ? 1 : 0);
    const std::size_t unassigned = ps.positions.size() - ps.assigned - 1;
    if (distinct >= 2 && distinct < k && k - distinct > unassigned) return false;
    if (unassigned == 0 && distinct >= 2) {
        if (distinct != k) return false;
        const unsigned n = ps.sums[c] + m;
        for (unsigned j = 0; j < k; ++j) {
            const unsigned s = j == c ? ps.sums[c] + m : ps.sums[j];
            if (s != n) return false;
        }
    }
    return true;
}

void emit_leaf(SearchContext& ctx) {
    unsigned g = 0;
    for (unsigned m : ctx.muv) g = std::gcd(g, m);
    if (g != 1) return; // multiples of a smaller multinet are not re-listed
    std::vector<std::vector<std::size_t>> classes(ctx.k);
    std::vector<unsigned> mu(ctx.arr->size(), 0);
    for (std::size_t i = 0; i < ctx.support.size(); ++i) {
        classes[ctx.cls[i]].push_back(ctx.support[i]);
        mu[ctx.support[i]] = ctx.muv[i];
    }
    Multinet mn;
    try {
        mn = validate_multinet(*ctx.arr, *ctx.lattice, classes, mu, "enumerated");
    } catch (const axiom_violation&) {
        return; // M4 (and anything the incremental pruning missed)
    }
    std::ostringstream key;
    for (std::size_t i : mn.support) key << i << "." << mn.mu[i] << ";";
    for (const auto& cls : mn.classes) key << class_list(cls);
    if (ctx.keys.insert(key.str()).second) ctx.found->push_back(std::move(mn));
}

void search(SearchContext& ctx, std::size_t pos) {
    if (ctx.out_of_time) return;
    if (++ctx.nodes % 1024 == 0 && std::chrono::steady_clock::now() > ctx.deadline) {
        ctx.out_of_time = true;
        return;
    }
    const std::size_t n = ctx.support.size();
    if (pos == n) {
        if (ctx.used == ctx.k) emit_leaf(ctx);
        return;
    }
    if (ctx.used + (n - pos) < ctx.k) return;
    const unsigned cmax = std::min(ctx.used, ctx.k - 1);
    for (unsigned c = 0; c <= cmax; ++c) {
        for (unsigned m = 1; m <= ctx.mu_max; ++m) {
            if (ctx.weight[c] + m > ctx.e) continue;
            const unsigned rest_w = ctx.k * ctx.e - ctx.assigned_weight - m;
            const std::size_t rest_lines = n - pos - 1;
            if (rest_w < rest_lines || rest_w > rest_lines * ctx.mu_max) continue;
            bool ok = true;
            for (std::size_t p : ctx.points_of_pos[pos])
                if (!point_allows(ctx.points[p], ctx.k, c, m)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            ctx.cls[pos] = c;
            ctx.muv[pos] = m;
            ctx.weight[c] += m;
            ctx.assigned_weight += m;
            const unsigned prev_used = ctx.used;
            if (c == ctx.used) ++ctx.used;
            for (std::size_t p : ctx.points_of_pos[pos]) {
                PointState& ps = ctx.points[p];
                if (ps.sums[c] == 0) ++ps.distinct;
                ps.sums[c] += m;
                ++ps.assigned;
            }
            search(ctx, pos + 1);
            for (std::size_t p : ctx.points_of_pos[pos]) {
                PointState& ps = ctx.points[p];
                ps.sums[c] -= m;
                if (ps.sums[c] == 0) --ps.distinct;
                --ps.assigned;
            }
            ctx.used = prev_used;
            ctx.weight[c] -= m;
            ctx.assigned_weight -= m;
            if (ctx.out_of_time) return;
        }
    }
}

void search_support(SearchContext& ctx, const std::vector<std::size_t>& support, unsigned k,
                    unsigned mu_max) {
    if (std::chrono::steady_clock::now() >= ctx.deadline) {
        ctx.out_of_time = true;
        return;
    }
    const std::size_t n = support.size();
    ctx.k = k;
    ctx.mu_max = mu_max;
    ctx.support = support;
    ctx.points.clear();
    ctx.points_of_pos.assign(n, {});
    std::vector<std::size_t> pos_of_line(ctx.arr->size(), npos);
    for (std::size_t i = 0; i < n; ++i) pos_of_line[support[i]] = i;
    for (const auto& fp : ctx.lattice->points) {
        PointState ps;
        for (std::size_t i : fp.lines)
            if (pos_of_line[i] != npos) ps.positions.push_back(pos_of_line[i]);
        if (ps.positions.size() < 2) continue;
        ps.sums.assign(k, 0);
        const std::size_t id = ctx.points.size();
        for (std::size_t p : ps.positions) ctx.points_of_pos[p].push_back(id);
        ctx.points.push_back(std::move(ps));
    }
    ctx.cls.assign(n, 0);
    ctx.muv.assign(n, 0);
    const unsigned e_lo = static_cast<unsigned>((n + k - 1) / k);
    const unsigned e_hi = static_cast<unsigned>(n * mu_max / k);
    for (unsigned e = e_lo; e <= e_hi; ++e) {
        if (mu_max == 1 && e * k != n) continue;
        ctx.e = e;
        ctx.weight.assign(k, 0);
        ctx.used = 0;
        ctx.assigned_weight = 0;
        search(ctx, 0);
        if (ctx.out_of_time) return;
    }
}

} // namespace

Multinet validate_multinet(const Arrangement& arr, const Lattice& lattice,
                           const std::vector<std::vector<std::size_t>>& classes,
                           const std::vector<unsigned>& mu, std::string source) {
    const std::size_t d = arr.size();
    const std::size_t k = classes.size();
    if (k < 3) throw input_error("a multinet needs at least 3 classes");
    if (mu.size() != d) throw input_error("mu must assign a value to every line");

    std::vector<std::size_t> cls_of(d, npos);
    for (std::size_t j = 0; j < k; ++j) {
        if (classes[j].empty()) throw input_error("class " + std::to_string(j) + " is empty");
        for (std::size_t i : classes[j]) {
            if (i >= d) throw input_error("class line index out of range");
            if (cls_of[i] != npos)
                throw input_error("line " + std::to_string(i) + " appears in two classes");
            cls_of[i] = j;
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (cls_of[i] != npos && mu[i] == 0)
            throw input_error("mu must be positive on support line " + std::to_string(i));
        if (cls_of[i] == npos && mu[i] != 0)
            throw input_error("mu must vanish off the support (line " + std::to_string(i) + ")");
    }

    std::vector<unsigned> weight(k, 0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i : classes[j]) weight[j] += mu[i];
    for (std::size_t j = 1; j < k; ++j)
        if (weight[j] != weight[0])
            throw axiom_violation("M1", "class " + class_list(classes[0]) + " has weight " +
                                            std::to_string(weight[0]) + " but class " +
                                            class_list(classes[j]) + " has weight " +
                                            std::to_string(weight[j]));

    Multinet mn;
    mn.e = weight[0];
    mn.mu = mu;
    mn.source = std::move(source);
    mn.classes.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        mn.classes[j] = classes[j];
        std::sort(mn.classes[j].begin(), mn.classes[j].end());
    }
    std::sort(mn.classes.begin(), mn.classes.end());
    for (std::size_t i = 0; i < d; ++i)
        if (cls_of[i] != npos) mn.support.push_back(i);
    mn.reduced = true;
    for (std::size_t i : mn.support)
        if (mu[i] != 1) mn.reduced = false;

    // base points and M2
    std::vector<bool> is_base(lattice.points.size(), false);
    for (std::size_t p = 0; p < lattice.points.size(); ++p) {
        std::vector<unsigned> sums(k, 0);
        std::size_t on_support = 0, present = 0;
        for (std::size_t i : lattice.points[p].lines) {
            if (cls_of[i] == npos) continue;
            ++on_support;
            if (sums[cls_of[i]] == 0) ++present;
            sums[cls_of[i]] += mu[i];
        }
        if (on_support < 2 || present < 2) continue;
        for (std::size_t j = 1; j < k; ++j)
            if (sums[j] != sums[0]) {
                std::ostringstream w;
                w << "at point " << p << " class " << class_list(mn.classes[0]) << " meets with "
                  << "multiplicity " << sums[0] << " but class " << class_list(mn.classes[j])
                  << " with " << sums[j];
                throw axiom_violation("M2", w.str());
            }
        is_base[p] = true;
        mn.base_points.push_back({p, sums[0]});
    }
    // M3 holds by construction: lines of different classes meet at a point
    // carrying >= 2 classes, which the loop above just recorded as base.

    // M4: within each class, connectivity through points off the base locus
    for (std::size_t j = 0; j < k; ++j) {
        const auto& cls = mn.classes[j];
        std::vector<std::size_t> comp(cls.size());
        std::iota(comp.begin(), comp.end(), std::size_t{0});
        const auto root = [&](std::size_t x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (std::size_t p = 0; p < lattice.points.size(); ++p) {
            if (is_base[p]) continue;
            std::size_t first = npos;
            for (std::size_t i : lattice.points[p].lines) {
                if (cls_of[i] != j) continue;
                const std::size_t pos =
                    std::lower_bound(cls.begin(), cls.end(), i) - cls.begin();
                if (first == npos)
                    first = pos;
                else
                    comp[root(pos)] = root(first);
            }
        }
        for (std::size_t t = 1; t < cls.size(); ++t)
            if (root(t) != root(0))
                throw axiom_violation("M4", "class " + class_list(cls) + ": lines " +
                                                std::to_string(cls[0]) + " and " +
                                                std::to_string(cls[t]) +
                                                " are not connected off the base locus");
    }
    return mn;
}

EnumerationResult enumerate_multinets(const Arrangement& arr, const Lattice& lattice, unsigned k,
                                      const EnumerationOptions& opts) {
    if (k != 3 && k != 4) throw input_error("multinet enumeration supports k = 3 or 4");
    const std::size_t d = arr.size();
    EnumerationResult res;

    SearchContext ctx;
    ctx.arr = &arr;
    ctx.lattice = &lattice;
    ctx.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(opts.budget_ms);
    ctx.found = &res.found;
    const unsigned mu_max = opts.reduced_only ? 1u : std::max(1u, opts.max_mu);

    std::vector<std::vector<std::size_t>> supports;
    if (!opts.max_support) {
        std::vector<std::size_t> all(d);
        std::iota(all.begin(), all.end(), std::size_t{0});
        supports.push_back(std::move(all));
    } else {
        if (d > 20) throw input_error("subarrangement sweep limited to 20 lines");
        const std::size_t cap = std::min<std::size_t>(*opts.max_support, d);
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            std::vector<std::size_t> sub;
            for (std::size_t i = 0; i < d; ++i)
                if (mask >> i & 1) sub.push_back(i);
            if (sub.size() >= 3 && sub.size() <= cap) supports.push_back(std::move(sub));
        }
    }
    for (const auto& support : supports) {
        if (support.size() < k) continue;
        search_support(ctx, support, k, mu_max);
        if (ctx.out_of_time) break;
    }
    res.exhaustive = !ctx.out_of_time;
    return res;
}

std::size_t monomial_index(unsigned a, unsigned b, unsigned deg) {
    // blocks a = deg..0, then b descending within each block
    const unsigned block = deg - a;
    return static_cast<std::size_t>(block) * (block + 1) / 2 + (deg - a - b);
}

namespace {

using exact::Cyclo;

std::vector<Cyclo> multiply_by_line(const std::vector<Cyclo>& poly, unsigned deg,
                                    const std::array<Cyclo, 3>& f) {
    const unsigned ndeg = deg + 1;
    std::vector<Cyclo> out(static_cast<std::size_t>(ndeg + 1) * (ndeg + 2) / 2, Cyclo::zero());
    for (unsigned a = 0; a <= deg; ++a)
        for (unsigned b = 0; a + b <= deg; ++b) {
            const Cyclo& c = poly[monomial_index(a, b, deg)];
            if (c.is_zero()) continue;
            if (!f[0].is_zero()) out[monomial_index(a + 1, b, ndeg)] += c * f[0];
            if (!f[1].is_zero()) out[monomial_index(a, b + 1, ndeg)] += c * f[1];
            if (!f[2].is_zero()) out[monomial_index(a, b, ndeg)] += c * f[2];
        }
    return out;
}

} // namespace

PencilRealization realize_pencil(const Arrangement& arr, const Multinet& mn) {
    PencilRealization pr;
    pr.degree = mn.e;
    for (const auto& cls : mn.classes) {
        std::vector<Cyclo> q(1, Cyclo::one());
        unsigned deg = 0;
        for (std::size_t i : cls)
            for (unsigned t = 0; t < mn.mu[i]; ++t) {
                q = multiply_by_line(q, deg, arr.lines[i].a);
                ++deg;
            }
        if (deg != mn.e) throw consistency_failure("class form degree differs from e");
        pr.q.push_back(std::move(q));
    }
    const auto rk = exact::rank_and_kernel(exact::MatrixF::from_rows(pr.q));
    if (rk.rank != 2) throw span_not_two(rk.rank);

    const std::size_t k = pr.q.size();
    const std::size_t cols = pr.q[0].size();
    if (exact::matrix_rank(exact::MatrixF::from_rows({pr.q[0], pr.q[1]})) != 2)
        throw consistency_failure("first two class forms are dependent");
    pr.collinearity.emplace_back(Cyclo::one(), Cyclo::zero());
    pr.collinearity.emplace_back(Cyclo::zero(), Cyclo::one());
    for (std::size_t j = 2; j < k; ++j) {
        std::vector<std::vector<Cyclo>> rows(cols, std::vector<Cyclo>(3, Cyclo::zero()));
        for (std::size_t m = 0; m < cols; ++m) {
            rows[m][0] = pr.q[0][m];
            rows[m][1] = pr.q[1][m];
            rows[m][2] = pr.q[j][m];
        }
        const auto sol = exact::rank_and_kernel(exact::MatrixF::from_rows(rows));
        if (sol.rank != 2 || sol.kernel.size() != 1)
            throw consistency_failure("collinearity solve failed");
        // kernel vector is (a, b, -1): a Q_1 + b Q_2 = Q_j
        pr.collinearity.emplace_back(sol.kernel[0][0], sol.kernel[0][1]);
    }
    for (std::size_t j = 0; j < k; ++j) {
        const Cyclo p = -pr.collinearity[j].second;
        const Cyclo q = pr.collinearity[j].first;
        if (!p.is_zero())
            pr.fiber_points.emplace_back(Cyclo::one(), q / p);
        else
            pr.fiber_points.emplace_back(Cyclo::zero(), Cyclo::one());
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            const Cyclo cross = pr.fiber_points[a].first * pr.fiber_points[b].second -
                                pr.fiber_points[b].first * pr.fiber_points[a].second;
            if (cross.is_zero()) throw consistency_failure("coincident pencil fiber points");
        }
    return pr;
}

std::vector<MonodromyBound> monodromy_lower_bounds(const Multinet& mn, std::size_t d) {
    if (mn.mu.size() != d) throw input_error("multinet does not match the arrangement size");
    const unsigned k = static_cast<unsigned>(mn.k());
    std::set<std::pair<unsigned, unsigned>> seen;
    std::vector<MonodromyBound> out;
    for (unsigned a = 1; a < k; ++a) {
        std::set<unsigned> values;
        if (mn.support.size() < d) values.insert(0); // lines off support carry 1
        for (std::size_t i : mn.support) values.insert(a * mn.mu[i] % k);
        if (values.size() != 1) continue;
        const unsigned v = *values.begin();
        if (v == 0) continue;                          // lambda0 = 1
        if (static_cast<unsigned>(d % k) * v % k != 0) // lambda0^d != 1
            continue;
        const unsigned g = std::gcd(v, k);
        if (seen.insert({k / g, v / g}).second) out.push_back({k / g, v / g, k - 2});
    }
    std::sort(out.begin(), out.end(), [](const MonodromyBound& x, const MonodromyBound& y) {
        return std::tie(x.order, x.exponent) < std::tie(y.order, y.exponent);
    });
    return out;
}

Certificate nontriviality_certificate(const Multinet& mn, const PencilRealization& pencil,
                                      const std::vector<MonodromyBound>& bounds) {
    if (!mn.reduced) throw not_reduced();
    if (pencil.degree != mn.e || pencil.q.size() != mn.k())
        throw input_error("pencil does not belong to the multinet");
    Certificate cert;
    cert.nontrivial = true;
    cert.k = mn.k();
    cert.reduced = true;
    cert.dim_isotropic = cert.k - 1;
    cert.dim_cover_lower = (cert.k - 1) * (cert.k - 1);
    cert.bounds = bounds;
    cert.notes = "reduced " + std::to_string(cert.k) +
                 "-net pencil of degree " + std::to_string(mn.e) +
                 "; the pulled-back pencil on the cyclic cover is not rational";
    return cert;
}

DirectionCount direction_count(const Multinet& mn) {
    DirectionCount dc;
    for (const auto& cls : mn.classes) {
        unsigned g = 0;
        for (std::size_t i : cls) g = std::gcd(g, mn.mu[i]);
        dc.m.push_back(g);
        if (g > 1) dc.n *= g;
    }
    return dc;
}

std::pair<long, long> stein_chi(const SteinData& data) {
    if (data.e < 1) throw input_error("map degree e must be at least 1");
    if (data.s.size() + 1 != data.e)
        throw input_error("expected one s_k count for each 1 <= k < e");
    long total = 0;
    for (long sk : data.s) {
        if (sk < 0) throw input_error("s_k counts must be non-negative");
        total += sk;
    }
    const long chi_se = data.chi_s - total;
    long chi1 = data.chi_s + static_cast<long>(data.e - 1) * chi_se;
    long chi2 = data.chi_s + static_cast<long>(data.e - 1) * data.chi_s;
    for (std::size_t t = 0; t < data.s.size(); ++t) {
        const long kk = static_cast<long>(t) + 1;
        chi1 += (kk - 1) * data.s[t];
        chi2 += (kk - static_cast<long>(data.e)) * data.s[t];
    }
    if (chi1 != chi2) throw consistency_failure("Euler characteristic formulas disagree");
    return {chi1, chi_se};
}

} // namespace arran::net
