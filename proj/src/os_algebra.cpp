#include "arran/os_algebra.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <set>

#include "arran/errors.hpp"
#include "arran/matrix.hpp"

namespace arran::os {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

exact::MatrixF span_matrix(const std::vector<std::vector<Cyclo>>& span) {
    return exact::MatrixF::from_rows(span);
}

std::size_t span_rank(const std::vector<std::vector<Cyclo>>& span) {
    if (span.empty()) return 0;
    return exact::matrix_rank(span_matrix(span));
}

// True when every row of inner lies in the row span of outer.
bool span_contained(const std::vector<std::vector<Cyclo>>& inner,
                    const std::vector<std::vector<Cyclo>>& outer) {
    std::vector<std::vector<Cyclo>> stacked = outer;
    stacked.insert(stacked.end(), inner.begin(), inner.end());
    return span_rank(stacked) == span_rank(outer);
}

} // namespace

OS2 os2_structure(const Arrangement& arr, const Lattice& lattice) {
    OS2 os2;
    os2.d = arr.size();
    os2.point_of_pair.assign(os2.d, std::vector<std::size_t>(os2.d, npos));
    os2.anchor.resize(lattice.points.size());
    os2.basis_index.assign(lattice.points.size(), std::vector<std::size_t>(os2.d, npos));
    for (std::size_t p = 0; p < lattice.points.size(); ++p) {
        const auto& inc = lattice.points[p].lines;
        os2.anchor[p] = inc.front();
        for (std::size_t s = 0; s < inc.size(); ++s)
            for (std::size_t t = s + 1; t < inc.size(); ++t)
                os2.point_of_pair[inc[s]][inc[t]] = os2.point_of_pair[inc[t]][inc[s]] = p;
        for (std::size_t t = 1; t < inc.size(); ++t) {
            os2.basis_index[p][inc[t]] = os2.basis.size();
            os2.basis.emplace_back(p, inc[t]);
        }
    }
    return os2;
}

std::vector<std::pair<std::size_t, int>> os2_product(const OS2& os2, std::size_t i,
                                                     std::size_t j) {
    if (i >= os2.d || j >= os2.d) throw input_error("line index out of range in os2 product");
    if (i == j) return {};
    if (i > j) {
        auto terms = os2_product(os2, j, i);
        for (auto& t : terms) t.second = -t.second;
        return terms;
    }
    const std::size_t p = os2.point_of_pair[i][j];
    const std::size_t a = os2.anchor[p];
    if (i == a) return {{os2.basis_index[p][j], 1}};
    // e_i e_j = e_a e_j - e_a e_i at the common point with anchor a < i < j
    return {{os2.basis_index[p][j], 1}, {os2.basis_index[p][i], -1}};
}

std::vector<Cyclo> cup(const OS2& os2, const std::vector<Cyclo>& u, const std::vector<Cyclo>& v) {
    if (u.size() != os2.d || v.size() != os2.d)
        throw input_error("degree-1 vectors must have one coordinate per line");
    std::vector<Cyclo> out(os2.dim_a2(), Cyclo::zero());
    for (std::size_t i = 0; i < os2.d; ++i)
        for (std::size_t j = i + 1; j < os2.d; ++j) {
            const Cyclo c = u[i] * v[j] - u[j] * v[i];
            if (c.is_zero()) continue;
            for (const auto& [pos, sign] : os2_product(os2, i, j))
                out[pos] += sign > 0 ? c : -c;
        }
    return out;
}

std::size_t aomoto_h1(const OS2& os2, const std::vector<Cyclo>& alpha) {
    if (alpha.size() != os2.d)
        throw input_error("alpha must have one coordinate per line");
    Cyclo sigma = Cyclo::zero();
    bool zero = true;
    for (const Cyclo& a : alpha) {
        sigma += a;
        if (!a.is_zero()) zero = false;
    }
    if (!sigma.is_zero()) throw sigma_non_zero();
    if (zero) return os2.d - 1;
    // columns = images e_i . alpha in the degree-2 basis
    std::vector<std::vector<Cyclo>> rows(os2.dim_a2(),
                                         std::vector<Cyclo>(os2.d, Cyclo::zero()));
    for (std::size_t i = 0; i < os2.d; ++i)
        for (std::size_t j = 0; j < os2.d; ++j) {
            if (i == j || alpha[j].is_zero()) continue;
            for (const auto& [pos, sign] : os2_product(os2, i, j))
                rows[pos][i] += sign > 0 ? alpha[j] : -alpha[j];
        }
    const auto rk = exact::rank_and_kernel(exact::MatrixF::from_rows(rows));
    return rk.kernel.size() - 1;
}

std::vector<ResonanceComponent> resonance_components(const Arrangement& arr,
                                                     const Lattice& lattice,
                                                     const std::vector<net::Multinet>& multinets) {
    const std::size_t d = arr.size();
    const OS2 os2 = os2_structure(arr, lattice);

    std::vector<ResonanceComponent> candidates;
    for (std::size_t p = 0; p < lattice.points.size(); ++p) {
        const auto& inc = lattice.points[p].lines;
        if (inc.size() < 3) continue;
        ResonanceComponent c;
        c.provenance = ResonanceComponent::Provenance::local_point;
        c.point = p;
        for (std::size_t t = 1; t < inc.size(); ++t) {
            std::vector<Cyclo> v(d, Cyclo::zero());
            v[inc[t]] = Cyclo::one();
            v[inc[0]] = -Cyclo::one();
            c.span.push_back(std::move(v));
        }
        candidates.push_back(std::move(c));
    }
    for (std::size_t mi = 0; mi < multinets.size(); ++mi) {
        const net::Multinet& mn = multinets[mi];
        std::vector<std::vector<Cyclo>> weights;
        for (const auto& cls : mn.classes) {
            std::vector<Cyclo> v(d, Cyclo::zero());
            for (std::size_t i : cls) v[i] = Cyclo(static_cast<long>(mn.mu[i]));
            weights.push_back(std::move(v));
        }
        ResonanceComponent c;
        c.provenance = ResonanceComponent::Provenance::multinet;
        c.multinet = mi;
        for (std::size_t j = 1; j < weights.size(); ++j) {
            std::vector<Cyclo> v(d, Cyclo::zero());
            for (std::size_t i = 0; i < d; ++i) v[i] = weights[j][i] - weights[0][i];
            c.span.push_back(std::move(v));
        }
        candidates.push_back(std::move(c));
    }

    for (ResonanceComponent& c : candidates) {
        c.dimension = span_rank(c.span);
        if (c.dimension != c.span.size())
            throw consistency_failure("component span is not linearly independent");
        c.defined_over = span_matrix(c.span).order();
    }

    // locals precede multinets, so equal spans keep the local provenance
    std::vector<ResonanceComponent> kept;
    for (ResonanceComponent& c : candidates) {
        bool absorbed = false;
        for (const ResonanceComponent& k : kept)
            if (c.dimension <= k.dimension && span_contained(c.span, k.span)) {
                absorbed = true;
                break;
            }
        if (absorbed) continue;
        std::erase_if(kept, [&](const ResonanceComponent& k) {
            return k.dimension <= c.dimension && span_contained(k.span, c.span);
        });
        kept.push_back(std::move(c));
    }

    for (const ResonanceComponent& c : kept) {
        for (std::size_t s = 0; s < c.span.size(); ++s) {
            for (std::size_t t = s; t < c.span.size(); ++t) {
                for (const Cyclo& x : cup(os2, c.span[s], c.span[t]))
                    if (!x.is_zero())
                        throw consistency_failure("resonance component is not cup-isotropic");
            }
            if (aomoto_h1(os2, c.span[s]) < 1)
                throw consistency_failure("resonance component vector outside R^1_1");
        }
    }

    std::stable_sort(kept.begin(), kept.end(),
                     [](const ResonanceComponent& a, const ResonanceComponent& b) {
                         const bool la = a.provenance == ResonanceComponent::Provenance::local_point;
                         const bool lb = b.provenance == ResonanceComponent::Provenance::local_point;
                         if (la != lb) return la;
                         return la ? a.point < b.point : a.multinet < b.multinet;
                     });
    return kept;
}

std::vector<Character> torsion_points(const ResonanceComponent& component, unsigned order) {
    if (order == 0) throw input_error("torsion order must be positive");
    if (component.span.empty()) throw input_error("component span is empty");
    if (order == 1) return {};
    const std::size_t d = component.span.front().size();

    std::vector<std::vector<Cyclo>> rows;
    for (const auto& v : component.span) {
        for (const Cyclo& x : v)
            if (!x.is_rational()) throw irrational_span();
        rows.push_back(v);
    }

    // span = annihilator of its own rational kernel; integer points of the
    // span form the saturated kernel lattice of that annihilator matrix
    const auto rk = exact::rank_and_kernel(exact::MatrixF::from_rows(rows));
    exact::MatrixZ ann;
    for (const auto& kv : rk.kernel) {
        exact::Integer lcm = 1;
        for (const Cyclo& x : kv)
            lcm = exact::int_lcm(lcm, boost::multiprecision::denominator(x.rational_part()));
        std::vector<exact::Integer> row;
        for (const Cyclo& x : kv) {
            const exact::Rational r = x.rational_part();
            row.push_back(boost::multiprecision::numerator(r) *
                          (lcm / boost::multiprecision::denominator(r)));
        }
        ann.push_back(std::move(row));
    }
    std::vector<std::vector<exact::Integer>> basis;
    if (ann.empty()) {
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<exact::Integer> e(d, 0);
            e[i] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = exact::integer_kernel_basis(ann);
    }
    const std::size_t r = basis.size();
    if (r != component.dimension)
        throw consistency_failure("saturated lattice rank differs from component dimension");

    double combos = 1;
    for (std::size_t t = 0; t < r; ++t) combos *= order;
    if (combos > (1u << 20)) throw input_error("torsion enumeration too large");

    const long m = static_cast<long>(order);
    std::set<std::vector<long>> seen;
    std::vector<unsigned> c(r, 0);
    while (true) {
        // advance odometer
        std::size_t pos = 0;
        while (pos < r && ++c[pos] == order) c[pos++] = 0;
        if (pos == r) break;
        std::vector<long> exps(d, 0);
        for (std::size_t t = 0; t < r; ++t) {
            if (c[t] == 0) continue;
            for (std::size_t i = 0; i < d; ++i) {
                const exact::Integer term = basis[t][i] * c[t];
                exps[i] = ((exps[i] + static_cast<long>(term % m)) % m + m) % m;
            }
        }
        bool trivial = true;
        for (long e : exps)
            if (e != 0) trivial = false;
        if (!trivial) seen.insert(std::move(exps));
    }

    std::vector<Character> out;
    for (const auto& exps : seen) {
        Character chi;
        chi.order = order;
        chi.exponents = exps;
        validate_character(chi);
        out.push_back(std::move(chi));
    }
    return out;
}

} // namespace arran::os
