#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "arran/catalog.hpp"
#include "arran/errors.hpp"
#include "arran/matrix.hpp"
#include "arran/multinet.hpp"
#include "arran/os_algebra.hpp"
#include "testutil.hpp"

using namespace arran;
using exact::Cyclo;
using exact::Rational;

namespace {

struct Fixture {
    geom::Arrangement arr;
    geom::Lattice lat;
    os::OS2 os2;
};

Fixture fixture(const std::string& name) {
    Fixture f;
    f.arr = geom::builtin(name);
    f.lat = geom::intersection_lattice(f.arr);
    f.os2 = os::os2_structure(f.arr, f.lat);
    return f;
}

// Independent Aomoto oracle over F_p: works in the full wedge square
// (all pairs i<j) modulo the three-term point relations, never touching the
// library's anchored basis or its elimination code.
std::size_t oracle_aomoto_h1(const Fixture& f, const std::vector<Cyclo>& alpha,
                             std::uint64_t p) {
    const std::size_t d = f.arr.size();
    unsigned aorder = 1;
    for (const Cyclo& a : alpha) aorder = std::lcm(aorder, a.order());
    const std::uint64_t w = testutil::fp_root_of_unity(aorder, p);
    std::vector<std::uint64_t> av;
    for (const Cyclo& a : alpha) av.push_back(testutil::cyclo_mod_p(a.embedded(aorder), w, p));

    std::vector<std::vector<std::size_t>> pair_idx(d, std::vector<std::size_t>(d, 0));
    std::size_t np = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) pair_idx[i][j] = np++;

    // columns: d images of mu_alpha, then one column per point relation
    std::vector<std::vector<std::uint64_t>> cols;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::uint64_t> col(np, 0);
        for (std::size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            const std::uint64_t v = av[j];
            if (i < j)
                col[pair_idx[i][j]] = (col[pair_idx[i][j]] + v) % p;
            else
                col[pair_idx[j][i]] = (col[pair_idx[j][i]] + p - v) % p;
        }
        cols.push_back(std::move(col));
    }
    std::size_t nrel = 0;
    for (const auto& fp : f.lat.points) {
        const auto& inc = fp.lines;
        for (std::size_t a = 0; a < inc.size(); ++a)
            for (std::size_t b = a + 1; b < inc.size(); ++b)
                for (std::size_t c = b + 1; c < inc.size(); ++c) {
                    std::vector<std::uint64_t> col(np, 0);
                    col[pair_idx[inc[b]][inc[c]]] = 1;
                    col[pair_idx[inc[a]][inc[c]]] = p - 1;
                    col[pair_idx[inc[a]][inc[b]]] = 1;
                    cols.push_back(std::move(col));
                    ++nrel;
                }
    }
    // transpose into row-major for fp_rank
    std::vector<std::vector<std::uint64_t>> rel_rows(np, std::vector<std::uint64_t>(nrel, 0));
    for (std::size_t j = 0; j < nrel; ++j)
        for (std::size_t i = 0; i < np; ++i) rel_rows[i][j] = cols[d + j][i];
    std::vector<std::vector<std::uint64_t>> all_rows(np,
                                                     std::vector<std::uint64_t>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < np; ++i) all_rows[i][j] = cols[j][i];
    const std::size_t rank_rel = testutil::fp_rank(rel_rows, p);
    const std::size_t rank_all = testutil::fp_rank(all_rows, p);
    const std::size_t dim_ker = d - (rank_all - rank_rel);
    return dim_ker - 1;
}

std::vector<net::Multinet> reduced_nets(const Fixture& f, unsigned k) {
    net::EnumerationOptions opts;
    opts.reduced_only = true;
    return net::enumerate_multinets(f.arr, f.lat, k, opts).found;
}

bool in_span(const std::vector<std::vector<Cyclo>>& span, const std::vector<Cyclo>& v) {
    std::vector<std::vector<Cyclo>> stacked = span;
    stacked.push_back(v);
    const auto base = exact::rank_and_kernel(exact::MatrixF::from_rows(span));
    const auto ext = exact::rank_and_kernel(exact::MatrixF::from_rows(stacked));
    return base.rank == ext.rank;
}

bool in_some_component(const std::vector<os::ResonanceComponent>& comps,
                       const std::vector<Cyclo>& v) {
    for (const auto& c : comps)
        if (in_span(c.span, v)) return true;
    return false;
}

} // namespace

TEST_CASE("os2 dimensions match the lattice") {
    auto two = geom::make_arrangement(
        "two", 1, {{Cyclo(1), Cyclo(0), Cyclo(0)}, {Cyclo(0), Cyclo(1), Cyclo(0)}});
    auto lat2 = geom::intersection_lattice(two);
    CHECK(os::os2_structure(two, lat2).dim_a2() == 1);

    auto a3 = fixture("A3");
    CHECK(a3.os2.d == 6);
    CHECK(a3.os2.dim_a2() == 11); // 4 triple points and 3 doubles

    auto hesse = fixture("Hesse");
    CHECK(hesse.os2.dim_a2() == 39); // 9 quadruple points and 12 doubles
}

TEST_CASE("os2 product table is antisymmetric and anchored") {
    auto f = fixture("A3");
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(os::os2_product(f.os2, i, i).empty());
        for (std::size_t j = i + 1; j < 6; ++j) {
            auto ij = os::os2_product(f.os2, i, j);
            auto ji = os::os2_product(f.os2, j, i);
            REQUIRE(ij.size() == ji.size());
            for (std::size_t t = 0; t < ij.size(); ++t) {
                CHECK(ij[t].first == ji[t].first);
                CHECK(ij[t].second == -ji[t].second);
            }
            // anchored expansion never has more than two terms
            CHECK(ij.size() <= 2);
        }
    }
}

TEST_CASE("aomoto h1 on the braid arrangement") {
    auto f = fixture("A3");
    const Cyclo z3 = Cyclo::root_of_unity(3, 1);

    std::vector<Cyclo> zero(6, Cyclo::zero());
    CHECK(os::aomoto_h1(f.os2, zero) == 5);

    // the triple point (0:0:1) carries lines 0, 1, 3
    std::vector<Cyclo> local(6, Cyclo::zero());
    local[0] = Cyclo::one();
    local[1] = z3;
    local[3] = z3 * z3;
    CHECK(os::aomoto_h1(f.os2, local) == 1);
    for (std::uint64_t p : {testutil::oracle_primes()[0], testutil::oracle_primes()[1]})
        CHECK(oracle_aomoto_h1(f, local, p) == 1);

    // generic rational class summing to zero
    std::vector<Cyclo> generic = {Cyclo(1), Cyclo(2), Cyclo(3), Cyclo(5), Cyclo(7), Cyclo(-18)};
    CHECK(os::aomoto_h1(f.os2, generic) == 0);
    CHECK(oracle_aomoto_h1(f, generic, testutil::oracle_primes()[0]) == 0);

    // weighted class difference of the 3-net {x,y-z} vs {y,x-z}
    std::vector<Cyclo> netv = {Cyclo(-1), Cyclo(1), Cyclo(0), Cyclo(0), Cyclo(-1), Cyclo(1)};
    CHECK(os::aomoto_h1(f.os2, netv) == 1);
    CHECK(oracle_aomoto_h1(f, netv, testutil::oracle_primes()[0]) == 1);

    std::vector<Cyclo> bad(6, Cyclo::zero());
    bad[0] = Cyclo::one();
    CHECK_THROWS_AS(os::aomoto_h1(f.os2, bad), sigma_non_zero);
}

TEST_CASE("aomoto h1 is scale invariant and alpha cup alpha vanishes") {
    auto f = fixture("A3");
    std::mt19937 rng(20260815);
    std::uniform_int_distribution<int> pick(0, 5);
    const std::vector<Cyclo> pool = {Cyclo(1),  Cyclo(-1), Cyclo(2), Cyclo::root_of_unity(6, 1),
                                     Cyclo(-3), Cyclo::root_of_unity(3, 2)};
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Cyclo> alpha(6, Cyclo::zero());
        Cyclo sum = Cyclo::zero();
        for (std::size_t i = 0; i + 1 < 6; ++i) {
            alpha[i] = pool[pick(rng)];
            sum += alpha[i];
        }
        alpha[5] = -sum;
        const std::size_t h = os::aomoto_h1(f.os2, alpha);
        std::vector<Cyclo> scaled;
        const Cyclo c = Cyclo(3) * Cyclo::root_of_unity(6, 1);
        for (const Cyclo& a : alpha) scaled.push_back(a * c);
        CHECK(os::aomoto_h1(f.os2, scaled) == h);
        for (const Cyclo& x : os::cup(f.os2, alpha, alpha)) CHECK(x.is_zero());
    }
}

TEST_CASE("resonance census of the braid arrangement") {
    auto f = fixture("A3");
    const auto nets = reduced_nets(f, 3);
    REQUIRE(nets.size() == 1);
    const auto comps = os::resonance_components(f.arr, f.lat, nets);
    REQUIRE(comps.size() == 5);
    std::size_t locals = 0, multis = 0;
    for (const auto& c : comps) {
        CHECK(c.dimension == 2);
        CHECK(c.defined_over == 1);
        if (c.provenance == os::ResonanceComponent::Provenance::local_point)
            ++locals;
        else
            ++multis;
    }
    CHECK(locals == 4);
    CHECK(multis == 1);
}

TEST_CASE("sampled brute-force classification agrees with the census") {
    auto f = fixture("A3");
    const auto comps = os::resonance_components(f.arr, f.lat, reduced_nets(f, 3));
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> pick(0, 6);
    std::uniform_int_distribution<int> comp_pick(0, static_cast<int>(comps.size()) - 1);
    const std::vector<Cyclo> pool = {Cyclo(0),  Cyclo(1), Cyclo(-1),          Cyclo(2),
                                     Cyclo(-2), Cyclo(3), Cyclo::root_of_unity(6, 1)};
    int inside_seen = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Cyclo> alpha(6, Cyclo::zero());
        if (trial % 2 == 0) {
            Cyclo sum = Cyclo::zero();
            for (std::size_t i = 0; i + 1 < 6; ++i) {
                alpha[i] = pool[pick(rng)];
                sum += alpha[i];
            }
            alpha[5] = -sum;
        } else {
            const auto& span = comps[comp_pick(rng)].span;
            for (const auto& v : span) {
                const Cyclo c = pool[pick(rng)];
                for (std::size_t i = 0; i < 6; ++i) alpha[i] += c * v[i];
            }
        }
        bool zero = true;
        for (const Cyclo& a : alpha)
            if (!a.is_zero()) zero = false;
        if (zero) continue;
        const bool resonant = os::aomoto_h1(f.os2, alpha) >= 1;
        const bool member = in_some_component(comps, alpha);
        CHECK(resonant == member);
        if (member) ++inside_seen;
    }
    CHECK(inside_seen > 100); // the sampler genuinely exercises both sides
}

TEST_CASE("generic four lines have empty first resonance") {
    auto arr = geom::make_arrangement("generic4", 1,
                                      {{Cyclo(1), Cyclo(0), Cyclo(0)},
                                       {Cyclo(0), Cyclo(1), Cyclo(0)},
                                       {Cyclo(0), Cyclo(0), Cyclo(1)},
                                       {Cyclo(1), Cyclo(1), Cyclo(1)}});
    auto lat = geom::intersection_lattice(arr);
    for (const auto& fp : lat.points) CHECK(fp.multiplicity() == 2);
    net::EnumerationOptions opts;
    opts.reduced_only = false;
    opts.max_mu = 3;
    const auto nets = net::enumerate_multinets(arr, lat, 3, opts);
    CHECK(nets.exhaustive);
    CHECK(nets.found.empty());
    CHECK(os::resonance_components(arr, lat, nets.found).empty());
}

TEST_CASE("resonance census of the Hesse arrangement") {
    auto f = fixture("Hesse");
    CHECK(reduced_nets(f, 3).empty());
    const auto nets4 = reduced_nets(f, 4);
    REQUIRE(nets4.size() == 1);
    CHECK(nets4[0].e == 3);
    const auto comps = os::resonance_components(f.arr, f.lat, nets4);
    REQUIRE(comps.size() == 10);
    std::size_t locals = 0;
    for (const auto& c : comps) {
        CHECK(c.dimension == 3);
        if (c.provenance == os::ResonanceComponent::Provenance::local_point) ++locals;
    }
    CHECK(locals == 9);
    CHECK(comps.back().provenance == os::ResonanceComponent::Provenance::multinet);
}

TEST_CASE("pencil sub-multinets dedupe into local components") {
    auto f = fixture("A3");
    // three concurrent lines at (0:0:1) as singleton classes
    std::vector<unsigned> mu(6, 0);
    mu[0] = mu[1] = mu[3] = 1;
    const auto pencil = net::validate_multinet(f.arr, f.lat, {{0}, {1}, {3}}, mu);
    auto nets = reduced_nets(f, 3);
    nets.push_back(pencil);
    const auto comps = os::resonance_components(f.arr, f.lat, nets);
    CHECK(comps.size() == 5); // the sub-pencil span equals the local component
    std::size_t locals = 0;
    for (const auto& c : comps)
        if (c.provenance == os::ResonanceComponent::Provenance::local_point) ++locals;
    CHECK(locals == 4);
}

TEST_CASE("torsion points of a local component") {
    auto f = fixture("A3");
    const auto comps = os::resonance_components(f.arr, f.lat, {});
    REQUIRE(comps.size() == 4);
    // comps[0] is the point (0:0:1) on lines {0,1,3}
    const auto& c0 = comps[0];
    CHECK(f.lat.points[c0.point].lines == std::vector<std::size_t>{0, 1, 3});

    CHECK(os::torsion_points(c0, 1).empty());
    const auto chars = os::torsion_points(c0, 3);
    REQUIRE(chars.size() == 8);
    bool equal_cube_roots = false;
    for (const auto& chi : chars) {
        CHECK(chi.order == 3);
        CHECK_NOTHROW(validate_character(chi));
        CHECK(chi.exponents[2] == 0);
        CHECK(chi.exponents[4] == 0);
        CHECK(chi.exponents[5] == 0);
        if (chi.exponents == std::vector<long>{1, 1, 0, 1, 0, 0}) equal_cube_roots = true;
    }
    CHECK(equal_cube_roots); // (zeta_3, zeta_3, zeta_3) on the incident lines
}

TEST_CASE("torsion points of the net component include the constant character") {
    auto f = fixture("A3");
    const auto comps = os::resonance_components(f.arr, f.lat, reduced_nets(f, 3));
    const auto& net_comp = comps.back();
    REQUIRE(net_comp.provenance == os::ResonanceComponent::Provenance::multinet);
    const auto chars = os::torsion_points(net_comp, 3);
    CHECK(chars.size() == 8);
    bool constant = false;
    for (const auto& chi : chars)
        if (chi.exponents == std::vector<long>{1, 1, 1, 1, 1, 1}) constant = true;
    CHECK(constant);
}

TEST_CASE("irrational spans are rejected for torsion enumeration") {
    os::ResonanceComponent c;
    c.dimension = 1;
    std::vector<Cyclo> v(3, Cyclo::zero());
    v[0] = Cyclo::root_of_unity(3, 1);
    v[1] = -Cyclo::root_of_unity(3, 1);
    c.span.push_back(v);
    CHECK_THROWS_AS(os::torsion_points(c, 3), irrational_span);
}

TEST_CASE("emitted components are cup isotropic") {
    auto f = fixture("A3");
    const auto comps = os::resonance_components(f.arr, f.lat, reduced_nets(f, 3));
    for (const auto& c : comps)
        for (const auto& u : c.span)
            for (const auto& v : c.span)
                for (const Cyclo& x : os::cup(f.os2, u, v)) CHECK(x.is_zero());
}
