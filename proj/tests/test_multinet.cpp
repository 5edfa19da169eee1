#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "arran/catalog.hpp"
#include "arran/errors.hpp"
#include "arran/multinet.hpp"

using namespace arran;
using exact::Cyclo;

namespace {

struct Fixture {
    geom::Arrangement arr;
    geom::Lattice lat;
};

Fixture fixture(const std::string& name) {
    Fixture f;
    f.arr = geom::builtin(name);
    f.lat = geom::intersection_lattice(f.arr);
    return f;
}

net::Multinet catalog_net(const Fixture& f, const std::string& name, std::size_t which = 0) {
    const auto cat = geom::catalog_multinets(name);
    REQUIRE(cat.size() > which);
    return net::validate_multinet(f.arr, f.lat, cat[which].classes, cat[which].mu, "catalog");
}

std::string failing_axiom(const Fixture& f, const std::vector<std::vector<std::size_t>>& classes,
                          const std::vector<unsigned>& mu) {
    try {
        net::validate_multinet(f.arr, f.lat, classes, mu);
    } catch (const axiom_violation& e) {
        return e.axiom;
    }
    return "none";
}

// independent degree-4 expansion helper for the diagonal pencil identities
std::vector<Cyclo> quartic(std::initializer_list<std::pair<std::array<unsigned, 2>, long>> terms) {
    std::vector<Cyclo> out(15, Cyclo::zero());
    for (const auto& [ab, c] : terms) out[net::monomial_index(ab[0], ab[1], 4)] = Cyclo(c);
    return out;
}

} // namespace

TEST_CASE("the braid 3-net validates") {
    auto f = fixture("A3");
    const auto mn = catalog_net(f, "A3");
    CHECK(mn.k() == 3);
    CHECK(mn.e == 2);
    CHECK(mn.reduced);
    CHECK(mn.support.size() == 6);
    CHECK(mn.classes == std::vector<std::vector<std::size_t>>{{0, 4}, {1, 5}, {2, 3}});
    REQUIRE(mn.base_points.size() == 4);
    for (const auto& bp : mn.base_points) {
        CHECK(bp.n == 1);
        CHECK(f.lat.points[bp.point].multiplicity() == 3);
    }
}

TEST_CASE("the B3 quadric multinet validates") {
    auto f = fixture("B3");
    const auto mn = catalog_net(f, "B3");
    CHECK(mn.k() == 3);
    CHECK(mn.e == 4);
    CHECK_FALSE(mn.reduced);
    CHECK(mn.mu[0] == 2);
    CHECK(mn.mu[1] == 2);
    CHECK(mn.mu[2] == 2);
    std::size_t n1 = 0, n2 = 0;
    for (const auto& bp : mn.base_points) {
        if (bp.n == 1) ++n1;
        if (bp.n == 2) ++n2;
        CHECK(f.lat.points[bp.point].multiplicity() == (bp.n == 2 ? 4 : 3));
    }
    CHECK(n1 == 4); // the four triple points
    CHECK(n2 == 3); // the three coordinate vertices
}

TEST_CASE("axiom violations carry the axiom name") {
    auto f = fixture("A3");
    const std::vector<unsigned> ones(6, 1);
    CHECK(failing_axiom(f, {{0}, {1, 2}, {3, 4, 5}}, ones) == "M1");
    CHECK(failing_axiom(f, {{0, 1}, {2, 3}, {4, 5}}, ones) == "M2");

    // balanced and point-balanced but one class falls apart off the base locus
    auto h = fixture("Hesse");
    std::vector<unsigned> mu(12, 1);
    for (std::size_t i = 6; i < 12; ++i) mu[i] = 2;
    CHECK(failing_axiom(h, {{0, 1, 2, 3, 4, 5}, {6, 7, 8}, {9, 10, 11}}, mu) == "M4");
}

TEST_CASE("validate rejects malformed partitions") {
    auto f = fixture("A3");
    const std::vector<unsigned> ones(6, 1);
    std::vector<unsigned> partial(6, 0);
    partial[0] = partial[1] = partial[2] = 1;
    CHECK_THROWS_AS(net::validate_multinet(f.arr, f.lat, {{0, 4}, {1, 5}}, ones), input_error);
    CHECK_THROWS_AS(net::validate_multinet(f.arr, f.lat, {{0, 4}, {1, 5}, {}}, ones), input_error);
    CHECK_THROWS_AS(net::validate_multinet(f.arr, f.lat, {{0, 4}, {0, 5}, {2, 3}}, ones),
                    input_error);
    CHECK_THROWS_AS(net::validate_multinet(f.arr, f.lat, {{0, 4}, {1, 5}, {2, 3}}, partial),
                    input_error);
    CHECK_THROWS_AS(net::validate_multinet(f.arr, f.lat, {{0}, {1}, {2}}, ones), input_error);
}

TEST_CASE("enumeration finds the braid net and nothing else") {
    auto f = fixture("A3");
    net::EnumerationOptions opts;
    const auto res = net::enumerate_multinets(f.arr, f.lat, 3, opts);
    CHECK(res.exhaustive);
    REQUIRE(res.found.size() == 1);
    const auto cat = catalog_net(f, "A3");
    CHECK(res.found[0].classes == cat.classes);
    CHECK(res.found[0].mu == cat.mu);
    CHECK(res.found[0].e == 2);
    CHECK(res.found[0].source == "enumerated");

    opts.reduced_only = false;
    opts.max_mu = 4;
    const auto loose = net::enumerate_multinets(f.arr, f.lat, 3, opts);
    CHECK(loose.exhaustive);
    REQUIRE(loose.found.size() == 1); // weights are forced back to 1
    CHECK(loose.found[0].reduced);
}

TEST_CASE("B3 has no reduced 3-multinet but a unique non-reduced one") {
    auto f = fixture("B3");
    net::EnumerationOptions opts;
    CHECK(net::enumerate_multinets(f.arr, f.lat, 3, opts).found.empty());

    opts.reduced_only = false;
    opts.max_mu = 4;
    const auto res = net::enumerate_multinets(f.arr, f.lat, 3, opts);
    CHECK(res.exhaustive);
    REQUIRE(res.found.size() == 1);
    const auto cat = catalog_net(f, "B3");
    CHECK(res.found[0].classes == cat.classes);
    CHECK(res.found[0].mu == cat.mu);
    CHECK(res.found[0].e == 4);
}

TEST_CASE("the Hesse 4-net is found and is the only multinet there") {
    auto f = fixture("Hesse");
    net::EnumerationOptions opts;
    const auto res = net::enumerate_multinets(f.arr, f.lat, 4, opts);
    CHECK(res.exhaustive);
    REQUIRE(res.found.size() == 1);
    CHECK(res.found[0].e == 3);
    CHECK(res.found[0].reduced);
    CHECK(res.found[0].classes ==
          std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});

    opts.reduced_only = false;
    opts.max_mu = 2;
    CHECK(net::enumerate_multinets(f.arr, f.lat, 4, opts).found.size() == 1);
    CHECK(net::enumerate_multinets(f.arr, f.lat, 3, opts).found.empty());
}

TEST_CASE("subarrangement sweep recovers the local pencils") {
    auto f = fixture("A3");
    net::EnumerationOptions opts;
    opts.max_support = 3;
    const auto res = net::enumerate_multinets(f.arr, f.lat, 3, opts);
    CHECK(res.exhaustive);
    CHECK(res.found.size() == 4); // one pencil per triple point
    for (const auto& mn : res.found) {
        CHECK(mn.support.size() == 3);
        CHECK(mn.e == 1);
        CHECK(mn.base_points.size() == 1);
    }
    opts.max_support = 6;
    CHECK(net::enumerate_multinets(f.arr, f.lat, 3, opts).found.size() == 5);
}

TEST_CASE("a zero budget is reported as non-exhaustive") {
    auto f = fixture("B3");
    net::EnumerationOptions opts;
    opts.reduced_only = false;
    opts.budget_ms = 0;
    const auto res = net::enumerate_multinets(f.arr, f.lat, 3, opts);
    CHECK_FALSE(res.exhaustive);
}

TEST_CASE("the braid pencil realizes with the expected collinearity") {
    auto f = fixture("A3");
    const auto mn = catalog_net(f, "A3");
    const auto pr = net::realize_pencil(f.arr, mn);
    CHECK(pr.degree == 2);
    REQUIRE(pr.q.size() == 3);
    REQUIRE(pr.q[0].size() == 6);
    // Q1 = x(y-z), Q2 = y(x-z), Q3 = z(x-y) = Q2 - Q1
    CHECK(pr.collinearity[2].first == Cyclo(-1));
    CHECK(pr.collinearity[2].second == Cyclo(1));
    for (std::size_t m = 0; m < 6; ++m) CHECK(pr.q[0][m] + pr.q[2][m] == pr.q[1][m]);
}

TEST_CASE("the B3 pencil identity holds exactly") {
    auto f = fixture("B3");
    const auto pr = net::realize_pencil(f.arr, catalog_net(f, "B3"));
    CHECK(pr.degree == 4);
    const auto h1 = quartic({{{2, 2}, 1}, {{2, 0}, -1}}); // x^2(y^2 - z^2)
    const auto h2 = quartic({{{0, 2}, 1}, {{2, 2}, -1}}); // y^2(z^2 - x^2)
    const auto h3 = quartic({{{2, 0}, 1}, {{0, 2}, -1}}); // z^2(x^2 - y^2)
    REQUIRE(pr.q[0].size() == 15);
    for (std::size_t m = 0; m < 15; ++m) {
        CHECK(pr.q[0][m] == h1[m]);
        CHECK(pr.q[1][m] == -h2[m]);
        CHECK(pr.q[2][m] == h3[m]);
        CHECK((h1[m] + h2[m] + h3[m]).is_zero());
    }
}

TEST_CASE("the diagonal Ceva pencils realize for r up to 4") {
    for (unsigned r = 1; r <= 4; ++r) {
        auto f = fixture("ExtCeva(" + std::to_string(r) + ")");
        const auto mn = catalog_net(f, "ExtCeva(" + std::to_string(r) + ")");
        CHECK(mn.e == 2 * r);
        CHECK(mn.reduced == (r == 1));
        const auto pr = net::realize_pencil(f.arr, mn);
        // Q1 = x^r(y^r - z^r), Q2 = y^r(x^r - z^r), Q3 = z^r(x^r - y^r)
        for (std::size_t m = 0; m < pr.q[0].size(); ++m)
            CHECK(pr.q[0][m] + pr.q[2][m] == pr.q[1][m]);
        const auto xryr = net::monomial_index(r, r, 2 * r);
        const auto xrzr = net::monomial_index(r, 0, 2 * r);
        CHECK(pr.q[0][xryr] == Cyclo(1));
        CHECK(pr.q[0][xrzr] == Cyclo(-1));
    }
}

TEST_CASE("span dimension is invariant under line rescaling") {
    auto f = fixture("B3");
    const auto mn = catalog_net(f, "B3");
    std::mt19937 rng(5);
    const std::vector<Cyclo> scales = {Cyclo(2), Cyclo(-1), Cyclo(exact::Rational(1, 3)),
                                       Cyclo(5), Cyclo(-7)};
    std::uniform_int_distribution<int> pick(0, static_cast<int>(scales.size()) - 1);
    for (int trial = 0; trial < 20; ++trial) {
        auto scaled = f.arr;
        for (auto& line : scaled.lines) {
            const Cyclo c = scales[pick(rng)];
            for (auto& a : line.a) a *= c;
        }
        const auto pr = net::realize_pencil(scaled, mn);
        CHECK(pr.q.size() == 3); // realize_pencil throws span_not_two otherwise
    }
}

TEST_CASE("a broken partition surfaces as span_not_two") {
    auto f = fixture("A3");
    net::Multinet fake;
    fake.support = {0, 1, 2, 3, 4, 5};
    fake.classes = {{0, 3}, {1, 4}, {2, 5}};
    fake.mu.assign(6, 1);
    fake.e = 2;
    fake.reduced = true;
    CHECK_THROWS_AS(net::realize_pencil(f.arr, fake), span_not_two);
}

TEST_CASE("monodromy lower bounds") {
    auto a3 = fixture("A3");
    const auto a3_bounds = net::monodromy_lower_bounds(catalog_net(a3, "A3"), 6);
    REQUIRE(a3_bounds.size() == 2);
    CHECK(a3_bounds[0].order == 3);
    CHECK(a3_bounds[0].exponent == 1);
    CHECK(a3_bounds[0].dim_lower == 1);
    CHECK(a3_bounds[1].order == 3);
    CHECK(a3_bounds[1].exponent == 2);
    CHECK(a3_bounds[1].dim_lower == 1);

    auto b3 = fixture("B3");
    CHECK(net::monodromy_lower_bounds(catalog_net(b3, "B3"), 9).empty());

    auto hesse = fixture("Hesse");
    const auto h_bounds = net::monodromy_lower_bounds(catalog_net(hesse, "Hesse"), 12);
    REQUIRE(h_bounds.size() == 3);
    CHECK(h_bounds[0].order == 2);
    CHECK(h_bounds[0].exponent == 1);
    CHECK(h_bounds[1].order == 4);
    CHECK(h_bounds[1].exponent == 1);
    CHECK(h_bounds[2].order == 4);
    CHECK(h_bounds[2].exponent == 3);
    for (const auto& b : h_bounds) CHECK(b.dim_lower == 2);

    // r = 1 mod 3 rule for the diagonal pencils
    auto c4 = fixture("ExtCeva(4)");
    const auto c4_bounds = net::monodromy_lower_bounds(catalog_net(c4, "ExtCeva(4)"), 15);
    REQUIRE(c4_bounds.size() == 2);
    CHECK(c4_bounds[0].order == 3);
    CHECK(c4_bounds[0].dim_lower == 1);
    CHECK(c4_bounds[1].order == 3);
    auto c2 = fixture("ExtCeva(2)");
    CHECK(net::monodromy_lower_bounds(catalog_net(c2, "ExtCeva(2)"), 9).empty());
    auto c3 = fixture("ExtCeva(3)");
    CHECK(net::monodromy_lower_bounds(catalog_net(c3, "ExtCeva(3)"), 12).empty());

    // sub-support pencils pull back trivially and emit nothing
    auto f = fixture("A3");
    std::vector<unsigned> mu(6, 0);
    mu[0] = mu[1] = mu[3] = 1;
    const auto pencil = net::validate_multinet(f.arr, f.lat, {{0}, {1}, {3}}, mu);
    CHECK(net::monodromy_lower_bounds(pencil, 6).empty());
}

TEST_CASE("certificates for reduced multinets") {
    auto a3 = fixture("A3");
    const auto mn = catalog_net(a3, "A3");
    const auto pr = net::realize_pencil(a3.arr, mn);
    const auto cert =
        net::nontriviality_certificate(mn, pr, net::monodromy_lower_bounds(mn, 6));
    CHECK(cert.nontrivial);
    CHECK(cert.k == 3);
    CHECK(cert.dim_isotropic == 2);
    CHECK(cert.dim_cover_lower == 4);
    CHECK(cert.bounds.size() == 2);
    CHECK(cert.notes.find("not rational") != std::string::npos);

    auto hesse = fixture("Hesse");
    const auto hn = catalog_net(hesse, "Hesse");
    const auto hcert = net::nontriviality_certificate(
        hn, net::realize_pencil(hesse.arr, hn), net::monodromy_lower_bounds(hn, 12));
    CHECK(hcert.k == 4);
    CHECK(hcert.dim_isotropic == 3);
    CHECK(hcert.dim_cover_lower == 9);
    CHECK(hcert.bounds.size() == 3);

    auto b3 = fixture("B3");
    const auto bn = catalog_net(b3, "B3");
    CHECK_THROWS_AS(
        net::nontriviality_certificate(bn, net::realize_pencil(b3.arr, bn), {}),
        not_reduced);
}

TEST_CASE("direction counts") {
    auto a3 = fixture("A3");
    const auto dc = net::direction_count(catalog_net(a3, "A3"));
    CHECK(dc.m == std::vector<unsigned>{1, 1, 1});
    CHECK(dc.n == 1);

    auto b3 = fixture("B3");
    const auto db = net::direction_count(catalog_net(b3, "B3"));
    CHECK(db.m == std::vector<unsigned>{1, 1, 1}); // gcd(2,1,1) per class
    CHECK(db.n == 1);

    net::Multinet synthetic;
    synthetic.classes = {{0}, {1}, {2}};
    synthetic.mu = {2, 1, 1};
    synthetic.support = {0, 1, 2};
    const auto ds = net::direction_count(synthetic);
    CHECK(ds.m == std::vector<unsigned>{2, 1, 1});
    CHECK(ds.n == 2);
}

TEST_CASE("Euler characteristics of the Stein factorization") {
    CHECK(net::stein_chi({1, 7, {}}) == std::pair<long, long>{7, 7});
    CHECK(net::stein_chi({2, -1, {1}}) == std::pair<long, long>{-3, -2});
    CHECK(net::stein_chi({3, -2, {0, 0}}) == std::pair<long, long>{-6, -2});

    CHECK_THROWS_AS(net::stein_chi({2, 0, {}}), input_error);
    CHECK_THROWS_AS(net::stein_chi({2, 0, {-1}}), input_error);

    std::mt19937 rng(11);
    std::uniform_int_distribution<unsigned> epick(1, 6);
    std::uniform_int_distribution<long> cpick(-50, 50);
    std::uniform_int_distribution<long> spick(0, 20);
    for (int trial = 0; trial < 10000; ++trial) {
        net::SteinData sd;
        sd.e = epick(rng);
        sd.chi_s = cpick(rng);
        for (unsigned k = 1; k < sd.e; ++k) sd.s.push_back(spick(rng));
        const auto [chi_prime, chi_e] = net::stein_chi(sd); // asserts (chi1) == (chi2)
        long expect = static_cast<long>(sd.e) * sd.chi_s;
        for (std::size_t t = 0; t < sd.s.size(); ++t)
            expect += (static_cast<long>(t) + 1 - static_cast<long>(sd.e)) * sd.s[t];
        CHECK(chi_prime == expect);
        CHECK(chi_e <= sd.chi_s);
        if (sd.chi_s < 0) CHECK(chi_prime < 0);
    }
}
