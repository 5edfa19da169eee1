#include "arran/catalog.hpp"

#include <cstdlib>

#include "arran/errors.hpp"

namespace arran::geom {

namespace {

std::array<Cyclo, 3> rational_line(long a, long b, long c) {
    return {Cyclo(a), Cyclo(b), Cyclo(c)};
}

Arrangement build_a3() {
    return make_arrangement("A3", 1,
                            {rational_line(1, 0, 0), rational_line(0, 1, 0), rational_line(0, 0, 1),
                             rational_line(1, -1, 0), rational_line(0, 1, -1), rational_line(1, 0, -1)});
}

Arrangement build_b3() {
    return make_arrangement("B3", 1,
                            {rational_line(1, 0, 0), rational_line(0, 1, 0), rational_line(0, 0, 1),
                             rational_line(1, -1, 0), rational_line(1, 1, 0), rational_line(0, 1, -1),
                             rational_line(0, 1, 1), rational_line(1, 0, -1), rational_line(1, 0, 1)});
}

// Classical construction: A=(0:0:1), B=(1:0:1), C=(3:0:1) on y=0 and
// A'=(0:1:1), B'=(2:1:1), C'=(5:1:1) on y=z; the six cross-joins meet in
// three collinear points whose axis is the ninth line.
Arrangement build_pappus() {
    return make_arrangement("Pappus", 1,
                            {rational_line(0, 1, 0),    // ABC
                             rational_line(0, 1, -1),   // A'B'C'
                             rational_line(1, -29, 9),  // axis XYZ
                             rational_line(1, -2, 0),   // AB'
                             rational_line(1, 1, -1),   // A'B
                             rational_line(1, -5, 0),   // AC'
                             rational_line(1, 3, -3),   // A'C
                             rational_line(1, -4, -1),  // BC'
                             rational_line(1, 1, -3)}); // B'C
}

Arrangement build_hesse() {
    std::vector<std::array<Cyclo, 3>> raw = {rational_line(1, 0, 0), rational_line(0, 1, 0),
                                             rational_line(0, 0, 1)};
    // completely reducible fibers x^3+y^3+z^3 - 3*lambda*xyz, lambda^3 = 1:
    // each contributes the three lines x + zeta^i y + zeta^j z with i+j = const.
    const int fiber_pairs[3][3][2] = {{{0, 0}, {1, 2}, {2, 1}},  // lambda = 1
                                      {{0, 1}, {1, 0}, {2, 2}},  // lambda = zeta
                                      {{0, 2}, {1, 1}, {2, 0}}}; // lambda = zeta^2
    for (const auto& fiber : fiber_pairs)
        for (const auto& ij : fiber)
            raw.push_back({Cyclo::one(), Cyclo::root_of_unity(3, ij[0]), Cyclo::root_of_unity(3, ij[1])});
    return make_arrangement("Hesse", 3, raw);
}

Arrangement build_ext_ceva(unsigned r) {
    if (r == 0) throw input_error("ExtCeva parameter must be positive");
    std::vector<std::array<Cyclo, 3>> raw = {rational_line(1, 0, 0), rational_line(0, 1, 0),
                                             rational_line(0, 0, 1)};
    for (unsigned k = 0; k < r; ++k)
        raw.push_back({Cyclo::one(), -Cyclo::root_of_unity(r, static_cast<long>(k)), Cyclo::zero()});
    for (unsigned k = 0; k < r; ++k)
        raw.push_back({Cyclo::zero(), Cyclo::one(), -Cyclo::root_of_unity(r, static_cast<long>(k))});
    for (unsigned k = 0; k < r; ++k)
        raw.push_back({-Cyclo::root_of_unity(r, static_cast<long>(k)), Cyclo::zero(), Cyclo::one()});
    return make_arrangement("ExtCeva(" + std::to_string(r) + ")", r == 1 ? 1 : r, raw);
}

bool parse_ext_ceva(const std::string& name, unsigned& r) {
    const std::string prefix = "ExtCeva(";
    if (name.size() < prefix.size() + 2 || name.compare(0, prefix.size(), prefix) != 0 ||
        name.back() != ')')
        return false;
    std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    if (digits.empty()) return false;
    for (char c : digits)
        if (!isdigit(static_cast<unsigned char>(c))) return false;
    long v = std::strtol(digits.c_str(), nullptr, 10);
    if (v <= 0 || v > 12) throw input_error("ExtCeva parameter out of supported range 1..12");
    r = static_cast<unsigned>(v);
    return true;
}

} // namespace

Arrangement builtin(const std::string& name) {
    if (name == "A3") return build_a3();
    if (name == "B3") return build_b3();
    if (name == "Pappus") return build_pappus();
    if (name == "Hesse") return build_hesse();
    unsigned r = 0;
    if (parse_ext_ceva(name, r)) return build_ext_ceva(r);
    throw input_error("unknown builtin arrangement: " + name);
}

std::vector<CatalogNet> catalog_multinets(const std::string& name) {
    std::vector<CatalogNet> nets;
    if (name == "A3") {
        // the 3-net matching the pencil (x(y-z), y(x-z)): classes pair each
        // coordinate line with the opposite difference line
        nets.push_back(CatalogNet{{{0, 4}, {1, 5}, {2, 3}}, {1, 1, 1, 1, 1, 1}});
    } else if (name == "B3") {
        // non-reduced: Q1 = x^2(y^2-z^2), Q2 = y^2(z^2-x^2), Q3 = z^2(x^2-y^2)
        nets.push_back(CatalogNet{{{0, 5, 6}, {1, 7, 8}, {2, 3, 4}}, {2, 2, 2, 1, 1, 1, 1, 1, 1}});
    } else if (name == "Hesse") {
        // the four completely reducible fibers
        nets.push_back(CatalogNet{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}},
                                  std::vector<unsigned>(12, 1)});
    } else {
        unsigned r = 0;
        if (parse_ext_ceva(name, r)) {
            // Q1 = x^r(y^r-z^r), Q2 = y^r(z^r-x^r), Q3 = z^r(x^r-y^r)
            std::vector<std::vector<std::size_t>> classes(3);
            classes[0].push_back(0);
            classes[1].push_back(1);
            classes[2].push_back(2);
            std::vector<unsigned> mu(3 + 3 * r, 1);
            mu[0] = mu[1] = mu[2] = r;
            for (unsigned k = 0; k < r; ++k) {
                classes[2].push_back(3 + k);          // x - zeta^k y
                classes[0].push_back(3 + r + k);      // y - zeta^k z
                classes[1].push_back(3 + 2 * r + k);  // z - zeta^k x
            }
            nets.push_back(CatalogNet{std::move(classes), std::move(mu)});
        }
    }
    return nets;
}

} // namespace arran::geom
