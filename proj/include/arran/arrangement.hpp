#pragma once

#include <array>
#include <string>
#include <vector>

#include "arran/matrix.hpp"

namespace arran::geom {

using exact::Cyclo;
using exact::Rational;

// Projective line in P^2, held in normalized form: the first nonzero
// coefficient equals 1.
struct ProjLine {
    std::array<Cyclo, 3> a;

    friend bool operator==(const ProjLine& x, const ProjLine& y) { return x.a == y.a; }
};

// Normalizes a coefficient triple; throws input_error on the zero triple.
ProjLine make_line(const Cyclo& a0, const Cyclo& a1, const Cyclo& a2);

std::array<Cyclo, 3> normalize_point(const std::array<Cyclo, 3>& p);

struct Arrangement {
    std::string name;
    unsigned cyclotomic_order = 1;
    std::vector<ProjLine> lines;

    std::size_t size() const { return lines.size(); }
};

// Builds an arrangement, normalizing each triple; a zero triple raises
// zero_form with its index. Does not check for duplicates (validate does).
Arrangement make_arrangement(std::string name, unsigned order,
                             const std::vector<std::array<Cyclo, 3>>& raw);

// Duplicate lines (after normalization) raise duplicate_line; empty
// arrangements raise input_error. A single line is valid.
void validate_arrangement(const Arrangement& arr);

struct FlatPoint {
    std::array<Cyclo, 3> point;      // normalized homogeneous coordinates
    std::vector<std::size_t> lines;  // incident line indices, ascending

    std::size_t multiplicity() const { return lines.size(); }
};

struct Lattice {
    std::vector<FlatPoint> points; // sorted lexicographically by coordinates
};

// All pairwise intersection points grouped into flat points. Enforces the
// counting identity sum_X C(m_X,2) = C(d,2).
Lattice intersection_lattice(const Arrangement& arr);

// Restriction to a subset of lines (indices ascending); names the result
// after the parent.
Arrangement subarrangement(const Arrangement& arr, const std::vector<std::size_t>& idx);

bool lex_less_point(const std::array<Cyclo, 3>& p, const std::array<Cyclo, 3>& q);

} // namespace arran::geom
