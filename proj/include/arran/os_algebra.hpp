#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arran/arrangement.hpp"
#include "arran/character.hpp"
#include "arran/cyclo.hpp"
#include "arran/multinet.hpp"

namespace arran::os {

using exact::Cyclo;
using geom::Arrangement;
using geom::Lattice;

// Degree <= 2 slice of the (central) Orlik-Solomon algebra. The degree-2
// basis takes, at each intersection point, the products e_{i1} e_{it} where
// i1 is the least incident line index; for i < j meeting at a point with
// anchor a the product expands as e_i e_j = e_a e_j - e_a e_i.
struct OS2 {
    std::size_t d = 0;                                         // dim A^1
    std::vector<std::pair<std::size_t, std::size_t>> basis;    // (point index, line index != anchor)
    std::vector<std::vector<std::size_t>> point_of_pair;       // d x d: lattice point through i, j
    std::vector<std::size_t> anchor;                           // per point: least incident line
    std::vector<std::vector<std::size_t>> basis_index;         // per point: line -> basis position

    std::size_t dim_a2() const { return basis.size(); }
};

OS2 os2_structure(const Arrangement& arr, const Lattice& lattice);

// Expansion of e_i e_j in the degree-2 basis; antisymmetric in (i, j).
// Each entry is (basis position, +1/-1 coefficient).
std::vector<std::pair<std::size_t, int>> os2_product(const OS2& os2, std::size_t i, std::size_t j);

// Cup product of two degree-1 elements, as a dense vector over the
// degree-2 basis.
std::vector<Cyclo> cup(const OS2& os2, const std::vector<Cyclo>& u, const std::vector<Cyclo>& v);

// dim H^1 of the Aomoto complex (A^<=2, mu_alpha) through the projective
// reduction: d-1 for alpha = 0, else dim ker(mu_alpha: A^1 -> A^2) - 1.
// Requires sum(alpha) = 0 (sigma_non_zero otherwise).
std::size_t aomoto_h1(const OS2& os2, const std::vector<Cyclo>& alpha);

struct ResonanceComponent {
    enum class Provenance { local_point, multinet };

    std::vector<std::vector<Cyclo>> span; // linearly independent, each sums to 0
    std::size_t dimension = 0;
    Provenance provenance = Provenance::local_point;
    std::size_t point = 0;       // lattice point index when local
    std::size_t multinet = 0;    // index into the supplied multinet list otherwise
    unsigned defined_over = 1;   // cyclotomic order of the span coordinates
};

// First resonance variety components: one local component per point of
// multiplicity >= 3, one per multinet (spanned by the weighted class
// differences), with duplicates and containments removed (local provenance
// wins ties). Every emitted span is cup-isotropic and every spanning vector
// has aomoto_h1 >= 1; violations raise consistency_failure.
std::vector<ResonanceComponent> resonance_components(const Arrangement& arr,
                                                     const Lattice& lattice,
                                                     const std::vector<net::Multinet>& multinets);

// Characters exp(2 pi i a) for a in the component's span with coordinates in
// (1/N)Z: all tuples of N-th roots of unity with product 1 obtained from the
// saturated integer lattice of the span, trivial character excluded,
// canonically sorted. Requires a rational span (irrational_span otherwise).
std::vector<Character> torsion_points(const ResonanceComponent& component, unsigned order);

} // namespace arran::os
