#pragma once

#include <cstddef>
#include <vector>

#include "arran/character.hpp"
#include "arran/cyclo.hpp"
#include "arran/presentation.hpp"

namespace arran::cover {

// Epimorphism onto Z/modulus given by the images of the generators. Throws
// not_surjective when the images fail to generate.
struct CyclicEpi {
    unsigned modulus = 1;
    std::vector<long> images; // one per generator
};

struct Abelianization {
    std::size_t rank = 0;
    std::vector<exact::Integer> torsion; // invariant factors > 1
};

// Smith normal form of the abelianized relation matrix.
Abelianization abelianization(const GroupPresentation& pres);

// Reidemeister-Schreier presentation of ker(epi), with a Schreier
// transversal of coset representatives built breadth-first over
// {0, ..., modulus-1}. Generator count g*modulus - (modulus-1), relator
// count r*modulus; meridian words are not carried over.
GroupPresentation subgroup_presentation(const GroupPresentation& pres, const CyclicEpi& epi);

// Values of the restriction of chi to ker(epi) on the generators of
// subgroup_presentation(pres, epi), in matching order.
std::vector<exact::Cyclo> restrict_character(const GroupPresentation& pres, const CyclicEpi& epi,
                                             const Character& chi);

struct PullbackCheck {
    std::size_t dim_base = 0;  // dim H^1 downstairs at chi
    std::size_t dim_cover = 0; // dim H^1 upstairs at the restricted character
    bool ok = false;           // dim_base <= dim_cover
};

// Deck-group action on H_1 of the cyclic cover over Q.
struct CoverMonodromy {
    bool trivial = true; // no nontrivial deck character contributes
    // character_dims[a] = eigenspace dimension at zeta_modulus^a; the sum
    // over a equals the rank of the cover's abelianization.
    std::vector<std::size_t> character_dims;
    std::vector<PullbackCheck> pullback_checks; // one per supplied character
};

CoverMonodromy cover_monodromy(const GroupPresentation& pres, const CyclicEpi& epi,
                               const std::vector<Character>& chis = {});

} // namespace arran::cover
