#pragma once

#include <cstddef>
#include <vector>

#include "arran/arrangement.hpp"
#include "arran/character.hpp"
#include "arran/cyclo.hpp"
#include "arran/wiring.hpp"

namespace arran::cover {

// Finite presentation with meridian words. Words are sequences of nonzero
// signed 1-based generator indices; a negative entry is an inverse letter.
// meridian_of_line holds one word per line of the source arrangement.
struct GroupPresentation {
    std::size_t generators = 0;
    std::vector<std::vector<int>> relators;
    std::vector<std::vector<int>> meridian_of_line;
};

// Conjugation-tracked presentation of the fundamental group of the
// projective complement from a wiring diagram. One generator per affine
// line; each crossing of m lines contributes the m-1 relations equating the
// cyclic rotations of the descending product of the local meridian words,
// with conjugating words accumulated along the sweep. The meridian of the
// line at infinity is the inverse of the product of all generators. The
// presentation 2-complex computes H^1 of the complement with any local
// coefficients; nothing beyond degree one is used anywhere.
GroupPresentation randell_presentation(const WiringDiagram& wd);

// Character values on the generators, read off the meridian words. Every
// generator must be determined by some meridian whose exponent vector is a
// signed unit vector, and every meridian word must evaluate back to the
// character's value on its line; otherwise input_error.
std::vector<exact::Cyclo> character_on_generators(const GroupPresentation& pres,
                                                  const Character& chi);

// dim H^1 of the complement with coefficients twisted by chi, via Fox
// derivatives over Q(zeta_N): g - rank(Fox Jacobian) - rank(chi(x_i) - 1).
std::size_t twisted_h1(const GroupPresentation& pres, const Character& chi);

// Same, with explicit character values on the generators (used for covers).
std::size_t twisted_h1(const GroupPresentation& pres,
                       const std::vector<exact::Cyclo>& gen_values);

struct EigenvalueDim {
    unsigned order = 1;    // multiplicative order of lambda
    unsigned exponent = 0; // lambda = zeta_order^exponent, gcd(exponent, order) = 1
    std::size_t dim = 0;   // dim H^1(F)_lambda
};

// Eigenspace dimensions of the algebraic monodromy on H^1 of the Milnor
// fiber, one entry per d-th root of unity, with the weight split: the
// eigenvalue-1 part has weight two, the rest weight one.
struct EigenspaceReport {
    std::size_t d = 0;
    std::vector<EigenvalueDim> dims; // sorted by (order, exponent)
    std::size_t b1_f = 0;
    std::size_t weight1_dim = 0; // sum over lambda != 1
    std::size_t weight2_dim = 0; // dim at lambda = 1, equals d-1
};

// Eigenspace report straight from a presentation of the projective
// complement of d lines (used for externally supplied presentations): one
// Fox computation per divisor of d at the constant character, reused across
// Galois conjugates.
EigenspaceReport eigenspaces_from_presentation(const GroupPresentation& pres, std::size_t d);

// Exact eigenspace computation through the identification of the lambda
// eigenspace with H^1 twisted by the constant character (lambda, ...,
// lambda); one Fox computation per divisor of d, reused across Galois
// conjugates. Complexified-real arrangements only: throws not_real
// otherwise (supply an external presentation through the CLI instead).
// infinity_line defaults to the last line.
EigenspaceReport milnor_eigenspaces(const geom::Arrangement& arr,
                                    std::size_t infinity_line = static_cast<std::size_t>(-1),
                                    unsigned direction_hint = 0);

} // namespace arran::cover
