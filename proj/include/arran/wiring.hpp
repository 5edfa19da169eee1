#pragma once

#include <cstddef>
#include <vector>

#include "arran/arrangement.hpp"
#include "arran/rational.hpp"

namespace arran::cover {

// One sweep event: the affine lines through a single intersection point,
// listed in local top-to-bottom order just before the crossing.
struct WiringEvent {
    exact::Rational x;              // exact sweep coordinate
    std::vector<std::size_t> lines; // affine line ids, top to bottom
};

// Wiring diagram of the affine picture obtained by sending one line of a
// complexified-real arrangement to infinity. Affine line id p is the line
// occupying position p (top to bottom) at the left edge of the sweep; one
// event per intersection point off the line at infinity.
struct WiringDiagram {
    std::size_t infinity_line = 0;         // index into the source arrangement
    std::vector<std::size_t> affine_lines; // source index of affine line id p
    std::vector<WiringEvent> events;       // sorted by sweep coordinate
};

// Decones at infinity_line and sweeps along a generic direction: the shear
// x -> x + s*y is chosen so that no affine line is vertical and no two
// intersection points share a sweep coordinate. direction_hint skips that
// many admissible shears, producing different but equivalent diagrams for
// invariance testing. Throws not_real unless every coefficient is rational.
WiringDiagram wiring_diagram(const geom::Arrangement& arr, std::size_t infinity_line,
                             unsigned direction_hint = 0);

} // namespace arran::cover
