#pragma once

#include "arran/arrangement.hpp"

namespace arran::geom {

// Built-in arrangements, by stable CLI identifier:
//   "A3"          braid arrangement xyz(x-y)(y-z)(x-z), 6 rational lines
//   "B3"          xyz(x^2-y^2)(y^2-z^2)(z^2-x^2), 9 rational lines
//   "Pappus"      a rational realization of the (9_3)_1 configuration
//   "Hesse"       the 12 lines of the 4 completely reducible fibers of the
//                 pencil (x^3+y^3+z^3, xyz), over Q(zeta_3)
//   "ExtCeva(r)"  xyz(x^r-y^r)(y^r-z^r)(z^r-x^r), over Q(zeta_r); r >= 1
// Unknown names raise input_error.
Arrangement builtin(const std::string& name);

// Partition-plus-multiplicity data for the catalog's known multinets on a
// builtin arrangement (empty when none is recorded). classes[j] lists line
// indices; mu runs over all lines with 0 off the support.
struct CatalogNet {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<unsigned> mu;
};
std::vector<CatalogNet> catalog_multinets(const std::string& name);

} // namespace arran::geom
