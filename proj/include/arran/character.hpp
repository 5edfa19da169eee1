#pragma once

#include <vector>

#include "arran/cyclo.hpp"

namespace arran {

// Rank-1 character on the meridians of the arrangement: line i gets the root
// of unity zeta_order^exponents[i]. Values must multiply to 1.
struct Character {
    unsigned order = 1;
    std::vector<long> exponents;

    exact::Cyclo value(std::size_t i) const {
        return exact::Cyclo::root_of_unity(order, exponents[i]);
    }
    bool is_trivial() const {
        for (long e : exponents)
            if (e % static_cast<long>(order) != 0) return false;
        return true;
    }
};

// Throws product_not_one when the exponents do not sum to 0 mod order.
void validate_character(const Character& chi);

// The constant character (lambda, ..., lambda) with lambda = zeta_t^a.
Character constant_character(std::size_t d, unsigned t, long a);

} // namespace arran
