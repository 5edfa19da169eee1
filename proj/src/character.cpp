#include "arran/character.hpp"

#include "arran/errors.hpp"

namespace arran {

void validate_character(const Character& chi) {
    if (chi.order == 0) throw input_error("character order must be positive");
    const long m = static_cast<long>(chi.order);
    long sum = 0;
    for (long e : chi.exponents) sum = ((sum + e) % m + m) % m;
    if (sum != 0) throw product_not_one();
}

Character constant_character(std::size_t d, unsigned t, long a) {
    Character chi;
    chi.order = t;
    chi.exponents.assign(d, a);
    validate_character(chi);
    return chi;
}

} // namespace arran
