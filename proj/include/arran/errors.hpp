#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arran {

// Base for all contract violations raised by the library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value that should have been parseable / well-formed was not.
struct input_error : error {
    explicit input_error(const std::string& msg) : error(msg) {}
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};

struct non_invertible : error {
    explicit non_invertible(const std::string& msg) : error(msg) {}
};

struct zero_form : input_error {
    std::size_t index;
    explicit zero_form(std::size_t i)
        : input_error("line " + std::to_string(i) + " has zero coefficient vector"), index(i) {}
};

struct duplicate_line : input_error {
    std::size_t first, second;
    duplicate_line(std::size_t i, std::size_t j)
        : input_error("lines " + std::to_string(i) + " and " + std::to_string(j) +
                      " coincide after normalization"),
          first(i), second(j) {}
};

struct sigma_non_zero : error {
    sigma_non_zero() : error("coordinate sum of the class is nonzero") {}
};

struct irrational_span : error {
    irrational_span() : error("component span is not defined over the rationals") {}
};

struct axiom_violation : error {
    std::string axiom;   // "M1".."M4"
    std::string witness; // human-readable witness of the failure
    axiom_violation(std::string ax, std::string w)
        : error("multinet axiom " + ax + " fails: " + w), axiom(std::move(ax)), witness(std::move(w)) {}
};

struct span_not_two : error {
    std::size_t span_dim;
    explicit span_not_two(std::size_t dim)
        : error("class forms span a space of dimension " + std::to_string(dim) + ", expected 2"),
          span_dim(dim) {}
};

struct not_reduced : error {
    not_reduced() : error("multinet is not reduced") {}
};

struct not_real : error {
    explicit not_real(const std::string& msg) : error(msg) {}
};

struct product_not_one : error {
    product_not_one() : error("character values do not multiply to 1") {}
};

struct not_surjective : error {
    not_surjective() : error("weights do not define a surjection onto Z/d") {}
};

struct consistency_failure : error {
    explicit consistency_failure(const std::string& msg) : error(msg) {}
};

} // namespace arran
