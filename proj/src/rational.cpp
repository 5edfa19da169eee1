#include "arran/rational.hpp"

#include <cctype>

namespace arran::exact {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        if (part.empty()) throw input_error("bad rational literal: " + s);
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw input_error("bad rational literal: " + s);
        for (std::size_t i = start; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw input_error("bad rational literal: " + s);
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Integer q(den);
    if (q == 0) throw division_by_zero();
    return Rational(Integer(num), q); // integer-pair ctor canonicalizes
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace arran::exact
