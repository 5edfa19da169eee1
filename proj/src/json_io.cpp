#include "arran/json_io.hpp"

#include <fstream>

#include "arran/errors.hpp"

namespace arran::io {

namespace {

const json& need(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string(what) + ": missing \"" + key + "\"");
    return j.at(key);
}

unsigned need_order(const json& j, const char* what) {
    const json& o = need(j, "order", what);
    if (!o.is_number_integer() || o.get<std::int64_t>() <= 0)
        throw input_error(std::string(what) + ": \"order\" must be a positive integer");
    return o.get<unsigned>();
}

} // namespace

json rational_to_json(const exact::Rational& r) { return exact::rational_to_string(r); }

exact::Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return exact::Rational(j.get<long long>());
    if (!j.is_string()) throw input_error("rational: expected a \"p/q\" string");
    try {
        return exact::parse_rational(j.get<std::string>());
    } catch (const division_by_zero&) {
        throw input_error("rational: zero denominator");
    }
}

json cyclo_to_json(const exact::Cyclo& v) {
    json coeffs = json::array();
    for (const auto& c : v.coeffs()) coeffs.push_back(rational_to_json(c));
    return json{{"order", v.order()}, {"coeffs", std::move(coeffs)}};
}

exact::Cyclo cyclo_from_json(const json& j) {
    if (j.is_string() || j.is_number_integer()) return exact::Cyclo(rational_from_json(j));
    const unsigned order = need_order(j, "cyclo");
    const json& cj = need(j, "coeffs", "cyclo");
    if (!cj.is_array()) throw input_error("cyclo: \"coeffs\" must be an array");
    std::vector<exact::Rational> coeffs;
    for (const json& c : cj) coeffs.push_back(rational_from_json(c));
    // Short vectors are padded with zeros up to phi(order).
    const std::size_t full = exact::euler_phi(order);
    if (coeffs.size() > full)
        throw input_error("cyclo: more than phi(order) coefficients");
    coeffs.resize(full, exact::Rational(0));
    return exact::Cyclo(order, std::move(coeffs));
}

json arrangement_to_json(const geom::Arrangement& arr) {
    json lines = json::array();
    for (const auto& line : arr.lines)
        lines.push_back(json::array(
            {cyclo_to_json(line.a[0]), cyclo_to_json(line.a[1]), cyclo_to_json(line.a[2])}));
    return json{{"name", arr.name},
                {"cyclotomic_order", arr.cyclotomic_order},
                {"lines", std::move(lines)}};
}

geom::Arrangement arrangement_from_json(const json& j) {
    const json& nj = need(j, "name", "arrangement");
    if (!nj.is_string()) throw input_error("arrangement: \"name\" must be a string");
    const json& lj = need(j, "lines", "arrangement");
    if (!lj.is_array() || lj.empty()) throw input_error("arrangement: \"lines\" must be nonempty");
    unsigned order = 1;
    if (j.contains("cyclotomic_order")) {
        const json& oj = j.at("cyclotomic_order");
        if (!oj.is_number_integer() || oj.get<std::int64_t>() <= 0)
            throw input_error("arrangement: \"cyclotomic_order\" must be a positive integer");
        order = oj.get<unsigned>();
    }

    std::vector<std::array<exact::Cyclo, 3>> raw;
    for (const json& line : lj) {
        if (!line.is_array() || line.size() != 3)
            throw input_error("arrangement: each line needs exactly 3 coefficients");
        raw.push_back({cyclo_from_json(line[0]), cyclo_from_json(line[1]),
                       cyclo_from_json(line[2])});
    }
    auto arr = geom::make_arrangement(nj.get<std::string>(), order, raw);
    geom::validate_arrangement(arr);
    return arr;
}

json character_to_json(const Character& chi) {
    return json{{"order", chi.order}, {"exponents", chi.exponents}};
}

Character character_from_json(const json& j) {
    Character chi;
    chi.order = need_order(j, "character");
    const json& ej = need(j, "exponents", "character");
    if (!ej.is_array()) throw input_error("character: \"exponents\" must be an array");
    for (const json& e : ej) {
        if (!e.is_number_integer()) throw input_error("character: exponents must be integers");
        chi.exponents.push_back(e.get<long>());
    }
    validate_character(chi);
    return chi;
}

std::vector<Character> characters_from_json(const json& j) {
    if (!j.is_array()) throw input_error("characters: expected an array");
    std::vector<Character> out;
    for (const json& c : j) out.push_back(character_from_json(c));
    return out;
}

namespace {

std::vector<int> word_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + ": each word must be an array");
    std::vector<int> w;
    for (const json& letter : j) {
        if (!letter.is_number_integer() || letter.get<long>() == 0)
            throw input_error(std::string(what) + ": letters are nonzero signed indices");
        w.push_back(letter.get<int>());
    }
    return w;
}

} // namespace

cover::GroupPresentation presentation_from_json(const json& j) {
    cover::GroupPresentation pres;
    const json& gj = need(j, "generators", "presentation");
    if (!gj.is_number_integer() || gj.get<std::int64_t>() < 0)
        throw input_error("presentation: \"generators\" must be >= 0");
    pres.generators = gj.get<std::size_t>();
    const json& rj = need(j, "relators", "presentation");
    for (const json& r : rj) pres.relators.push_back(word_from_json(r, "relators"));
    const json& mj = need(j, "meridians", "presentation");
    for (const json& m : mj) pres.meridian_of_line.push_back(word_from_json(m, "meridians"));
    for (const auto& w : pres.relators)
        for (int letter : w)
            if (static_cast<std::size_t>(std::abs(letter)) > pres.generators)
                throw input_error("presentation: relator letter out of range");
    for (const auto& w : pres.meridian_of_line)
        for (int letter : w)
            if (static_cast<std::size_t>(std::abs(letter)) > pres.generators)
                throw input_error("presentation: meridian letter out of range");
    return pres;
}

json presentation_to_json(const cover::GroupPresentation& pres) {
    return json{{"generators", pres.generators},
                {"relators", pres.relators},
                {"meridians", pres.meridian_of_line}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
    return j;
}

} // namespace arran::io
