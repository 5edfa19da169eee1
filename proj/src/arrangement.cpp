#include "arran/arrangement.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "arran/errors.hpp"

namespace arran::geom {

namespace {

std::array<Cyclo, 3> normalize_triple(const std::array<Cyclo, 3>& t) {
    for (const auto& x : t) {
        if (x.is_zero()) continue;
        Cyclo inv = x.inverse();
        return {t[0] * inv, t[1] * inv, t[2] * inv};
    }
    throw input_error("zero coefficient triple");
}

} // namespace

ProjLine make_line(const Cyclo& a0, const Cyclo& a1, const Cyclo& a2) {
    return ProjLine{normalize_triple({a0, a1, a2})};
}

std::array<Cyclo, 3> normalize_point(const std::array<Cyclo, 3>& p) {
    return normalize_triple(p);
}

bool lex_less_point(const std::array<Cyclo, 3>& p, const std::array<Cyclo, 3>& q) {
    for (int i = 0; i < 3; ++i) {
        if (p[i] != q[i]) return exact::lex_less(p[i], q[i]);
    }
    return false;
}

Arrangement make_arrangement(std::string name, unsigned order,
                             const std::vector<std::array<Cyclo, 3>>& raw) {
    Arrangement arr;
    arr.name = std::move(name);
    arr.cyclotomic_order = order;
    for (const auto& t : raw) arr.cyclotomic_order = std::lcm(arr.cyclotomic_order, std::lcm(t[0].order(), std::lcm(t[1].order(), t[2].order())));
    arr.lines.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i][0].is_zero() && raw[i][1].is_zero() && raw[i][2].is_zero()) throw zero_form(i);
        auto n = normalize_triple(raw[i]);
        arr.lines.push_back(ProjLine{{n[0].embedded(arr.cyclotomic_order),
                                      n[1].embedded(arr.cyclotomic_order),
                                      n[2].embedded(arr.cyclotomic_order)}});
    }
    return arr;
}

void validate_arrangement(const Arrangement& arr) {
    if (arr.lines.empty()) throw input_error("arrangement has no lines");
    for (std::size_t i = 0; i < arr.lines.size(); ++i) {
        bool zero = true;
        for (const auto& x : arr.lines[i].a)
            if (!x.is_zero()) zero = false;
        if (zero) throw zero_form(i);
    }
    for (std::size_t i = 0; i < arr.lines.size(); ++i)
        for (std::size_t j = i + 1; j < arr.lines.size(); ++j)
            if (arr.lines[i] == arr.lines[j]) throw duplicate_line(i, j);
}

Lattice intersection_lattice(const Arrangement& arr) {
    validate_arrangement(arr);
    const std::size_t d = arr.size();
    auto cmp = [](const std::array<Cyclo, 3>& p, const std::array<Cyclo, 3>& q) {
        return lex_less_point(p, q);
    };
    std::map<std::array<Cyclo, 3>, std::vector<std::size_t>, decltype(cmp)> points(cmp);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& u = arr.lines[i].a;
        for (std::size_t j = i + 1; j < d; ++j) {
            const auto& v = arr.lines[j].a;
            std::array<Cyclo, 3> p = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                      u[0] * v[1] - u[1] * v[0]};
            if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero())
                throw duplicate_line(i, j); // proportional forms
            points.emplace(normalize_triple(p), std::vector<std::size_t>{});
        }
    }
    Lattice lat;
    std::size_t pair_count = 0;
    for (auto& [pt, incident] : points) {
        for (std::size_t i = 0; i < d; ++i) {
            const auto& u = arr.lines[i].a;
            Cyclo dot = u[0] * pt[0] + u[1] * pt[1] + u[2] * pt[2];
            if (dot.is_zero()) incident.push_back(i);
        }
        pair_count += incident.size() * (incident.size() - 1) / 2;
        lat.points.push_back(FlatPoint{pt, incident});
    }
    if (pair_count != d * (d - 1) / 2)
        throw consistency_failure("lattice counting identity failed");
    return lat;
}

Arrangement subarrangement(const Arrangement& arr, const std::vector<std::size_t>& idx) {
    Arrangement sub;
    sub.name = arr.name + "|sub";
    sub.cyclotomic_order = arr.cyclotomic_order;
    for (std::size_t i : idx) {
        if (i >= arr.size()) throw input_error("subarrangement index out of range");
        sub.lines.push_back(arr.lines[i]);
    }
    return sub;
}

} // namespace arran::geom
