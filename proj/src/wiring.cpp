#include "arran/wiring.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "arran/errors.hpp"

namespace arran::cover {

using exact::Cyclo;
using exact::Rational;

namespace {

using Vec3 = std::array<Rational, 3>;
using Mat3 = std::array<Vec3, 3>;

Rational det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Solves m x = rhs by Cramer's rule; m is invertible by construction.
Vec3 solve3(const Mat3& m, const Vec3& rhs) {
    const Rational d = det3(m);
    Vec3 x;
    for (std::size_t c = 0; c < 3; ++c) {
        Mat3 mc = m;
        for (std::size_t r = 0; r < 3; ++r) mc[r][c] = rhs[r];
        x[c] = det3(mc) / d;
    }
    return x;
}

Vec3 rational_coeffs(const geom::ProjLine& line) {
    Vec3 v;
    for (std::size_t j = 0; j < 3; ++j) {
        if (!line.a[j].is_rational())
            throw not_real("arrangement has non-rational coefficients; "
                           "supply an external presentation instead");
        v[j] = line.a[j].rational_part();
    }
    return v;
}

struct AffineLine {
    std::size_t source; // index in the arrangement
    Rational b0, b1, b2; // b0 x + b1 y + b2 = 0, before shearing
};

struct Vertex {
    Rational x, y; // affine coordinates before shearing
    std::vector<std::size_t> sources;
};

} // namespace

WiringDiagram wiring_diagram(const geom::Arrangement& arr, std::size_t infinity_line,
                             unsigned direction_hint) {
    const std::size_t d = arr.size();
    if (infinity_line >= d) throw input_error("infinity line index out of range");

    // Coordinate change sending the chosen line to z = 0: two standard basis
    // rows plus the line's coefficient row.
    const Vec3 c = rational_coeffs(arr.lines[infinity_line]);
    std::size_t pivot = 3;
    for (std::size_t j = 0; j < 3; ++j)
        if (!(c[j] == Rational(0))) {
            pivot = j;
            break;
        }
    Mat3 t{};
    std::size_t row = 0;
    for (std::size_t j = 0; j < 3; ++j)
        if (j != pivot) t[row++][j] = Rational(1);
    t[2] = c;
    Mat3 t_transposed;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t_transposed[i][j] = t[j][i];

    // Forms transform by the inverse transpose: solve T^t b = a per line.
    std::vector<AffineLine> affine;
    for (std::size_t i = 0; i < d; ++i) {
        if (i == infinity_line) continue;
        const Vec3 b = solve3(t_transposed, rational_coeffs(arr.lines[i]));
        if (b[0] == Rational(0) && b[1] == Rational(0))
            throw consistency_failure("affine image of a line degenerated");
        affine.push_back({i, b[0], b[1], b[2]});
    }

    // Intersection points off the infinity line, in affine coordinates.
    const auto lattice = geom::intersection_lattice(arr);
    std::vector<Vertex> vertices;
    for (const auto& fp : lattice.points) {
        if (std::find(fp.lines.begin(), fp.lines.end(), infinity_line) != fp.lines.end())
            continue;
        Vec3 p;
        for (std::size_t j = 0; j < 3; ++j) {
            if (!fp.point[j].is_rational())
                throw not_real("intersection point has non-rational coordinates");
            p[j] = fp.point[j].rational_part();
        }
        const Rational z = c[0] * p[0] + c[1] * p[1] + c[2] * p[2];
        Vertex v;
        std::size_t k = 0;
        for (std::size_t j = 0; j < 3; ++j)
            if (j != pivot) (k++ == 0 ? v.x : v.y) = p[j] / z;
        v.sources = fp.lines;
        vertices.push_back(std::move(v));
    }

    // Shear x -> x + s*y until no line is vertical and the sweep coordinates
    // x - s*y of the vertices are pairwise distinct.
    Rational shear;
    unsigned skipped = 0;
    for (long step = 0;; ++step) {
        const long mag = (step + 1) / 2;
        const Rational s(step % 2 == 1 ? mag : -mag);
        bool ok = true;
        for (const auto& al : affine)
            if (al.b1 + s * al.b0 == Rational(0)) {
                ok = false;
                break;
            }
        if (ok) {
            std::vector<Rational> xs;
            for (const auto& v : vertices) xs.push_back(v.x - s * v.y);
            std::sort(xs.begin(), xs.end());
            ok = std::adjacent_find(xs.begin(), xs.end()) == xs.end();
        }
        if (!ok) continue;
        if (skipped++ < direction_hint) continue;
        shear = s;
        break;
    }

    // Height and slope of each affine line in the sheared chart.
    std::vector<Rational> slope(affine.size()), intercept(affine.size());
    for (std::size_t k = 0; k < affine.size(); ++k) {
        const Rational denom = affine[k].b1 + shear * affine[k].b0;
        slope[k] = -affine[k].b0 / denom;
        intercept[k] = -affine[k].b2 / denom;
    }

    std::vector<Rational> sweep_x;
    for (const auto& v : vertices) sweep_x.push_back(v.x - shear * v.y);
    Rational x0(0);
    if (!sweep_x.empty()) x0 = *std::min_element(sweep_x.begin(), sweep_x.end()) - Rational(1);

    // Affine ids by initial height, top to bottom.
    std::vector<std::size_t> order(affine.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
        return slope[v] * x0 + intercept[v] < slope[u] * x0 + intercept[u];
    });
    std::vector<std::size_t> id_of_source(d, d);
    WiringDiagram wd;
    wd.infinity_line = infinity_line;
    for (std::size_t p = 0; p < order.size(); ++p) {
        wd.affine_lines.push_back(affine[order[p]].source);
        id_of_source[affine[order[p]].source] = p;
    }
    std::vector<std::size_t> k_of_id(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) k_of_id[p] = order[p];

    for (std::size_t vi = 0; vi < vertices.size(); ++vi) {
        WiringEvent ev;
        ev.x = sweep_x[vi];
        for (std::size_t src : vertices[vi].sources) ev.lines.push_back(id_of_source[src]);
        // Top to bottom just before the crossing: ascending slope.
        std::sort(ev.lines.begin(), ev.lines.end(), [&](std::size_t u, std::size_t v) {
            return slope[k_of_id[u]] < slope[k_of_id[v]];
        });
        wd.events.push_back(std::move(ev));
    }
    std::sort(wd.events.begin(), wd.events.end(),
              [](const WiringEvent& a, const WiringEvent& b) { return a.x < b.x; });
    return wd;
}

} // namespace arran::cover
