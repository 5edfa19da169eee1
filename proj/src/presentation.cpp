#include "arran/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "arran/errors.hpp"
#include "arran/matrix.hpp"

namespace arran::cover {

using exact::Cyclo;
using exact::Integer;
using exact::MatrixF;
using exact::MatrixZ;

namespace {

using Word = std::vector<int>;

void append_letter(Word& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

void append_word(Word& w, const Word& v) {
    for (int letter : v) append_letter(w, letter);
}

Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

Word conjugate(const Word& by, const Word& w) {
    Word out = by;
    append_word(out, w);
    append_word(out, inverse(by));
    return out;
}

std::vector<Integer> exponent_vector(const Word& w, std::size_t g) {
    std::vector<Integer> e(g, Integer(0));
    for (int letter : w) e[static_cast<std::size_t>(std::abs(letter)) - 1] += letter > 0 ? 1 : -1;
    return e;
}

} // namespace

GroupPresentation randell_presentation(const WiringDiagram& wd) {
    const std::size_t g = wd.affine_lines.size();
    GroupPresentation pres;
    pres.generators = g;

    // cur[p] is the meridian word of affine line p at the current sweep
    // position; it stays a conjugate of generator p+1 throughout.
    std::vector<Word> cur(g);
    for (std::size_t p = 0; p < g; ++p) cur[p] = {static_cast<int>(p) + 1};

    std::size_t expected_relators = 0;
    for (const auto& ev : wd.events) {
        const std::size_t m = ev.lines.size();
        expected_relators += m - 1;
        std::vector<Word> v(m); // local meridian words, top to bottom
        for (std::size_t t = 0; t < m; ++t) v[t] = cur[ev.lines[t]];

        // Descending product and its cyclic rotations give the relations of
        // the full twist at the crossing.
        std::vector<const Word*> blocks(m);
        for (std::size_t t = 0; t < m; ++t) blocks[t] = &v[m - 1 - t];
        Word z;
        for (const Word* b : blocks) append_word(z, *b);
        const Word z_inv = inverse(z);
        for (std::size_t t = 1; t < m; ++t) {
            Word rot;
            for (std::size_t b = 0; b < m; ++b) append_word(rot, *blocks[(m - t + b) % m]);
            append_word(rot, z_inv);
            pres.relators.push_back(std::move(rot));
        }

        // Passing the crossing conjugates each strand by the product of the
        // words of the strands below it.
        for (std::size_t p = 0; p < m; ++p) {
            Word below;
            for (std::size_t t = m; t-- > p + 1;) append_word(below, v[t]);
            cur[ev.lines[p]] = conjugate(below, v[p]);
            const auto e = exponent_vector(cur[ev.lines[p]], g);
            for (std::size_t j = 0; j < g; ++j)
                if (e[j] != Integer(j == ev.lines[p] ? 1 : 0))
                    throw consistency_failure("wiring update left the meridian class");
        }
    }
    if (pres.relators.size() != expected_relators)
        throw consistency_failure("relator count does not match crossing multiplicities");

    pres.meridian_of_line.resize(g + 1);
    for (std::size_t p = 0; p < g; ++p)
        pres.meridian_of_line[wd.affine_lines[p]] = {static_cast<int>(p) + 1};
    Word at_infinity;
    for (std::size_t p = 0; p < g; ++p) at_infinity.push_back(-static_cast<int>(p) - 1);
    pres.meridian_of_line[wd.infinity_line] = std::move(at_infinity);

    // The abelianization must be free of rank d-1 = g: every relator has
    // zero exponent vector, so the relation matrix's Smith form vanishes.
    MatrixZ rel;
    for (const auto& r : pres.relators) rel.push_back(exponent_vector(r, g));
    if (!rel.empty())
        for (const Integer& s : exact::smith_normal_form(rel))
            if (s != Integer(0))
                throw consistency_failure("abelianization is not free of full rank");
    return pres;
}

std::vector<Cyclo> character_on_generators(const GroupPresentation& pres, const Character& chi) {
    validate_character(chi);
    const std::size_t g = pres.generators;
    const std::size_t d = pres.meridian_of_line.size();
    if (chi.exponents.size() != d)
        throw input_error("character length does not match the line count");

    std::vector<Cyclo> vals(g, Cyclo::zero());
    std::vector<bool> known(g, false);
    for (std::size_t line = 0; line < d; ++line) {
        const auto e = exponent_vector(pres.meridian_of_line[line], g);
        std::size_t support = 0, j = g;
        for (std::size_t k = 0; k < g; ++k)
            if (e[k] != Integer(0)) {
                ++support;
                j = k;
            }
        if (support != 1 || (e[j] != Integer(1) && e[j] != Integer(-1))) continue;
        const Cyclo lambda = chi.value(line);
        const Cyclo v = e[j] == Integer(1) ? lambda : lambda.inverse();
        if (known[j] && !(vals[j] == v))
            throw input_error("meridian words give conflicting character values");
        vals[j] = v;
        known[j] = true;
    }
    for (std::size_t j = 0; j < g; ++j)
        if (!known[j]) throw input_error("character does not determine every generator");

    for (std::size_t line = 0; line < d; ++line) {
        Cyclo prod = Cyclo::one();
        for (int letter : pres.meridian_of_line[line]) {
            const auto j = static_cast<std::size_t>(std::abs(letter)) - 1;
            prod = prod * (letter > 0 ? vals[j] : vals[j].inverse());
        }
        if (!(prod == chi.value(line)))
            throw input_error("meridian words and character values disagree");
    }
    return vals;
}

std::size_t twisted_h1(const GroupPresentation& pres, const std::vector<Cyclo>& gen_values) {
    const std::size_t g = pres.generators;
    if (gen_values.size() != g) throw input_error("one character value per generator required");

    // Fox derivative row of each relator, evaluated at the character.
    std::vector<std::vector<Cyclo>> rows;
    rows.reserve(pres.relators.size());
    for (const auto& w : pres.relators) {
        std::vector<Cyclo> row(g, Cyclo::zero());
        Cyclo prefix = Cyclo::one();
        for (int letter : w) {
            const auto j = static_cast<std::size_t>(std::abs(letter)) - 1;
            if (j >= g) throw input_error("relator letter out of range");
            if (letter > 0) {
                row[j] = row[j] + prefix;
                prefix = prefix * gen_values[j];
            } else {
                prefix = prefix * gen_values[j].inverse();
                row[j] = row[j] - prefix;
            }
        }
        // Fundamental identity of the Fox calculus: the Jacobian composed
        // with (chi(x_j) - 1) gives chi(w) - 1 = 0 on relators.
        Cyclo pairing = Cyclo::zero();
        for (std::size_t j = 0; j < g; ++j)
            pairing = pairing + row[j] * (gen_values[j] - Cyclo::one());
        if (!pairing.is_zero())
            throw consistency_failure("Fox identity violated on a relator");
        rows.push_back(std::move(row));
    }

    std::size_t rank2 = 0;
    if (!rows.empty()) rank2 = exact::matrix_rank(MatrixF::from_rows(rows));
    std::size_t rank1 = 0;
    for (const auto& v : gen_values)
        if (!v.is_one()) {
            rank1 = 1;
            break;
        }
    if (rank2 + rank1 > g) throw consistency_failure("cochain ranks exceed generator count");
    return g - rank2 - rank1;
}

std::size_t twisted_h1(const GroupPresentation& pres, const Character& chi) {
    return twisted_h1(pres, character_on_generators(pres, chi));
}

EigenspaceReport eigenspaces_from_presentation(const GroupPresentation& pres, std::size_t d) {
    if (d == 0) throw input_error("empty arrangement");
    EigenspaceReport rep;
    rep.d = d;
    for (unsigned t = 1; t <= d; ++t) {
        if (d % t != 0) continue;
        const std::size_t dim =
            twisted_h1(pres, constant_character(d, t, t == 1 ? 0 : 1));
        for (unsigned a = (t == 1 ? 0 : 1); a < std::max(t, 1u); ++a) {
            if (t > 1 && std::gcd(a, t) != 1) continue;
            rep.dims.push_back({t, a, dim});
            rep.b1_f += dim;
            if (t == 1)
                rep.weight2_dim += dim;
            else
                rep.weight1_dim += dim;
            if (t == 1) break;
        }
    }
    if (rep.weight2_dim != d - 1)
        throw consistency_failure("eigenvalue-1 part does not have dimension d-1");
    return rep;
}

EigenspaceReport milnor_eigenspaces(const geom::Arrangement& arr, std::size_t infinity_line,
                                    unsigned direction_hint) {
    const std::size_t d = arr.size();
    if (d == 0) throw input_error("empty arrangement");
    if (infinity_line == static_cast<std::size_t>(-1)) infinity_line = d - 1;
    return eigenspaces_from_presentation(
        randell_presentation(wiring_diagram(arr, infinity_line, direction_hint)), d);
}

} // namespace arran::cover
