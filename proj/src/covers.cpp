#include "arran/covers.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>

#include "arran/errors.hpp"
#include "arran/matrix.hpp"

namespace arran::cover {

using exact::Cyclo;
using exact::Integer;
using exact::MatrixF;
using exact::MatrixZ;
using exact::Rational;

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

std::vector<Integer> exponent_vector(const Word& w, std::size_t g) {
    std::vector<Integer> e(g, Integer(0));
    for (int letter : w) e[static_cast<std::size_t>(std::abs(letter)) - 1] += letter > 0 ? 1 : -1;
    return e;
}

// Schreier transversal over Z/d, built breadth-first; kernel generators are
// the non-tree pairs (coset, generator), numbered by ascending coset then
// generator.
struct Transversal {
    unsigned d = 1;
    std::size_t g = 0;
    std::vector<unsigned> step;         // g forward steps mod d
    std::vector<Word> rep;              // coset representative words
    std::vector<std::vector<long>> gen; // gen[c][j]: kernel generator id, -1 on the tree
    std::size_t count = 0;
};

Transversal build_transversal(const GroupPresentation& pres, const CyclicEpi& epi) {
    if (epi.modulus == 0) throw input_error("cover modulus must be positive");
    if (epi.images.size() != pres.generators)
        throw input_error("one epimorphism image per generator required");
    Transversal tr;
    tr.d = epi.modulus;
    tr.g = pres.generators;
    for (long im : epi.images) {
        const long r = ((im % tr.d) + tr.d) % tr.d;
        tr.step.push_back(static_cast<unsigned>(r));
    }
    // Relators must die in Z/d for the weights to define a homomorphism.
    for (const auto& w : pres.relators) {
        long total = 0;
        for (int letter : w) {
            const auto j = static_cast<std::size_t>(std::abs(letter)) - 1;
            total += (letter > 0 ? 1 : -1) * static_cast<long>(tr.step[j]);
        }
        if (((total % tr.d) + tr.d) % tr.d != 0)
            throw input_error("weights are not constant on the relators");
    }

    tr.rep.assign(tr.d, {});
    tr.gen.assign(tr.d, std::vector<long>(tr.g, -2)); // -2: unassigned, -1: tree
    std::vector<bool> seen(tr.d, false);
    std::queue<unsigned> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
        const unsigned c = q.front();
        q.pop();
        for (std::size_t j = 0; j < tr.g; ++j) {
            const unsigned c2 = (c + tr.step[j]) % tr.d;
            if (!seen[c2]) {
                seen[c2] = true;
                tr.gen[c][j] = -1;
                tr.rep[c2] = tr.rep[c];
                tr.rep[c2].push_back(static_cast<int>(j) + 1);
                q.push(c2);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw not_surjective();
    for (unsigned c = 0; c < tr.d; ++c)
        for (std::size_t j = 0; j < tr.g; ++j)
            if (tr.gen[c][j] == -2) tr.gen[c][j] = static_cast<long>(tr.count++);
    return tr;
}

// Rewrites a kernel element as a word in the kernel generators.
Word rewrite(const Transversal& tr, const Word& w, unsigned start) {
    Word out;
    unsigned c = start;
    for (int letter : w) {
        const auto j = static_cast<std::size_t>(std::abs(letter)) - 1;
        if (letter > 0) {
            if (tr.gen[c][j] >= 0) append_letter(out, static_cast<int>(tr.gen[c][j]) + 1);
            c = (c + tr.step[j]) % tr.d;
        } else {
            c = (c + tr.d - tr.step[j]) % tr.d;
            if (tr.gen[c][j] >= 0) append_letter(out, -static_cast<int>(tr.gen[c][j]) - 1);
        }
    }
    if (c != start) throw consistency_failure("rewriting left the kernel");
    return out;
}

GroupPresentation subgroup_from(const Transversal& tr, const GroupPresentation& pres) {
    GroupPresentation sub;
    sub.generators = tr.count;
    for (unsigned c = 0; c < tr.d; ++c)
        for (const auto& w : pres.relators) sub.relators.push_back(rewrite(tr, w, c));
    return sub;
}

// Word of the kernel generator id as an element of the ambient group.
Word kernel_generator_word(const Transversal& tr, unsigned c, std::size_t j) {
    Word w = tr.rep[c];
    append_letter(w, static_cast<int>(j) + 1);
    append_word(w, inverse(tr.rep[(c + tr.step[j]) % tr.d]));
    return w;
}

// Reduced row-echelon subspace of Q^n, used to pass to the quotient by the
// relator span.
struct RowSpace {
    std::size_t n = 0;
    std::vector<std::vector<Rational>> rows; // reduced, sorted by pivot
    std::vector<std::size_t> pivots;

    void reduce(std::vector<Rational>& v) const {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Rational f = v[pivots[k]];
            if (f == 0) continue;
            for (std::size_t i = 0; i < n; ++i) v[i] -= f * rows[k][i];
        }
    }
    void insert(std::vector<Rational> v) {
        reduce(v);
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!(v[i] == 0)) {
                p = i;
                break;
            }
        if (p == n) return;
        const Rational lead = v[p];
        for (std::size_t i = 0; i < n; ++i) v[i] /= lead;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Rational f = rows[k][p];
            if (f == 0) continue;
            for (std::size_t i = 0; i < n; ++i) rows[k][i] -= f * v[i];
        }
        const auto at = std::upper_bound(pivots.begin(), pivots.end(), p) - pivots.begin();
        pivots.insert(pivots.begin() + at, p);
        rows.insert(rows.begin() + at, std::move(v));
    }
};

std::vector<Cyclo> restrict_with(const Transversal& tr, const GroupPresentation& pres,
                                 const Character& chi) {
    const auto vals = character_on_generators(pres, chi);
    std::vector<Cyclo> chi_rep(tr.d, Cyclo::one());
    for (unsigned c = 0; c < tr.d; ++c)
        for (int letter : tr.rep[c]) {
            const auto j = static_cast<std::size_t>(std::abs(letter)) - 1;
            chi_rep[c] = chi_rep[c] * (letter > 0 ? vals[j] : vals[j].inverse());
        }
    std::vector<Cyclo> out(tr.count, Cyclo::zero());
    for (unsigned c = 0; c < tr.d; ++c)
        for (std::size_t j = 0; j < tr.g; ++j) {
            if (tr.gen[c][j] < 0) continue;
            const unsigned c2 = (c + tr.step[j]) % tr.d;
            out[static_cast<std::size_t>(tr.gen[c][j])] =
                chi_rep[c] * vals[j] * chi_rep[c2].inverse();
        }
    return out;
}

} // namespace

Abelianization abelianization(const GroupPresentation& pres) {
    Abelianization ab;
    if (pres.relators.empty()) {
        ab.rank = pres.generators;
        return ab;
    }
    MatrixZ rel;
    for (const auto& w : pres.relators) rel.push_back(exponent_vector(w, pres.generators));
    std::size_t nonzero = 0;
    for (const Integer& s : exact::smith_normal_form(rel)) {
        if (s == Integer(0)) continue;
        ++nonzero;
        if (s > Integer(1)) ab.torsion.push_back(s);
    }
    ab.rank = pres.generators - nonzero;
    return ab;
}

GroupPresentation subgroup_presentation(const GroupPresentation& pres, const CyclicEpi& epi) {
    return subgroup_from(build_transversal(pres, epi), pres);
}

std::vector<Cyclo> restrict_character(const GroupPresentation& pres, const CyclicEpi& epi,
                                      const Character& chi) {
    return restrict_with(build_transversal(pres, epi), pres, chi);
}

CoverMonodromy cover_monodromy(const GroupPresentation& pres, const CyclicEpi& epi,
                               const std::vector<Character>& chis) {
    const auto tr = build_transversal(pres, epi);
    const auto sub = subgroup_from(tr, pres);
    const std::size_t n = sub.generators;

    RowSpace w;
    w.n = n;
    for (const auto& r : sub.relators) {
        const auto e = exponent_vector(r, n);
        std::vector<Rational> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Rational(e[i]);
        w.insert(std::move(v));
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t i = 0; i < n; ++i)
        if (!std::binary_search(w.pivots.begin(), w.pivots.end(), i)) free_cols.push_back(i);
    const std::size_t nq = free_cols.size();

    CoverMonodromy out;
    out.character_dims.assign(tr.d, 0);

    // Action of the deck generator on the abelianized kernel: conjugation by
    // a coset representative of 1, rewritten back into kernel generators.
    std::vector<std::vector<Rational>> action(n); // action[i] = image of e_i
    if (tr.d == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            action[i].assign(n, Rational(0));
            action[i][i] = Rational(1);
        }
    } else {
        const Word sigma = tr.rep[1];
        const Word sigma_inv = inverse(sigma);
        std::size_t id = 0;
        std::vector<std::pair<unsigned, std::size_t>> of_id(tr.count);
        for (unsigned c = 0; c < tr.d; ++c)
            for (std::size_t j = 0; j < tr.g; ++j)
                if (tr.gen[c][j] >= 0) of_id[static_cast<std::size_t>(tr.gen[c][j])] = {c, j};
        for (id = 0; id < tr.count; ++id) {
            Word word = sigma;
            append_word(word, kernel_generator_word(tr, of_id[id].first, of_id[id].second));
            append_word(word, sigma_inv);
            const auto e = exponent_vector(rewrite(tr, word, 0), n);
            action[id].assign(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i) action[id][i] = Rational(e[i]);
        }
    }
    const auto apply_action = [&](const std::vector<Rational>& v) {
        std::vector<Rational> img(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) img[k] += v[i] * action[i][k];
        }
        return img;
    };
    // The relator span must be invariant, so the action descends.
    for (const auto& row : w.rows) {
        auto img = apply_action(row);
        w.reduce(img);
        for (const auto& x : img)
            if (!(x == 0)) throw consistency_failure("deck action does not preserve relations");
    }

    if (nq > 0) {
        std::vector<std::vector<Rational>> abar(nq, std::vector<Rational>(nq));
        for (std::size_t fc = 0; fc < nq; ++fc) {
            auto img = action[free_cols[fc]];
            w.reduce(img);
            for (std::size_t fr = 0; fr < nq; ++fr) abar[fr][fc] = img[free_cols[fr]];
        }
        std::size_t total = 0;
        for (unsigned a = 0; a < tr.d; ++a) {
            const Cyclo lambda = Cyclo::root_of_unity(tr.d, a);
            std::vector<std::vector<Cyclo>> rows(nq, std::vector<Cyclo>(nq));
            for (std::size_t i = 0; i < nq; ++i)
                for (std::size_t j = 0; j < nq; ++j) {
                    rows[i][j] = Cyclo(abar[i][j]);
                    if (i == j) rows[i][j] = rows[i][j] - lambda;
                }
            const std::size_t dim = nq - exact::matrix_rank(MatrixF::from_rows(rows));
            out.character_dims[a] = dim;
            total += dim;
        }
        if (total != nq)
            throw consistency_failure("deck action is not semisimple over the cyclotomics");
    }
    for (unsigned a = 1; a < tr.d; ++a)
        if (out.character_dims[a] != 0) out.trivial = false;

    for (const auto& chi : chis) {
        PullbackCheck pc;
        pc.dim_base = twisted_h1(pres, chi);
        pc.dim_cover = twisted_h1(sub, restrict_with(tr, pres, chi));
        pc.ok = pc.dim_base <= pc.dim_cover;
        out.pullback_checks.push_back(pc);
    }
    return out;
}

} // namespace arran::cover
