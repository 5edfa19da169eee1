#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arran/arrangement.hpp"

namespace arran::net {

using geom::Arrangement;
using geom::Lattice;

struct BasePoint {
    std::size_t point = 0; // index into the lattice the multinet was validated against
    unsigned n = 0;        // common per-class weighted multiplicity n_X
};

struct Multinet {
    std::vector<std::size_t> support;               // ascending line indices
    std::vector<std::vector<std::size_t>> classes;  // k >= 3 classes partitioning support
    std::vector<unsigned> mu;                       // per line of arr; 0 off support
    unsigned e = 0;                                 // common weighted class degree
    bool reduced = false;
    std::vector<BasePoint> base_points;
    std::string source = "input";                   // "input" | "catalog" | "enumerated"

    std::size_t k() const { return classes.size(); }
};

// Checks the multinet axioms and fills in support, e, reduced, base_points:
//   M1: every class has the same total multiplicity e;
//   M2: at every base point the per-class weighted multiplicity agrees (n_X);
//   M3: lines from different classes meet only at base points (automatic,
//       recorded);
//   M4: within each class, any two lines are linked by a chain of lines
//       meeting outside the base locus.
// mu must be positive on every support line and classes must be disjoint.
// Throws axiom_violation naming the axiom and a witness.
Multinet validate_multinet(const Arrangement& arr, const Lattice& lattice,
                           const std::vector<std::vector<std::size_t>>& classes,
                           const std::vector<unsigned>& mu, std::string source = "input");

struct EnumerationOptions {
    bool reduced_only = true;
    unsigned max_mu = 4;                     // per-line multiplicity cap when not reduced
    std::optional<std::size_t> max_support;  // when set, sweep supports of size 3..max_support
    std::uint64_t budget_ms = 30000;
};

struct EnumerationResult {
    std::vector<Multinet> found; // deduplicated up to class relabeling, gcd(mu) = 1
    bool exhaustive = true;      // false when the time budget ran out
};

// Backtracking search over class assignments (and multiplicities when
// reduced_only is off). k must be 3 or 4. Support is the whole arrangement
// unless max_support requests a subarrangement sweep.
EnumerationResult enumerate_multinets(const Arrangement& arr, const Lattice& lattice,
                                      unsigned k, const EnumerationOptions& opts);

// Position of x^a y^b z^c inside a dense degree-deg coefficient vector:
// monomials are ordered lexicographically by (a, b) descending.
std::size_t monomial_index(unsigned a, unsigned b, unsigned deg);

// Degree-e forms are dense coefficient vectors over the monomials
// x^a y^b z^c with a+b+c = e, ordered lexicographically by (a, b) descending.
struct PencilRealization {
    unsigned degree = 0;
    std::vector<std::vector<exact::Cyclo>> q;                        // one form per class
    std::vector<std::pair<exact::Cyclo, exact::Cyclo>> collinearity; // Q_j = a_j Q_1 + b_j Q_2
    std::vector<std::pair<exact::Cyclo, exact::Cyclo>> fiber_points; // class j at (-b_j : a_j)
};

// Expands Q_j = prod_{i in A_j} f_i^{mu(i)} and checks the k forms span a
// 2-dimensional space; throws span_not_two otherwise. Fiber points are
// pairwise distinct.
PencilRealization realize_pencil(const Arrangement& arr, const Multinet& mn);

// lambda0 = zeta_order^exponent in lowest terms (gcd(exponent, order) = 1).
struct MonodromyBound {
    unsigned order = 1;
    unsigned exponent = 0;
    std::size_t dim_lower = 0;
};

// For each lambda with lambda^k = 1, lambda != 1: line i gets lambda^{mu(i)}
// (1 off support); when that character is constant with value lambda0 != 1
// and lambda0^d = 1, the lambda0-eigenspace of the degree-d Milnor fiber has
// dimension >= k-2. Returns the qualifying (lambda0, k-2) pairs.
std::vector<MonodromyBound> monodromy_lower_bounds(const Multinet& mn, std::size_t d);

struct Certificate {
    bool nontrivial = false;
    std::size_t k = 0;
    bool reduced = false;
    std::size_t dim_isotropic = 0;   // k-1
    std::size_t dim_cover_lower = 0; // (k-1)^2
    std::vector<MonodromyBound> bounds;
    std::string notes;
};

// Requires a reduced multinet (not_reduced otherwise) whose pencil has been
// realized; concludes the monodromy acts nontrivially on H^1 of the Milnor
// fiber and records the isotropic-subspace dimensions.
Certificate nontriviality_certificate(const Multinet& mn, const PencilRealization& pencil,
                                      const std::vector<MonodromyBound>& bounds);

struct DirectionCount {
    std::vector<unsigned> m; // per-class gcd of mu
    unsigned n = 1;          // product of the m exceeding 1
};

DirectionCount direction_count(const Multinet& mn);

struct SteinData {
    unsigned e = 1;      // multiplicity of the special fiber
    long chi_s = 0;      // Euler characteristic of the generic fiber S
    std::vector<long> s; // s[k-1] = number of points with exactly k preimages, 1 <= k < e
};

// Returns (chi(S'), chi(S_e)); evaluates both Euler-characteristic formulas
// for chi(S') and insists they agree.
std::pair<long, long> stein_chi(const SteinData& data);

} // namespace arran::net
