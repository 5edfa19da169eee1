#include "arran/report.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "arran/catalog.hpp"
#include "arran/covers.hpp"
#include "arran/errors.hpp"
#include "arran/os_algebra.hpp"
#include "arran/wiring.hpp"

namespace arran::rep {

using exact::Cyclo;
using io::json;

namespace {

bool arrangement_is_real(const geom::Arrangement& arr) {
    for (const auto& line : arr.lines)
        for (const auto& c : line.a)
            if (!c.is_rational()) return false;
    return true;
}

json cyclo_vector_json(const std::vector<Cyclo>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(io::cyclo_to_json(c));
    return out;
}

// Canonical key for multinet deduplication across catalog and search
// provenance: sorted classes plus the multiplicity vector.
std::string net_key(const net::Multinet& mn) {
    std::vector<std::vector<std::size_t>> cls = mn.classes;
    for (auto& c : cls) std::sort(c.begin(), c.end());
    std::sort(cls.begin(), cls.end());
    std::ostringstream os;
    for (const auto& c : cls) {
        for (std::size_t i : c) os << i << ',';
        os << ';';
    }
    os << '|';
    for (unsigned m : mn.mu) os << m << ',';
    return os.str();
}

json pencil_json(const net::PencilRealization& pr) {
    json forms = json::array();
    for (const auto& q : pr.q) forms.push_back(cyclo_vector_json(q));
    json collinearity = json::array();
    for (const auto& [a, b] : pr.collinearity)
        collinearity.push_back(json::array({io::cyclo_to_json(a), io::cyclo_to_json(b)}));
    json fibers = json::array();
    for (const auto& [a, b] : pr.fiber_points)
        fibers.push_back(json::array({io::cyclo_to_json(a), io::cyclo_to_json(b)}));
    return json{{"degree", pr.degree},
                {"forms", std::move(forms)},
                {"collinearity", std::move(collinearity)},
                {"fiber_points", std::move(fibers)}};
}

json bounds_json(const std::vector<net::MonodromyBound>& bounds) {
    json out = json::array();
    for (const auto& b : bounds)
        out.push_back(json{{"order", b.order},
                           {"exponent", b.exponent},
                           {"dim_lower", b.dim_lower},
                           {"attained", nullptr}});
    return out;
}

json certificate_json(const net::Certificate& cert) {
    return json{{"conclusion", cert.nontrivial ? "NontrivialMonodromy" : "Inconclusive"},
                {"nontrivial", cert.nontrivial},
                {"k", cert.k},
                {"reduced", cert.reduced},
                {"dim_isotropic", cert.dim_isotropic},
                {"dim_cover_lower", cert.dim_cover_lower},
                {"notes", cert.notes}};
}

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

json checks_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const auto& c : checks)
        out.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return out;
}

std::string count_detail(std::size_t good, std::size_t total) {
    return std::to_string(good) + "/" + std::to_string(total) + " verified";
}

} // namespace

json lattice_to_json(const geom::Arrangement& arr, const geom::Lattice& lat) {
    (void)arr;
    json points = json::array();
    for (const auto& fp : lat.points) {
        json coords = json::array();
        for (const auto& c : fp.point) coords.push_back(io::cyclo_to_json(c));
        points.push_back(json{{"coordinates", std::move(coords)},
                              {"lines", fp.lines},
                              {"multiplicity", fp.multiplicity()}});
    }
    return json{{"point_count", lat.points.size()}, {"points", std::move(points)}};
}

json multinet_to_json(const net::Multinet& mn) {
    json base_points = json::array();
    for (const auto& bp : mn.base_points)
        base_points.push_back(json{{"point", bp.point}, {"n", bp.n}});
    return json{{"classes", mn.classes}, {"mu", mn.mu},
                {"support", mn.support}, {"e", mn.e},
                {"k", mn.k()},           {"reduced", mn.reduced},
                {"source", mn.source},   {"base_points", std::move(base_points)}};
}

json eigenspaces_to_json(const cover::EigenspaceReport& rep) {
    json dims = json::array();
    for (const auto& e : rep.dims)
        dims.push_back(json{{"order", e.order}, {"exponent", e.exponent}, {"dim", e.dim}});
    return json{{"d", rep.d},
                {"dims", std::move(dims)},
                {"b1_f", rep.b1_f},
                {"weight1_dim", rep.weight1_dim},
                {"weight2_dim", rep.weight2_dim}};
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

AnalysisOutcome analyze(const geom::Arrangement& arr, const AnalyzeOptions& opts) {
    const std::size_t d = arr.size();
    geom::validate_arrangement(arr);
    const bool real = arrangement_is_real(arr);

    json report;
    report["schema_version"] = schema_version;
    std::vector<std::string> warnings;
    std::vector<Check> checks;

    json aj = io::arrangement_to_json(arr);
    aj["line_count"] = d;
    aj["real"] = real;
    report["arrangement"] = std::move(aj);

    const auto lat = geom::intersection_lattice(arr);
    report["lattice"] = lattice_to_json(arr, lat);

    // Multinet stage: validated catalog structures first, then the search,
    // deduplicated up to class relabeling.
    std::vector<net::Multinet> nets;
    std::vector<std::string> keys;
    for (const auto& cn : geom::catalog_multinets(arr.name)) {
        nets.push_back(net::validate_multinet(arr, lat, cn.classes, cn.mu, "catalog"));
        keys.push_back(net_key(nets.back()));
    }
    json searches = json::array();
    std::vector<unsigned> ks;
    if (opts.only_k)
        ks.push_back(*opts.only_k);
    else
        ks = {3, 4};
    for (unsigned k : ks) {
        net::EnumerationOptions eo;
        eo.reduced_only = opts.reduced_only;
        eo.max_mu = opts.max_mu;
        eo.max_support = opts.max_support;
        eo.budget_ms = opts.budget_ms;
        const auto res = net::enumerate_multinets(arr, lat, k, eo);
        json sj{{"k", k},
                {"reduced_only", eo.reduced_only},
                {"max_mu", eo.max_mu},
                {"exhaustive", res.exhaustive},
                {"found", res.found.size()}};
        if (eo.max_support) sj["max_support"] = *eo.max_support;
        searches.push_back(std::move(sj));
        if (!res.exhaustive)
            warnings.push_back("k=" + std::to_string(k) +
                               " multinet search hit the time budget; results may be incomplete");
        for (const auto& mn : res.found) {
            const std::string key = net_key(mn);
            if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
            keys.push_back(key);
            nets.push_back(mn);
        }
    }

    // Resonance components over the gathered multinet list.
    const auto os2 = os::os2_structure(arr, lat);
    const auto comps = os::resonance_components(arr, lat, nets);
    {
        json cj = json::array();
        for (const auto& comp : comps) {
            json spans = json::array();
            for (const auto& v : comp.span) spans.push_back(cyclo_vector_json(v));
            cj.push_back(json{
                {"dimension", comp.dimension},
                {"provenance", comp.provenance == os::ResonanceComponent::Provenance::local_point
                                   ? "local_point"
                                   : "multinet"},
                {"witness", comp.provenance == os::ResonanceComponent::Provenance::local_point
                                ? comp.point
                                : comp.multinet},
                {"defined_over", comp.defined_over},
                {"span", std::move(spans)}});
        }
        report["resonance"] = json{{"component_count", comps.size()}, {"components", std::move(cj)}};
    }

    // Pencils, monodromy bounds, certificates.
    std::vector<std::optional<net::PencilRealization>> pencils;
    std::vector<std::vector<net::MonodromyBound>> all_bounds;
    json nets_json = json::array();
    for (const auto& mn : nets) {
        json nj = multinet_to_json(mn);
        std::optional<net::PencilRealization> pr;
        try {
            pr = net::realize_pencil(arr, mn);
            nj["pencil"] = pencil_json(*pr);
        } catch (const arran::error& e) {
            nj["pencil"] = nullptr;
            warnings.push_back(std::string("pencil realization failed: ") + e.what());
        }
        const auto bounds = net::monodromy_lower_bounds(mn, d);
        nj["bounds"] = bounds_json(bounds);
        if (mn.reduced && pr)
            nj["certificate"] = certificate_json(net::nontriviality_certificate(mn, *pr, bounds));
        else
            nj["certificate"] = nullptr;
        pencils.push_back(std::move(pr));
        all_bounds.push_back(bounds);
        nets_json.push_back(std::move(nj));
    }
    report["multinets"] = json{{"searches", std::move(searches)}, {"nets", std::move(nets_json)}};

    // Exact oracle: wiring presentation for complexified-real arrangements,
    // a supplied presentation otherwise, bounds-only as the last resort.
    std::optional<cover::GroupPresentation> pres;
    std::string oracle_source;
    if (opts.presentation) {
        if (opts.presentation->meridian_of_line.size() != d)
            throw input_error("presentation must carry one meridian word per line");
        pres = *opts.presentation;
        oracle_source = "presentation";
    } else if (real) {
        const std::size_t inf =
            opts.infinity_line == static_cast<std::size_t>(-1) ? d - 1 : opts.infinity_line;
        pres = cover::randell_presentation(cover::wiring_diagram(arr, inf));
        oracle_source = "wiring";
    }

    std::optional<cover::EigenspaceReport> eig;
    std::optional<cover::CoverMonodromy> cm;
    if (pres) {
        eig = cover::eigenspaces_from_presentation(*pres, d);
        json ej = eigenspaces_to_json(*eig);
        ej["available"] = true;
        ej["source"] = oracle_source;
        report["eigenspaces"] = std::move(ej);

        const cover::CyclicEpi epi{static_cast<unsigned>(d),
                                   std::vector<long>(pres->generators, 1)};
        cm = cover::cover_monodromy(*pres, epi, opts.characters);
        std::size_t deck_sum = 0;
        for (std::size_t v : cm->character_dims) deck_sum += v;
        report["cover"] = json{{"modulus", d},
                               {"deck_dims", cm->character_dims},
                               {"kernel_rank", deck_sum},
                               {"trivial_monodromy", cm->trivial}};

        json tj = json::array();
        for (std::size_t i = 0; i < opts.characters.size(); ++i) {
            const auto& pc = cm->pullback_checks[i];
            tj.push_back(json{{"character", io::character_to_json(opts.characters[i])},
                              {"dim_base", pc.dim_base},
                              {"dim_cover", pc.dim_cover},
                              {"pullback_ok", pc.ok}});
        }
        report["twisted"] = std::move(tj);

        // Mark each certified bound as attained or not.
        for (std::size_t i = 0; i < nets.size(); ++i)
            for (std::size_t j = 0; j < all_bounds[i].size(); ++j) {
                const auto& b = all_bounds[i][j];
                for (const auto& e : eig->dims)
                    if (e.order == b.order && e.exponent == b.exponent)
                        report["multinets"]["nets"][i]["bounds"][j]["attained"] =
                            e.dim == b.dim_lower;
            }
    } else {
        report["eigenspaces"] = json{{"available", false}, {"reason", "bounds only (non-real)"}};
        warnings.push_back(
            "arrangement is not complexified-real and no presentation was supplied; "
            "eigenspaces are bounds only");
        bool any_bound = false;
        for (const auto& bs : all_bounds) any_bound = any_bound || !bs.empty();
        if (any_bound)
            warnings.push_back(
                "bound attainment is unverified without the exact oracle; "
                "equalities are recorded as unverified");
        if (!opts.characters.empty())
            warnings.push_back("supplied characters ignored: no exact oracle available");
    }

    // Consistency section, recomputed from scratch.
    {
        std::size_t pairs = 0;
        for (const auto& fp : lat.points) {
            const std::size_t m = fp.multiplicity();
            pairs += m * (m - 1) / 2;
        }
        const bool ok = pairs == d * (d - 1) / 2;
        checks.push_back({"lattice_counting_identity", ok,
                          std::to_string(pairs) + " point pairs vs " +
                              std::to_string(d * (d - 1) / 2) + " line pairs"});
    }
    {
        std::size_t good = 0, total = 0;
        for (const auto& comp : comps)
            for (const auto& v : comp.span) {
                ++total;
                if (os::aomoto_h1(os2, v) >= 1) ++good;
            }
        checks.push_back({"resonance_spans_are_resonant", good == total, count_detail(good, total)});
    }
    {
        std::size_t good = 0, total = 0;
        for (const auto& comp : comps)
            for (std::size_t i = 0; i < comp.span.size(); ++i)
                for (std::size_t j = i; j < comp.span.size(); ++j) {
                    ++total;
                    const auto prod = os::cup(os2, comp.span[i], comp.span[j]);
                    bool zero = true;
                    for (const auto& c : prod) zero = zero && c.is_zero();
                    if (zero) ++good;
                }
        checks.push_back({"resonance_spans_isotropic", good == total, count_detail(good, total)});
    }
    {
        std::size_t good = 0;
        for (const auto& mn : nets) {
            const auto again = net::validate_multinet(arr, lat, mn.classes, mn.mu, mn.source);
            if (again.e == mn.e && again.reduced == mn.reduced &&
                again.base_points.size() == mn.base_points.size())
                ++good;
        }
        checks.push_back({"multinet_axioms_revalidated", good == nets.size(),
                          count_detail(good, nets.size())});
    }
    {
        std::size_t good = 0, total = 0;
        for (std::size_t i = 0; i < nets.size(); ++i) {
            if (!pencils[i]) continue;
            const auto& pr = *pencils[i];
            for (std::size_t j = 0; j < pr.q.size(); ++j) {
                ++total;
                const auto& [a, b] = pr.collinearity[j];
                bool ok = true;
                for (std::size_t t = 0; t < pr.q[j].size(); ++t)
                    ok = ok && (pr.q[j][t] == a * pr.q[0][t] + b * pr.q[1][t]);
                if (ok) ++good;
            }
        }
        checks.push_back({"pencil_collinearity", good == total, count_detail(good, total)});
    }
    {
        std::size_t good = 0, total = 0;
        for (std::size_t i = 0; i < nets.size(); ++i) {
            if (!nets[i].reduced || !pencils[i]) continue;
            ++total;
            const auto cert = net::nontriviality_certificate(nets[i], *pencils[i], all_bounds[i]);
            const std::size_t k = nets[i].k();
            if (cert.nontrivial && cert.dim_isotropic == k - 1 &&
                cert.dim_cover_lower == (k - 1) * (k - 1))
                ++good;
        }
        checks.push_back({"certificate_premises", good == total, count_detail(good, total)});
    }
    if (eig) {
        {
            const bool ok = eig->weight2_dim == d - 1 &&
                            eig->b1_f == eig->weight1_dim + eig->weight2_dim;
            checks.push_back({"eigenspace_weight_split", ok,
                              "weight2 " + std::to_string(eig->weight2_dim) + ", b1(F) " +
                                  std::to_string(eig->b1_f)});
        }
        {
            std::map<unsigned, std::size_t> dim_of_order;
            bool ok = true;
            for (const auto& e : eig->dims) {
                auto [it, fresh] = dim_of_order.emplace(e.order, e.dim);
                ok = ok && (fresh || it->second == e.dim);
            }
            checks.push_back({"eigenspace_galois_symmetry", ok,
                              std::to_string(eig->dims.size()) + " eigenvalues"});
        }
        {
            std::size_t good = 0, total = 0;
            for (const auto& bs : all_bounds)
                for (const auto& b : bs) {
                    ++total;
                    for (const auto& e : eig->dims)
                        if (e.order == b.order && e.exponent == b.exponent &&
                            b.dim_lower <= e.dim)
                            ++good;
                }
            checks.push_back({"bounds_within_exact", good == total, count_detail(good, total)});
        }
        {
            bool ok = cm->character_dims.size() == d && cm->character_dims[0] == eig->weight2_dim;
            std::size_t total_dim = cm->character_dims[0];
            for (std::size_t a = 1; a < d && ok; ++a) {
                const auto g = std::gcd(a, d);
                const unsigned order = static_cast<unsigned>(d / g);
                const unsigned exponent = static_cast<unsigned>((a / g) % (d / g));
                bool found = false;
                for (const auto& e : eig->dims)
                    if (e.order == order && e.exponent == exponent) {
                        found = true;
                        ok = cm->character_dims[a] == e.dim;
                    }
                ok = ok && found;
                total_dim += cm->character_dims[a];
            }
            ok = ok && total_dim == eig->b1_f && cm->trivial == (eig->weight1_dim == 0);
            const cover::CyclicEpi epi{static_cast<unsigned>(d),
                                       std::vector<long>(pres->generators, 1)};
            const auto kab = cover::abelianization(cover::subgroup_presentation(*pres, epi));
            ok = ok && kab.rank == eig->b1_f;
            checks.push_back({"deck_action_reconciles", ok,
                              "kernel rank " + std::to_string(kab.rank) + ", b1(F) " +
                                  std::to_string(eig->b1_f)});
        }
        if (!opts.characters.empty()) {
            std::size_t good = 0;
            for (const auto& pc : cm->pullback_checks)
                if (pc.ok) ++good;
            checks.push_back({"pullback_inequality", good == cm->pullback_checks.size(),
                              count_detail(good, cm->pullback_checks.size())});
        }
    }

    report["warnings"] = warnings;
    report["consistency"] = checks_json(checks);

    AnalysisOutcome out;
    out.consistent = std::all_of(checks.begin(), checks.end(),
                                 [](const Check& c) { return c.pass; });
    out.report = std::move(report);
    return out;
}

} // namespace arran::rep
