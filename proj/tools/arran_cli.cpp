// Command-line front end: analyze, lattice, resonance, multinets, milnor,
// certify. Exit codes: 0 success (all consistency checks pass), 1 input
// error, 2 consistency failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "arran/catalog.hpp"
#include "arran/covers.hpp"
#include "arran/errors.hpp"
#include "arran/json_io.hpp"
#include "arran/os_algebra.hpp"
#include "arran/report.hpp"
#include "arran/wiring.hpp"

using namespace arran;
using io::json;

namespace {

struct CommonArgs {
    std::string builtin;
    std::string input;
    bool as_json = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    auto* b = cmd->add_option("--builtin", args.builtin, "catalog arrangement name");
    auto* i = cmd->add_option("--input", args.input, "arrangement JSON file");
    b->excludes(i);
    cmd->add_flag("--json", args.as_json, "emit the full JSON document");
    cmd->add_option("--out", args.out, "write the output to a file (atomically)");
}

geom::Arrangement load_arrangement(const CommonArgs& args) {
    if (!args.builtin.empty()) return geom::builtin(args.builtin);
    if (!args.input.empty()) return io::arrangement_from_json(io::load_json_file(args.input));
    throw input_error("one of --builtin or --input is required");
}

// Single atomic write: assemble first, then one rename or one stream flush.
void emit(const CommonArgs& args, const std::string& text) {
    if (args.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(args.out);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw input_error("cannot write " + args.out);
        f << text;
    }
    fs::rename(tmp, target);
}

std::string text_summary(const json& report) {
    std::string s;
    const auto& arr = report.at("arrangement");
    s += "arrangement " + arr.at("name").get<std::string>() + ": " +
         std::to_string(arr.at("line_count").get<std::size_t>()) + " lines\n";
    if (report.contains("lattice"))
        s += "lattice: " +
             std::to_string(report.at("lattice").at("point_count").get<std::size_t>()) +
             " points\n";
    if (report.contains("resonance"))
        s += "resonance components: " +
             std::to_string(report.at("resonance").at("component_count").get<std::size_t>()) +
             "\n";
    if (report.contains("multinets"))
        s += "multinets: " + std::to_string(report.at("multinets").at("nets").size()) + "\n";
    if (report.contains("eigenspaces")) {
        const auto& e = report.at("eigenspaces");
        if (e.at("available").get<bool>())
            s += "eigenspaces: b1(F) = " + std::to_string(e.at("b1_f").get<std::size_t>()) +
                 ", weight-1 part " + std::to_string(e.at("weight1_dim").get<std::size_t>()) +
                 "\n";
        else
            s += "eigenspaces: " + e.at("reason").get<std::string>() + "\n";
    }
    if (report.contains("cover"))
        s += std::string("monodromy: ") +
             (report.at("cover").at("trivial_monodromy").get<bool>() ? "trivial" : "nontrivial") +
             "\n";
    if (report.contains("warnings"))
        for (const auto& w : report.at("warnings"))
            s += "warning: " + w.get<std::string>() + "\n";
    if (report.contains("consistency")) {
        std::size_t pass = 0;
        for (const auto& c : report.at("consistency"))
            if (c.at("pass").get<bool>()) ++pass;
        s += "consistency: " + std::to_string(pass) + "/" +
             std::to_string(report.at("consistency").size()) + " checks passed\n";
    }
    return s;
}

int finish(const CommonArgs& args, const json& report, bool consistent) {
    emit(args, args.as_json ? rep::render(report) : text_summary(report));
    return consistent ? 0 : 2;
}

json arrangement_header(const geom::Arrangement& arr) {
    json aj = io::arrangement_to_json(arr);
    aj["line_count"] = arr.size();
    bool real = true;
    for (const auto& line : arr.lines)
        for (const auto& c : line.a) real = real && c.is_rational();
    aj["real"] = real;
    return aj;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact resonance, multinet, and Milnor-fiber monodromy analysis "
                 "of complex projective line arrangements"};
    app.require_subcommand(1);

    CommonArgs common;
    rep::AnalyzeOptions opts;
    unsigned k_flag = 0;
    long infinity_flag = -1;
    std::size_t subarrangements = 0;
    std::string presentation_file, characters_file;

    auto* analyze = app.add_subcommand("analyze", "full pipeline with consistency checks");
    add_common(analyze, common);
    unsigned analyze_k = 0;
    analyze->add_option("--k", analyze_k, "restrict the multinet search to one class count");
    analyze->add_flag("--reduced-only", opts.reduced_only, "search reduced multinets only");
    analyze->add_option("--max-mu", opts.max_mu, "multiplicity cap for non-reduced search");
    analyze->add_option("--budget-ms", opts.budget_ms, "time budget per multinet search");
    analyze->add_option("--subarrangements", subarrangements,
                        "sweep subarrangement supports up to this size");
    analyze->add_option("--infinity-line", infinity_flag, "line sent to infinity (default last)");
    analyze->add_option("--presentation", presentation_file,
                        "external fundamental-group presentation JSON");
    analyze->add_option("--characters", characters_file, "characters JSON to evaluate");

    auto* lattice = app.add_subcommand("lattice", "intersection lattice only");
    CommonArgs lat_args;
    add_common(lattice, lat_args);

    auto* resonance = app.add_subcommand("resonance", "first resonance variety components");
    CommonArgs res_args;
    add_common(resonance, res_args);

    auto* multinets = app.add_subcommand("multinets", "multinet search");
    CommonArgs mn_args;
    add_common(multinets, mn_args);
    bool mn_reduced_only = false;
    unsigned mn_max_mu = 4;
    std::uint64_t mn_budget = 30000;
    std::size_t mn_subarr = 0;
    multinets->add_option("--k", k_flag, "number of classes (default: both 3 and 4)");
    multinets->add_flag("--reduced-only", mn_reduced_only, "reduced multinets only");
    multinets->add_option("--max-mu", mn_max_mu, "multiplicity cap for non-reduced search");
    multinets->add_option("--budget-ms", mn_budget, "time budget per search");
    multinets->add_option("--subarrangements", mn_subarr,
                          "sweep subarrangement supports up to this size");

    auto* milnor = app.add_subcommand("milnor", "Milnor fiber eigenspace oracle");
    CommonArgs mil_args;
    add_common(milnor, mil_args);
    long mil_infinity = -1;
    std::string mil_pres, mil_chars;
    milnor->add_option("--infinity-line", mil_infinity, "line sent to infinity (default last)");
    milnor->add_option("--presentation", mil_pres, "external presentation JSON");
    milnor->add_option("--characters", mil_chars, "characters JSON to evaluate");

    auto* certify = app.add_subcommand("certify", "multinet certificates and monodromy bounds");
    CommonArgs cert_args;
    add_common(certify, cert_args);

    try {
        app.parse(argc, argv);

        if (analyze->parsed()) {
            if (analyze_k > 0) opts.only_k = analyze_k;
            if (subarrangements > 0) opts.max_support = subarrangements;
            if (infinity_flag >= 0) opts.infinity_line = static_cast<std::size_t>(infinity_flag);
            if (!presentation_file.empty())
                opts.presentation =
                    io::presentation_from_json(io::load_json_file(presentation_file));
            if (!characters_file.empty())
                opts.characters = io::characters_from_json(io::load_json_file(characters_file));
            const auto arr = load_arrangement(common);
            const auto outcome = rep::analyze(arr, opts);
            return finish(common, outcome.report, outcome.consistent);
        }

        if (lattice->parsed()) {
            const auto arr = load_arrangement(lat_args);
            const auto lat = geom::intersection_lattice(arr);
            json report{{"schema_version", rep::schema_version},
                        {"arrangement", arrangement_header(arr)},
                        {"lattice", rep::lattice_to_json(arr, lat)}};
            return finish(lat_args, report, true);
        }

        if (resonance->parsed()) {
            rep::AnalyzeOptions ro;
            const auto arr = load_arrangement(res_args);
            const auto outcome = rep::analyze(arr, ro);
            json report{{"schema_version", rep::schema_version},
                        {"arrangement", outcome.report.at("arrangement")},
                        {"resonance", outcome.report.at("resonance")},
                        {"consistency", outcome.report.at("consistency")}};
            return finish(res_args, report, outcome.consistent);
        }

        if (multinets->parsed()) {
            const auto arr = load_arrangement(mn_args);
            const auto lat = geom::intersection_lattice(arr);
            net::EnumerationOptions eo;
            eo.reduced_only = mn_reduced_only;
            eo.max_mu = mn_max_mu;
            eo.budget_ms = mn_budget;
            if (mn_subarr > 0) eo.max_support = mn_subarr;
            json searches = json::array();
            json nets = json::array();
            std::vector<unsigned> ks = k_flag ? std::vector<unsigned>{k_flag}
                                              : std::vector<unsigned>{3, 4};
            for (unsigned k : ks) {
                const auto res = net::enumerate_multinets(arr, lat, k, eo);
                json search{{"k", k},
                            {"reduced_only", eo.reduced_only},
                            {"max_mu", eo.max_mu},
                            {"exhaustive", res.exhaustive},
                            {"found", res.found.size()}};
                if (eo.max_support) search["max_support"] = *eo.max_support;
                searches.push_back(std::move(search));
                for (const auto& mn : res.found) nets.push_back(rep::multinet_to_json(mn));
            }
            json report{{"schema_version", rep::schema_version},
                        {"arrangement", arrangement_header(arr)},
                        {"multinets", json{{"searches", searches}, {"nets", nets}}}};
            return finish(mn_args, report, true);
        }

        if (milnor->parsed()) {
            const auto arr = load_arrangement(mil_args);
            const std::size_t d = arr.size();
            std::optional<cover::GroupPresentation> pres;
            std::string source;
            if (!mil_pres.empty()) {
                pres = io::presentation_from_json(io::load_json_file(mil_pres));
                if (pres->meridian_of_line.size() != d)
                    throw input_error("presentation must carry one meridian word per line");
                source = "presentation";
            } else {
                bool real = true;
                for (const auto& line : arr.lines)
                    for (const auto& c : line.a) real = real && c.is_rational();
                if (real) {
                    const std::size_t inf =
                        mil_infinity >= 0 ? static_cast<std::size_t>(mil_infinity) : d - 1;
                    pres = cover::randell_presentation(cover::wiring_diagram(arr, inf));
                    source = "wiring";
                }
            }
            json report{{"schema_version", rep::schema_version},
                        {"arrangement", arrangement_header(arr)}};
            json warnings = json::array();
            if (pres) {
                const auto eig = cover::eigenspaces_from_presentation(*pres, d);
                json ej = rep::eigenspaces_to_json(eig);
                ej["available"] = true;
                ej["source"] = source;
                report["eigenspaces"] = std::move(ej);
                if (!mil_chars.empty()) {
                    json tj = json::array();
                    for (const auto& chi :
                         io::characters_from_json(io::load_json_file(mil_chars)))
                        tj.push_back(json{{"character", io::character_to_json(chi)},
                                          {"dim_base", cover::twisted_h1(*pres, chi)}});
                    report["twisted"] = std::move(tj);
                }
            } else {
                report["eigenspaces"] =
                    json{{"available", false}, {"reason", "bounds only (non-real)"}};
                warnings.push_back(
                    "arrangement is not complexified-real and no presentation was supplied");
            }
            report["warnings"] = std::move(warnings);
            return finish(mil_args, report, true);
        }

        if (certify->parsed()) {
            rep::AnalyzeOptions co;
            const auto arr = load_arrangement(cert_args);
            const auto outcome = rep::analyze(arr, co);
            json report{{"schema_version", rep::schema_version},
                        {"arrangement", outcome.report.at("arrangement")},
                        {"multinets", outcome.report.at("multinets")},
                        {"warnings", outcome.report.at("warnings")},
                        {"consistency", outcome.report.at("consistency")}};
            return finish(cert_args, report, outcome.consistent);
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const consistency_failure& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 2;
    } catch (const arran::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
