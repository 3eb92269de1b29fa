// sdp-cli: invariants, orbit enumeration, product tables, period sequences and polytope ingestion.
//
// Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdp/catalog.hpp"
#include "sdp/invariants.hpp"
#include "sdp/symmetry.hpp"
#include "sdp/tables.hpp"

using namespace sdp;
using nlohmann::ordered_json;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_internal = 3;

std::pair<std::string, std::string> split_pair(const std::string& s) {
    auto c = s.find(',');
    if (c == std::string::npos) invalid_input("expected two labels separated by a comma, got '" + s + "'");
    return {s.substr(0, c), s.substr(c + 1)};
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Picks an option on one face from a preset: "segments" (fewest triangles), "triangles" (most),
// "pair-of-triangles" (exactly two) or an integer triangle count.
int pick_option(const DecompositionSpace& space, size_t f, const nlohmann::json& preset) {
    const auto& opts = space.options(f);
    auto with_count = [&](Int n) {
        for (size_t i = 0; i < opts.size(); ++i)
            if (triangle_count(opts[i]) == n) return static_cast<int>(i);
        invalid_input("2-face " + std::to_string(f) + " has no decomposition with " + std::to_string(n) + " triangles");
    };
    if (preset.is_number_integer()) return with_count(preset.get<Int>());
    if (!preset.is_string()) invalid_input("face preset must be a string or an integer");
    auto name = preset.get<std::string>();
    if (name == "pair-of-triangles") return with_count(2);
    if (name != "segments" && name != "triangles") invalid_input("unknown face preset '" + name + "'");
    int best = 0;
    for (size_t i = 1; i < opts.size(); ++i) {
        Int a = triangle_count(opts[i]), b = triangle_count(opts[best]);
        if (name == "segments" ? a < b : a > b) best = static_cast<int>(i);
    }
    return best;
}

// {"choice": [...]} or {"default": preset, "faces": {"<index>": preset, ...}}.
StandardDecomposition parse_decomposition(const DecompositionSpace& space, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        invalid_input(std::string("invalid decomposition JSON: ") + e.what());
    }
    if (!j.is_object()) invalid_input("decomposition spec must be a JSON object");
    StandardDecomposition d;
    if (j.contains("choice")) {
        if (!j["choice"].is_array()) invalid_input("\"choice\" must be an array");
        for (const auto& c : j["choice"]) {
            if (!c.is_number_integer()) invalid_input("\"choice\" entries must be integers");
            d.choice.push_back(c.get<int>());
        }
        space.validate(d);
        return d;
    }
    auto fallback = j.value("default", nlohmann::json("segments"));
    d.choice.assign(space.face_count(), 0);
    for (size_t f = 0; f < space.face_count(); ++f) d.choice[f] = pick_option(space, f, fallback);
    if (j.contains("faces")) {
        if (!j["faces"].is_object()) invalid_input("\"faces\" must be an object keyed by face index or \"*\"");
        for (const auto& [key, preset] : j["faces"].items()) {
            if (key == "*") {
                for (size_t f = 0; f < space.face_count(); ++f) d.choice[f] = pick_option(space, f, preset);
                continue;
            }
            size_t used = 0;
            long f = -1;
            try {
                f = std::stol(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || f < 0 || static_cast<size_t>(f) >= space.face_count())
                invalid_input("no 2-face '" + key + "'");
            d.choice[f] = pick_option(space, static_cast<size_t>(f), preset);
        }
    }
    space.validate(d);
    return d;
}

LatticePolytope load_polytope(const std::string& file, const std::string& pair) {
    if (file.empty() == pair.empty()) invalid_input("give exactly one of --polytope and --pair");
    if (!pair.empty()) {
        auto [a, b] = split_pair(pair);
        return product_pair(a, b).polytope;
    }
    return parse_polytope_file(file);
}

ordered_json report_json(const InvariantReport& r, const RegularityVerdict& v, const std::string& configuration) {
    ordered_json j;
    j["polytope"] = r.polytope;
    j["decomposition"] = r.decomposition;
    j["sd"] = r.sd;
    j["regular"] = to_string(r.regular);
    j["regular_exact"] = r.regular_exact;
    if (!r.obstruction.empty()) j["obstruction"] = r.obstruction;
    if (v.witness) {
        std::vector<std::string> w;
        for (const auto& x : *v.witness) {
            std::ostringstream s;
            s << x;
            w.push_back(s.str());
        }
        j["witness"] = w;
    }
    j["chi"] = r.chi;
    j["positives"] = r.positives;
    j["negatives"] = r.negatives;
    j["gamma"] = r.gamma;
    j["b2"] = r.b2;
    j["vol_polar"] = r.vol_polar;
    if (!configuration.empty()) j["configuration"] = configuration;
    return j;
}

int run_check(const std::string& file, const std::string& pair, const std::string& spec, bool decide) {
    auto poly = load_polytope(file, pair);
    RegularityContext ctx{DecompositionSpace(ReflexivePolytope(poly))};
    auto d = parse_decomposition(ctx.space(), read_text(spec));
    auto r = invariant_report(ctx, d, {}, false);
    RegularityVerdict v;
    if (decide) {
        v = decide_regularity(ctx, d);
        r.regular = v.status;
        r.regular_exact = v.exact;
        r.obstruction = v.obstruction;
    }
    std::string configuration;
    if (!pair.empty()) {
        auto [a, b] = split_pair(pair);
        configuration = configuration_label(ctx.space(), a, b, d);
    }
    std::cout << report_json(r, v, configuration).dump(2) << "\n";
    return 0;
}

int run_enumerate(const std::string& file, const std::string& pair, bool with_orbits, bool sd_only) {
    ordered_json out;
    if (file.empty() && pair.empty()) {
        out = ordered_json::array();
        for (const auto& e : sd_only ? list_sd_reflexive_polygons() : enumerate_reflexive_polygons()) {
            ordered_json p;
            p["name"] = e.polygon.name;
            p["boundary_points"] = e.boundary_points;
            p["simply_decomposable"] = e.simply_decomposable;
            p["vertices"] = e.polygon.vertices;
            out.push_back(p);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    auto poly = load_polytope(file, pair);
    DecompositionSpace space{ReflexivePolytope(poly)};
    out["polytope"] = poly.name;
    out["simply_decomposable"] = space.simply_decomposable();
    if (!space.simply_decomposable()) out["diagnostic"] = space.diagnostic();
    out["decompositions"] = space.count().str();
    out["options_per_face"] = ordered_json::array();
    for (size_t f = 0; f < space.face_count(); ++f) out["options_per_face"].push_back(space.options(f).size());
    if (with_orbits && space.simply_decomposable()) {
        DecompositionAction action(space, automorphism_group(space.polytope()));
        ConfigurationLabel label;
        if (!pair.empty()) {
            auto [a, b] = split_pair(pair);
            label = [&space, a, b](const StandardDecomposition& d) { return configuration_label(space, a, b, d); };
        }
        auto part = orbits(action, label);
        out["group_order"] = action.order();
        out["orbits"] = part.representatives.size();
        out["representatives"] = ordered_json::array();
        for (size_t i = 0; i < part.representatives.size(); ++i) {
            ordered_json o;
            o["choice"] = part.representatives[i].choice;
            o["size"] = part.orbit_sizes[i];
            if (!part.class_labels[i].empty()) o["configuration"] = part.class_labels[i];
            out["representatives"].push_back(o);
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_period(const std::string& spec, Int terms, bool as_json) {
    std::vector<std::string> labels;
    std::stringstream ss(spec);
    for (std::string l; std::getline(ss, l, ',');) labels.push_back(l);
    if (labels.empty()) invalid_input("no polygon labels given");
    LaurentPoly f = catalog_polynomial(labels[0]);
    for (size_t i = 1; i < labels.size(); ++i) f = tensor(f, catalog_polynomial(labels[i]));
    auto seq = period_sequence(f, terms);
    if (as_json) {
        ordered_json j;
        j["labels"] = labels;
        std::vector<std::string> s;
        for (const auto& x : seq) s.push_back(x.str());
        j["period"] = s;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (size_t i = 0; i < seq.size(); ++i) std::cout << (i ? ", " : "") << seq[i];
    std::cout << "\n";
    return 0;
}

int run_ingest(const std::string& path, bool ks, bool allow_any) {
    auto text = read_text(path);
    auto p = ks ? parse_ks_matrix(text, !allow_any) : parse_polytope_json(text, !allow_any);
    auto j = to_json(p);
    j["reflexive"] = is_reflexive(p);
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simply decomposable reflexive polytopes: invariants, orbits and tables"};
    app.require_subcommand(1);

    std::string poly_file, pair, spec;
    bool no_decide = false;
    auto* check = app.add_subcommand("check", "Invariants and regularity verdict of one decomposition");
    check->add_option("--polytope", poly_file, "Polytope JSON file");
    check->add_option("--pair", pair, "Catalog product, e.g. 6,7");
    check->add_option("decomposition", spec, "Decomposition JSON file")->required();
    check->add_flag("--no-regularity", no_decide, "Skip the regularity decision");

    bool with_orbits = false, sd_only = false;
    auto* enumerate = app.add_subcommand("enumerate", "Reflexive polygons, or decompositions of a polytope");
    enumerate->add_option("--polytope", poly_file, "Polytope JSON file");
    enumerate->add_option("--pair", pair, "Catalog product, e.g. 6,6");
    enumerate->add_flag("--orbits", with_orbits, "Group decompositions into automorphism orbits");
    enumerate->add_flag("--sd", sd_only, "Only simply decomposable polygons");

    std::string family, format = "csv";
    bool all_verdicts = false;
    auto* tables = app.add_subcommand("tables", "Tables of regular decompositions on catalog products");
    tables->add_option("--family", family, "P66-orbits, P66-invariants, P66, P6k, P65, P64 or Psingle")->required();
    tables->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    tables->add_flag("--all", all_verdicts, "Include irregular classes with a verdict column");

    std::string labels;
    Int terms = 10;
    bool period_json = false;
    auto* period = app.add_subcommand("period", "Period sequence of the tensor product of catalog polynomials");
    period->add_option("labels", labels, "Comma separated labels, e.g. 9,9")->required();
    period->add_option("--terms", terms, "Largest power")->check(CLI::NonNegativeNumber);
    period->add_flag("--json", period_json, "JSON output");

    std::string ingest_path;
    bool ks = false, allow_any = false;
    auto* ingest = app.add_subcommand("ingest", "Validate a polytope and print it in canonical JSON");
    ingest->add_option("file", ingest_path, "Input file")->required();
    ingest->add_flag("--ks", ks, "Input is a Kreuzer-Skarke style vertex matrix");
    ingest->add_flag("--any", allow_any, "Accept polytopes that are not reflexive");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_invalid;
    }

    try {
        if (*check) return run_check(poly_file, pair, spec, !no_decide);
        if (*enumerate) return run_enumerate(poly_file, pair, with_orbits, sd_only);
        if (*tables) {
            emit_tables(parse_family(family), format == "json" ? TableFormat::json : TableFormat::csv, std::cout,
                        all_verdicts);
            return 0;
        }
        if (*period) return run_period(labels, terms, period_json);
        if (*ingest) return run_ingest(ingest_path, ks, allow_any);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::invalid_input:
            case ErrorKind::io: return exit_invalid;
            case ErrorKind::invariant_violation:
            case ErrorKind::overflow: return exit_internal;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}
