#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "invariants.hpp"
#include "symmetry.hpp"

namespace sdp {

// A 2-face {a} x B or A x {b} of a product of polygons.
struct FactorFace {
    int face = -1;
    int varying = -1;  // 0 when the first factor varies, 1 for the second, -1 for edge x edge faces
    Int scale = 1;
};

inline std::vector<FactorFace> factor_faces(const DecompositionSpace& space) {
    const auto& p = space.polytope();
    std::vector<FactorFace> out;
    for (size_t f = 0; f < space.face_count(); ++f) {
        const auto& verts = p.faces().faces[2][f];
        const auto& a = p.vertex(verts[0]);
        bool first_fixed = true, second_fixed = true;
        for (int v : verts) {
            const auto& x = p.vertex(v);
            if (x[0] != a[0] || x[1] != a[1]) first_fixed = false;
            if (x[2] != a[2] || x[3] != a[3]) second_fixed = false;
        }
        int varying = first_fixed ? 1 : second_fixed ? 0 : -1;
        out.push_back({static_cast<int>(f), varying, space.face(f).scale});
    }
    return out;
}

// Configuration key of D on a product P_a x P_b, read off the hexagonal faces:
//   both factors hexagons: "(n1,n2)" with n1 <= n2 the counts of hexagons split into triangles per factor;
//   one hexagon factor: codes (#triangles / 2) of the hexagons scaled by 2, sorted, and the number m of
//   unscaled hexagons split into triangles, as "(m)", "(c1,...,ck)" or "(c1,...,ck),m";
//   no hexagon factor: "-".
inline std::string configuration_label(const DecompositionSpace& space, const std::string& a, const std::string& b,
                                       const StandardDecomposition& d) {
    auto faces = factor_faces(space);
    auto hex = [&](const FactorFace& f) {
        return (f.varying == 0 && a == "6") || (f.varying == 1 && b == "6");
    };
    auto tri = [&](const FactorFace& f) { return triangle_count(space.summands(d, f.face)); };
    auto join = [](const std::vector<Int>& v) {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    if (a == "6" && b == "6") {
        Int n[2] = {0, 0};
        for (const auto& f : faces)
            if (f.varying >= 0 && tri(f) > 0) ++n[f.varying];
        return join({std::min(n[0], n[1]), std::max(n[0], n[1])});
    }
    if (a != "6" && b != "6") return "-";
    Int m = 0;
    bool any_unscaled = false;
    std::vector<Int> codes;
    for (const auto& f : faces) {
        if (!hex(f)) continue;
        if (f.scale == 1) {
            any_unscaled = true;
            if (tri(f) > 0) ++m;
        } else if (f.scale == 2) {
            codes.push_back(tri(f) / 2);
        } else {
            codes.push_back(tri(f));
        }
    }
    std::sort(codes.begin(), codes.end());
    if (codes.empty()) return join({m});
    if (!any_unscaled) return join(codes);
    return join(codes) + "," + std::to_string(m);
}

struct OrbitRecord {
    StandardDecomposition representative;
    size_t size = 0;
    std::string configuration;
    InvariantReport report;
    RegularityVerdict verdict;
};

struct PairSweep {
    std::string first, second;
    std::string name;
    size_t group_order = 0;
    BigInt decompositions = 0;
    bool simply_decomposable = false;
    std::vector<OrbitRecord> orbits;
};

struct SweepOptions {
    RegularityOptions regularity;
    bool decide = true;
};

// Orbit representatives of all D on P_a x P_b with their invariants and verdicts.
inline PairSweep sweep_pair(const std::string& a, const std::string& b, const SweepOptions& opt = {}) {
    auto pp = product_pair(a, b);
    PairSweep out;
    out.first = a;
    out.second = b;
    out.name = pp.polytope.name;
    RegularityContext ctx{DecompositionSpace(ReflexivePolytope(pp.polytope))};
    const auto& space = ctx.space();
    out.decompositions = space.count();
    out.simply_decomposable = space.simply_decomposable();
    if (!out.simply_decomposable) return out;
    DecompositionAction action(space, automorphism_group(space.polytope()));
    out.group_order = action.order();
    auto part = orbits(action, [&](const StandardDecomposition& d) { return configuration_label(space, a, b, d); });
    for (size_t i = 0; i < part.representatives.size(); ++i) {
        OrbitRecord r;
        r.representative = part.representatives[i];
        r.size = part.orbit_sizes[i];
        r.configuration = part.class_labels[i];
        r.report = invariant_report(ctx, r.representative, opt.regularity, false);
        if (opt.decide) {
            r.verdict = decide_regularity(ctx, r.representative, opt.regularity);
            r.report.regular = r.verdict.status;
            r.report.regular_exact = r.verdict.exact;
            r.report.obstruction = r.verdict.obstruction;
        }
        out.orbits.push_back(std::move(r));
    }
    return out;
}

enum class TableFamily { p66_orbits, p66_invariants, p66, p6k, p65, p64, single };

inline TableFamily parse_family(const std::string& s) {
    static const std::map<std::string, TableFamily> names{
        {"P66-orbits", TableFamily::p66_orbits}, {"P66-invariants", TableFamily::p66_invariants},
        {"P66", TableFamily::p66},               {"P6k", TableFamily::p6k},
        {"P65", TableFamily::p65},               {"P64", TableFamily::p64},
        {"Psingle", TableFamily::single},
    };
    auto it = names.find(s);
    if (it == names.end()) invalid_input("unknown table family '" + s + "'");
    return it->second;
}

inline std::vector<std::pair<std::string, std::string>> family_pairs(TableFamily f) {
    switch (f) {
        case TableFamily::p66_orbits:
        case TableFamily::p66_invariants:
        case TableFamily::p66: return {{"6", "6"}};
        case TableFamily::p6k: return {{"6", "7"}, {"6", "8"}, {"6", "8'"}, {"6", "9"}};
        case TableFamily::p65: return {{"6", "5"}};
        case TableFamily::p64: return {{"6", "4"}};
        case TableFamily::single: {
            std::vector<std::string> l{"4", "5", "7", "8", "8'", "9"};
            std::vector<std::pair<std::string, std::string>> out;
            for (size_t i = 0; i < l.size(); ++i)
                for (size_t j = i; j < l.size(); ++j) out.push_back({l[i], l[j]});
            return out;
        }
    }
    return {};
}

// One configuration class with one (chi, b2) value among its regular orbits.
struct TableRow {
    std::string k1, k2;
    Int chi = 0;
    Int b2 = 0;
    Int vol = 0;
    size_t orbits = 0;          // orbits in the configuration class
    size_t regular_orbits = 0;  // orbits in the class with this (chi, b2) that are regular
    std::string configuration;
    bool regular = false;
    std::string note;
};

inline std::vector<TableRow> table_rows(const PairSweep& sw, bool include_irregular = false) {
    std::map<std::string, size_t> class_size;
    for (const auto& o : sw.orbits) ++class_size[o.configuration];
    std::map<std::tuple<std::string, Int, Int, bool>, TableRow> rows;
    std::vector<std::tuple<std::string, Int, Int, bool>> order;
    for (const auto& o : sw.orbits) {
        bool reg = o.report.regular == RegularityStatus::regular;
        if (!reg && !include_irregular) continue;
        auto key = std::make_tuple(o.configuration, o.report.chi, o.report.b2, reg);
        auto [it, fresh] = rows.try_emplace(key);
        auto& r = it->second;
        if (fresh) {
            order.push_back(key);
            r.k1 = sw.first;
            r.k2 = sw.second;
            r.chi = o.report.chi;
            r.b2 = o.report.b2;
            r.vol = o.report.vol_polar;
            r.configuration = o.configuration;
            r.orbits = class_size[o.configuration];
            r.regular = reg;
        }
        if (reg) ++r.regular_orbits;
    }
    std::vector<TableRow> out;
    for (const auto& k : order) {
        auto r = rows[k];
        if (sw.first.find('\'') != std::string::npos || sw.second.find('\'') != std::string::npos)
            r.note = "extra: calibration polygon 8'";
        if (r.regular && r.regular_orbits < r.orbits) {
            if (!r.note.empty()) r.note += "; ";
            r.note += "regular on " + std::to_string(r.regular_orbits) + " of " + std::to_string(r.orbits) + " orbits";
        }
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const TableRow& x, const TableRow& y) {
        return std::tie(x.k1, x.k2, x.configuration) < std::tie(y.k1, y.k2, y.configuration);
    });
    return out;
}

// The 7 x 7 upper triangular matrix indexed by (n1, n2) for P6 x P6.
struct HexagonMatrix {
    std::map<std::pair<Int, Int>, size_t> orbits;
    std::map<std::pair<Int, Int>, std::set<std::pair<Int, Int>>> b2_chi;
    std::map<std::pair<Int, Int>, std::set<std::string>> verdicts;
};

inline std::pair<Int, Int> parse_pair_label(const std::string& s) {
    Int a = 0, b = 0;
    char c1, c2, c3;
    std::istringstream in(s);
    if (!(in >> c1 >> a >> c2 >> b >> c3) || c1 != '(' || c2 != ',' || c3 != ')')
        invalid_input("not a pair configuration: " + s);
    return {a, b};
}

inline HexagonMatrix hexagon_matrix(const PairSweep& sw) {
    HexagonMatrix m;
    for (const auto& o : sw.orbits) {
        auto key = parse_pair_label(o.configuration);
        ++m.orbits[key];
        m.b2_chi[key].insert({o.report.b2, o.report.chi});
        m.verdicts[key].insert(to_string(o.report.regular));
    }
    return m;
}

enum class TableFormat { csv, json };

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline void emit_matrix(const HexagonMatrix& m, bool invariants, TableFormat fmt, std::ostream& out) {
    auto cell = [&](Int i, Int j) -> std::string {
        auto key = std::make_pair(i, j);
        if (invariants) {
            auto it = m.b2_chi.find(key);
            if (it == m.b2_chi.end()) return "";
            std::string s;
            for (const auto& [b2, chi] : it->second)
                s += (s.empty() ? "" : " ") + ("(" + std::to_string(b2) + "," + std::to_string(chi) + ")");
            return s;
        }
        auto it = m.orbits.find(key);
        return it == m.orbits.end() ? "" : std::to_string(it->second);
    };
    if (fmt == TableFormat::csv) {
        out << "n1\\n2,0,1,2,3,4,5,6\n";
        for (Int i = 0; i <= 6; ++i) {
            out << i;
            for (Int j = 0; j <= 6; ++j) out << "," << (j < i ? "" : csv_field(cell(i, j)));
            out << "\n";
        }
        return;
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (Int i = 0; i <= 6; ++i)
        for (Int k = i; k <= 6; ++k) {
            nlohmann::ordered_json e;
            e["n1"] = i;
            e["n2"] = k;
            if (invariants) {
                auto it = m.b2_chi.find({i, k});
                e["b2_chi"] = nlohmann::ordered_json::array();
                if (it != m.b2_chi.end())
                    for (const auto& [b2, chi] : it->second) e["b2_chi"].push_back({b2, chi});
            } else {
                auto it = m.orbits.find({i, k});
                e["orbits"] = it == m.orbits.end() ? 0 : it->second;
            }
            j.push_back(e);
        }
    out << j.dump(2) << "\n";
}

}  // namespace detail

inline void emit_rows(const std::vector<TableRow>& rows, TableFormat fmt, std::ostream& out, bool with_verdict) {
    if (fmt == TableFormat::csv) {
        out << "k1,k2,chi,b2,vol,orbits,configuration" << (with_verdict ? ",regular" : "") << ",note\n";
        for (const auto& r : rows) {
            out << detail::csv_field(r.k1) << "," << detail::csv_field(r.k2) << "," << r.chi << "," << r.b2 << ","
                << r.vol << "," << r.orbits << "," << detail::csv_field(r.configuration);
            if (with_verdict) out << "," << (r.regular ? "true" : "false");
            out << "," << detail::csv_field(r.note) << "\n";
        }
        return;
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json e;
        e["k1"] = r.k1;
        e["k2"] = r.k2;
        e["chi"] = r.chi;
        e["b2"] = r.b2;
        e["vol"] = r.vol;
        e["orbits"] = r.orbits;
        e["configuration"] = r.configuration;
        if (with_verdict) e["regular"] = r.regular;
        e["note"] = r.note;
        j.push_back(e);
    }
    out << j.dump(2) << "\n";
}

// Sweeps the family and writes its table. With all_verdicts, irregular classes are listed too.
inline void emit_tables(TableFamily family, TableFormat fmt, std::ostream& out, bool all_verdicts = false,
                        const SweepOptions& opt = {}) {
    if (family == TableFamily::p66_orbits || family == TableFamily::p66_invariants) {
        SweepOptions o = opt;
        o.decide = family == TableFamily::p66_invariants && all_verdicts;
        auto sw = sweep_pair("6", "6", o);
        detail::emit_matrix(hexagon_matrix(sw), family == TableFamily::p66_invariants, fmt, out);
        return;
    }
    std::vector<TableRow> rows;
    for (const auto& [a, b] : family_pairs(family)) {
        auto r = table_rows(sweep_pair(a, b, opt), all_verdicts);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    emit_rows(rows, fmt, out, all_verdicts);
}

}  // namespace sdp
