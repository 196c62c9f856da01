#include "unitsum/report.hpp"

#include <cmath>

namespace unitsum {

using nlohmann::json;

json coords_json(const Coords& c) {
    json a = json::array();
    for (const auto& x : c) {
        if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
            a.push_back(x.convert_to<long long>());
        else
            a.push_back(x.str());
    }
    return a;
}

json real_json(const Real& x) {
    return {{"value", x.to_string(30)}, {"precision_bits", static_cast<long>(x.precision())}};
}

json complex_json(const Complex& z) {
    return {{"re", z.re.to_string(30)}, {"im", z.im.to_string(30)}, {"precision_bits", static_cast<long>(z.precision())}};
}

json to_json(const CriticalPointReport& r, const DigitAlphabet& alphabet) {
    json rep = json::array();
    for (std::size_t k : r.representation) rep.push_back(coords_json(alphabet.elements[k].coords()));
    json j{{"point", coords_json(r.point.coords())}, {"depth", r.depth}, {"representation", rep},
           {"borderline", r.borderline}};
    if (!r.tilde_digits.empty()) j["tilde_digits"] = r.tilde_digits;
    return j;
}

json to_json(const FieldReport& r) {
    json pts = json::array();
    for (const auto& p : r.points) {
        json rep = json::array();
        for (std::size_t k : p.representation) rep.push_back(k);
        json e{{"point", coords_json(p.point.coords())}, {"depth", p.depth}, {"digit_indices", rep},
               {"borderline", p.borderline}};
        if (!p.tilde_digits.empty()) e["tilde_digits"] = p.tilde_digits;
        pts.push_back(e);
    }
    json j{{"id", r.id},
           {"name", r.name},
           {"analysed", r.analysed},
           {"w", r.w},
           {"embedding", r.embedding},
           {"root_index", r.root_index},
           {"C", r.C},
           {"B", r.B ? json(*r.B) : json(nullptr)},
           {"dug", r.dug},
           {"dug_route", r.dug_route},
           {"omega_bound", r.omega_bound},
           {"marker", to_string(r.marker)},
           {"contains_zero", r.contains_zero},
           {"critical_points", pts},
           {"failures", r.failures},
           {"seconds", r.seconds},
           {"precision_bits", static_cast<long>(r.precision)}};
    return j;
}

json to_json(const UnitSumCertificate& c) {
    json terms = json::array();
    for (const auto& t : c.terms)
        terms.push_back({{"root_power", t.root_power},
                         {"exponent", t.exponent},
                         {"coefficient", t.coefficient},
                         {"torsion", coords_json(t.unit.element.coords())}});
    return {{"target", coords_json(c.target.coords())},
            {"base", c.terms.empty() ? json(nullptr) : coords_json(c.terms.front().unit.base.coords())},
            {"terms", terms},
            {"w_bound", c.w_bound},
            {"max_coefficient", c.max_coefficient()}};
}

json to_json(const CoveringVerdict& v) {
    json vals = json::array();
    for (const auto& x : v.criterion_values) vals.push_back(real_json(x));
    return {{"w", v.w},          {"pass", v.pass},         {"borderline", v.borderline}, {"lhs", real_json(v.lhs)},
            {"rhs", real_json(v.rhs)}, {"margin", real_json(v.margin)}, {"criterion_values", vals}};
}

json to_json(const CoverageResult& r) {
    json j{{"status", to_string(r.status)}, {"residual_area", real_json(r.residual_area)}, {"pieces", r.pieces}};
    j["witness"] = r.witness ? complex_json(*r.witness) : json(nullptr);
    return j;
}

json to_json(const RewriteTrace& t, bool with_steps) {
    json j{{"initial", t.initial.to_string()},
           {"result", t.result.to_string()},
           {"steps", t.steps.size()},
           {"weight_initial", weight(t.initial)},
           {"weight_result", weight(t.result)}};
    if (with_steps) {
        json s = json::array();
        for (const auto& st : t.steps) {
            json e{{"label", st.label}, {"position", st.position}, {"sign", st.sign}, {"change", st.change.to_string()}};
            if (st.case_id) e["case"] = std::string(1, st.case_id);
            s.push_back(e);
        }
        j["trace"] = s;
    }
    return j;
}

json document(const std::string& kind, json payload) {
    return {{"schema", kSchemaVersion}, {"kind", kind}, {"data", std::move(payload)}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

std::vector<TableCheck> verify_tables(const Catalog& catalog, std::optional<int> table, mpfr_prec_t bits) {
    std::vector<TableCheck> out;
    for (const auto& e : catalog.entries()) {
        const FieldDescriptor& f = e.field;
        if (!f.table || !f.expected) continue;
        if (table && *f.table != *table) continue;
        TableCheck c;
        c.id = f.id;
        c.table = *f.table;
        c.expected = *f.expected;
        c.report = certify_entry(e, std::nullopt, std::nullopt, bits);
        c.counts_match = c.report.analysed && c.report.failures.empty() && c.report.w == c.expected.w &&
                         c.report.C == c.expected.C && c.report.B == c.expected.B;
        if (f.printed_unit && !e.units.empty()) {
            const UnitData& u = e.units[c.report.embedding < e.units.size() ? c.report.embedding : 0];
            const std::complex<double> z = embed(u.unit, u.embedding, u.embedding.chosen_index).to_complex();
            c.unit_matches = std::abs(z.real() - f.printed_unit->real()) <= 5e-4 &&
                             std::abs(z.imag() - f.printed_unit->imag()) <= 5e-4;
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace unitsum
