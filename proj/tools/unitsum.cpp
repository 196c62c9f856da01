#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "unitsum/expansion.hpp"
#include "unitsum/geometry.hpp"
#include "unitsum/report.hpp"
#include "unitsum/rewriting.hpp"

using namespace unitsum;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

FILE* g_out = stdout;

template <typename... Args>
void say(const char* fmt, Args... args) {
    std::fprintf(g_out, fmt, args...);
}

void say(const char* text) { std::fputs(text, g_out); }

struct UsageError : Error {
    using Error::Error;
};

void write_json(const std::string& path, const json& doc) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << dump_canonical(doc);
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << dump_canonical(doc);
}

std::optional<std::size_t> parse_embedding(const std::string& s) {
    if (s == "auto") return std::nullopt;
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw UsageError("--embedding must be auto, 0 or 1");
}

Coords parse_alpha(const std::string& s) {
    Coords c = zero_coords();
    std::stringstream ss(s);
    std::string tok;
    std::size_t k = 0;
    while (std::getline(ss, tok, ',')) {
        if (k == 4) throw UsageError("--alpha takes four integers");
        try {
            c[k++] = Integer(tok);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + tok + "' in --alpha");
        }
    }
    if (k != 4) throw UsageError("--alpha takes four integers");
    return c;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

void print_report(const FieldReport& r) {
    say("field %s (%s)\n", r.id.c_str(), r.name.c_str());
    if (r.analysed) {
        say("  w=%d C=%d B=%s embedding=%zu root=%d precision=%ld bits\n", r.w, r.C, opt_int(r.B).c_str(), r.embedding,
            r.root_index, static_cast<long>(r.precision));
        std::size_t border = 0;
        for (const auto& p : r.points) border += p.borderline;
        if (border) say("  borderline critical points: %zu\n", border);
    }
    say("  dug=%s route=%s omega<=%s\n", r.dug ? "true" : "false", r.dug_route.empty() ? "-" : r.dug_route.c_str(),
        r.omega_bound ? std::to_string(r.omega_bound).c_str() : "?");
    for (const auto& f : r.failures) say("  failure: %s\n", f.c_str());
}

int cmd_catalog(const Catalog& cat) {
    say("%-22s %-5s %-14s %-3s %-4s %-4s %s\n", "id", "table", "region", "w", "C", "B", "marker");
    for (const auto& e : cat.entries()) {
        const auto& f = e.field;
        say("%-22s %-5s %-14s %-3s %-4s %-4s %s\n", f.id.c_str(), opt_int(f.table).c_str(), to_string(f.region),
            f.expected ? std::to_string(f.expected->w).c_str() : "-",
            f.expected ? std::to_string(f.expected->C).c_str() : "-", f.expected ? opt_int(f.expected->B).c_str() : "-",
            to_string(f.marker));
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit sum height certificates for totally complex quartic fields"};
    app.require_subcommand(1);

    std::string field, alpha, word, json_path, embedding = "auto", table = "all";
    int w = 0;
    long precision = 0;
    double delta = 1e-6;
    bool trace = false, exact = false;

    auto* c_catalog = app.add_subcommand("catalog", "List catalog fields with their expected (w, C, B)");

    auto* c_analyze = app.add_subcommand("analyze", "Certify one field");
    c_analyze->add_option("--field", field, "Catalog id")->required();
    c_analyze->add_option("--w", w, "Digit bound; minimal passing value by default");
    c_analyze->add_option("--embedding", embedding, "Stored embedding index, or 'auto'");
    c_analyze->add_option("--precision", precision, "Working precision in bits");
    c_analyze->add_option("--json", json_path, "Write the report as JSON ('-' for stdout)");

    auto* c_points = app.add_subcommand("critical-points", "Enumerate the critical set");
    c_points->add_option("--field", field, "Catalog id")->required();
    c_points->add_option("--w", w, "Digit bound")->required();
    c_points->add_option("--json", json_path, "Write JSON to a file ('-' for stdout)");

    auto* c_expand = app.add_subcommand("expand", "Distinct unit sum certificate for one element");
    c_expand->add_option("--field", field, "Catalog id")->required();
    c_expand->add_option("--alpha", alpha, "Four comma separated coordinates in the order basis")->required();
    c_expand->add_option("--delta", delta, "Stopping threshold for the other conjugate");
    c_expand->add_option("--json", json_path, "Write JSON to a file ('-' for stdout)");

    auto* c_rewrite = app.add_subcommand("rewrite", "Rewrite a word to digits -1, 0, 1");
    c_rewrite->add_option("--word", word, "Digits, most significant first, e.g. 3,-2,0,1@0 or 100-11")->required();
    c_rewrite->add_flag("--trace", trace, "Print every rewriting step");
    c_rewrite->add_option("--json", json_path, "Write JSON to a file ('-' for stdout)");

    auto* c_tables = app.add_subcommand("verify-tables", "Recompute the tabulated fields and compare");
    c_tables->add_option("--table", table, "Which group of tabulated fields")->check(CLI::IsMember({"2", "3", "5", "all"}));
    c_tables->add_option("--json", json_path, "Write JSON to a file ('-' for stdout)");

    auto* c_cover = app.add_subcommand("covering", "Covering criterion, optionally verified on the polygon");
    c_cover->add_option("--field", field, "Catalog id")->required();
    c_cover->add_option("--w", w, "Digit bound")->required();
    c_cover->add_flag("--exact", exact, "Also decide the covering on the polygon itself");
    c_cover->add_option("--json", json_path, "Write JSON to a file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (json_path == "-") g_out = stderr;
    try {
        if (precision != 0 && (precision < 64 || precision > 65536))
            throw UsageError("--precision must lie in [64, 65536]");
        const mpfr_prec_t bits = precision ? static_cast<mpfr_prec_t>(precision) : working_precision();
        const Catalog cat = load_catalog(default_catalog_path(), bits);
        auto entry = [&]() -> const CatalogEntry& {
            if (const auto* e = cat.try_find(field)) return *e;
            throw UsageError("unknown field id '" + field + "'");
        };

        if (*c_catalog) return cmd_catalog(cat);

        if (*c_analyze) {
            const auto emb = parse_embedding(embedding);
            const FieldReport r = certify_entry(entry(), w ? std::optional<int>(w) : std::nullopt, emb, bits);
            print_report(r);
            write_json(json_path, document("field_report", to_json(r)));
            return r.failures.empty() ? kOk : kMismatch;
        }

        if (*c_points) {
            const FieldContext ctx = make_context(entry(), w, std::nullopt, bits);
            say("field %s w=%d: %zu nonzero critical points%s, radius %s, %zu box points\n", field.c_str(), w,
                ctx.critical.points.size(), ctx.critical.contains_zero ? " (plus 0)" : "",
                ctx.critical.radius.to_string(12).c_str(), ctx.critical.box_points);
            json pts = json::array();
            for (std::size_t k = 0; k < ctx.critical.points.size(); ++k) {
                const auto& p = ctx.critical.points[k];
                say("  %s%s\n", p.to_string().c_str(), ctx.critical.borderline[k] ? " borderline" : "");
                pts.push_back({{"coords", coords_json(p.coords())},
                               {"borderline", static_cast<bool>(ctx.critical.borderline[k])}});
            }
            write_json(json_path, document("critical_points", {{"field", field},
                                                               {"w", w},
                                                               {"contains_zero", ctx.critical.contains_zero},
                                                               {"radius", real_json(ctx.critical.radius)},
                                                               {"points", pts}}));
            return kOk;
        }

        if (*c_expand) {
            const CatalogEntry& e = entry();
            const OrderElement a(e.field.order, parse_alpha(alpha));
            const FieldContext ctx = make_context(e, std::nullopt, std::nullopt, bits);
            const UnitSumCertificate cert = unit_sum_representation(a, ctx, delta);
            const CertificateCheck chk = verify_certificate(cert);
            const char* base = ctx.squared() ? "e~" : "e";
            say("alpha = %s in %s, w=%d\n", a.to_string().c_str(), field.c_str(), ctx.w);
            for (const auto& t : cert.terms) {
                std::string unit;
                if (ctx.alphabet.kind == AlphabetKind::roots_of_unity)
                    unit = t.root_power ? "z^" + std::to_string(t.root_power) + " " : "";
                else
                    unit = t.root_power ? "-" : "";
                say("  %ld * %s%s^%ld\n", t.coefficient, unit.c_str(), base, t.exponent);
            }
            say("identity=%s distinct=%s coefficients=%s\n", chk.identity ? "ok" : "FAIL", chk.distinct ? "ok" : "FAIL",
                chk.coefficients ? "ok" : "FAIL");
            write_json(json_path, document("certificate", to_json(cert)));
            return chk.ok() ? kOk : kMismatch;
        }

        if (*c_rewrite) {
            const Word v = Word::parse(word);
            const RewriteTrace t = rewrite_to_signed(v);
            const bool same = value(v) == value(t.result) && t.replays();
            say("input  %s (weight %ld)\n", v.to_string().c_str(), weight(v));
            say("output %s\n", t.result.empty() ? "(empty)" : t.result.to_string().c_str());
            if (trace)
                for (const auto& s : t.steps)
                    say("  %-3s %c pos %ld sign %+d\n", s.label.c_str(), s.case_id ? s.case_id : '-', s.position,
                        s.sign);
            say("value preserved: %s\n", same ? "yes" : "NO");
            write_json(json_path, document("rewrite", to_json(t, trace)));
            return same ? kOk : kMismatch;
        }

        if (*c_tables) {
            const std::optional<int> which = table == "all" ? std::nullopt : std::optional<int>(std::stoi(table));
            const auto checks = verify_tables(cat, which, bits);
            std::size_t good = 0;
            json rows = json::array();
            say("%-22s %-5s %-12s %-12s %s\n", "id", "table", "expected", "computed", "status");
            for (const auto& c : checks) {
                const std::string exp =
                    std::to_string(c.expected.w) + "," + std::to_string(c.expected.C) + "," + opt_int(c.expected.B);
                const std::string got =
                    std::to_string(c.report.w) + "," + std::to_string(c.report.C) + "," + opt_int(c.report.B);
                say("%-22s %-5d %-12s %-12s %s%s\n", c.id.c_str(), c.table, exp.c_str(), got.c_str(),
                    c.ok() ? "match" : "MISMATCH",
                    c.unit_matches ? (*c.unit_matches ? " unit ok" : " unit MISMATCH") : "");
                good += c.ok();
                rows.push_back({{"id", c.id}, {"table", c.table}, {"match", c.ok()}, {"report", to_json(c.report)}});
            }
            say("%zu/%zu rows match\n", good, checks.size());
            write_json(json_path, document("tables", rows));
            return good == checks.size() ? kOk : kMismatch;
        }

        if (*c_cover) {
            const CatalogEntry& e = entry();
            const Criterion crit = criterion_for(e.field);
            const FieldContext ctx = make_context(e, w, std::nullopt, bits);
            const Complex eps = ctx.squared() ? ctx.main(ctx.unit.unit.coords()) : ctx.base_main();
            const CoveringVerdict v = apply_criterion(crit, eps, w);
            say("field %s criterion %s w=%d: lhs %s rhs %s -> %s%s\n", field.c_str(), to_string(crit), w,
                v.lhs.to_string(15).c_str(), v.rhs.to_string(15).c_str(), v.pass ? "pass" : "fail",
                v.borderline ? " (borderline)" : "");
            json doc{{"field", field}, {"criterion", to_string(crit)}, {"verdict", to_json(v)}};
            int rc = kOk;
            if (exact) {
                std::vector<Complex> pts;
                for (const auto& s : ctx.alphabet.elements) pts.push_back(ctx.main(s.coords()));
                const CoverageResult cr = verify_covering_exact(ctx.base_main(), pts, ctx.region);
                say("exact covering: %s, residual area %s\n", to_string(cr.status),
                    cr.residual_area.to_string(6).c_str());
                if (cr.witness)
                    say("  witness %s %s\n", cr.witness->re.to_string(15).c_str(),
                        cr.witness->im.to_string(15).c_str());
                doc["exact"] = to_json(cr);
            }
            write_json(json_path, document("covering", doc));
            return rc;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kMismatch;
    }
    return kUsage;
}
