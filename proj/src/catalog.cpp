#include "unitsum/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unitsum {

using nlohmann::json;

const char* to_string(Marker m) {
    switch (m) {
        case Marker::none:
            return "none";
        case Marker::dagger:
            return "dagger";
        case Marker::double_dagger:
            return "double_dagger";
    }
    return "?";
}

const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::square:
            return "square";
        case RegionKind::hexagon:
            return "hexagon";
        case RegionKind::parallelogram:
            return "parallelogram";
        case RegionKind::polygon:
            return "polygon";
        case RegionKind::none:
            return "none";
    }
    return "?";
}

const CatalogEntry* Catalog::try_find(const std::string& id) const {
    for (const auto& e : entries_)
        if (e.field.id == id) return &e;
    return nullptr;
}

const CatalogEntry& Catalog::find(const std::string& id) const {
    if (const auto* e = try_find(id)) return *e;
    throw CatalogError("unknown field id '" + id + "'");
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("UNITSUM_CATALOG")) return env;
    return UNITSUM_CATALOG_PATH;
}

namespace {

Coords coords_from(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 4) throw CatalogError(what + " must be an array of 4 integers");
    Coords c;
    for (std::size_t k = 0; k < 4; ++k) c[k] = Integer(j[k].get<long long>());
    return c;
}

Marker marker_from(const std::string& s) {
    if (s == "none") return Marker::none;
    if (s == "dagger") return Marker::dagger;
    if (s == "double_dagger") return Marker::double_dagger;
    throw CatalogError("unknown marker '" + s + "'");
}

RegionKind region_from(const std::string& s) {
    if (s == "square") return RegionKind::square;
    if (s == "hexagon") return RegionKind::hexagon;
    if (s == "parallelogram") return RegionKind::parallelogram;
    if (s == "polygon") return RegionKind::polygon;
    if (s == "none") return RegionKind::none;
    throw CatalogError("unknown region '" + s + "'");
}

CatalogEntry parse_entry(const json& j, mpfr_prec_t bits) {
    CatalogEntry entry;
    FieldDescriptor& f = entry.field;
    f.id = j.at("id").get<std::string>();
    try {
        f.name = j.value("name", f.id);
        const auto& mp = j.at("minpoly");
        if (!mp.is_array() || mp.size() != 5) throw CatalogError("minpoly must have 5 coefficients");
        std::array<Integer, 5> coeffs;
        for (std::size_t k = 0; k < 5; ++k) coeffs[k] = Integer(mp[k].get<long long>());
        f.min_poly = MinimalPolynomial(coeffs);
        if (!f.min_poly.is_irreducible()) throw CatalogError("minimal polynomial is reducible");

        Order::Basis numerators{};
        Integer den = 1;
        if (j.contains("basis")) {
            const auto& b = j.at("basis");
            den = Integer(b.at("denominator").get<long long>());
            const auto& rows = b.at("numerators");
            if (!rows.is_array() || rows.size() != 4) throw CatalogError("basis needs 4 rows");
            for (std::size_t r = 0; r < 4; ++r) numerators[r] = coords_from(rows[r], "basis row");
        } else {
            for (std::size_t r = 0; r < 4; ++r) numerators[r] = unit_coords(r);
        }
        f.order = Order::with_basis(f.min_poly, den, numerators);

        f.mu = j.at("mu").get<int>();
        if (j.contains("zeta_coords")) f.zeta = OrderElement(f.order, coords_from(j.at("zeta_coords"), "zeta_coords"));
        f.marker = marker_from(j.value("marker", std::string("none")));
        if (j.contains("table") && !j.at("table").is_null()) f.table = j.at("table").get<int>();
        if (j.contains("expected") && !j.at("expected").is_null()) {
            const auto& e = j.at("expected");
            ExpectedRow row;
            row.w = e.at("w").get<int>();
            row.C = e.at("C").get<int>();
            if (e.contains("B") && !e.at("B").is_null()) row.B = e.at("B").get<int>();
            f.expected = row;
        }
        f.region = region_from(j.value("region", std::string("none")));
        f.squared_base = j.value("squared_base", false);
        f.prior_dug = j.value("prior_dug", false);
        if (j.contains("printed_unit")) {
            const auto& p = j.at("printed_unit");
            f.printed_unit = std::complex<double>(p.at(0).get<double>(), p.at(1).get<double>());
        }

        const EmbeddingData roots = find_roots(f.min_poly, bits);
        f.real_roots = roots.real_roots;
        if (j.contains("signature")) {
            const int t = j.at("signature").at(0).get<int>();
            if (t != f.real_roots) throw CatalogError("declared signature does not match the roots");
        }
        if (j.contains("embeddings")) {
            for (const auto& e : j.at("embeddings")) {
                EmbeddingChoice choice;
                choice.root_index = e.at("root_index").get<int>();
                if (choice.root_index < 0 || choice.root_index > 3) throw CatalogError("root_index out of range");
                choice.unit = coords_from(e.at("unit_coords"), "unit_coords");
                f.embeddings.push_back(choice);
                UnitData u;
                u.unit = OrderElement(f.order, choice.unit);
                u.is_squared_base = f.squared_base;
                u.embedding = roots.with_choice(choice.root_index);
                entry.units.push_back(std::move(u));
            }
        }
    } catch (const CatalogError& e) {
        throw CatalogError("catalog entry '" + f.id + "': " + e.what());
    } catch (const json::exception& e) {
        throw CatalogError("catalog entry '" + f.id + "': " + e.what());
    }
    return entry;
}

}  // namespace

Catalog parse_catalog(const std::string& text, mpfr_prec_t bits) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
    }
    if (doc.value("schema", 0) != 1) throw CatalogError("unsupported catalog schema");
    std::vector<CatalogEntry> entries;
    for (const auto& j : doc.at("fields")) {
        CatalogEntry e = parse_entry(j, bits);
        const VerificationReport r = verify_catalog_entry(e);
        if (!r.ok) {
            std::string msg = "catalog entry '" + e.field.id + "' failed verification:";
            for (const auto& f : r.failures) msg += " " + f + ";";
            throw CatalogError(msg);
        }
        entries.push_back(std::move(e));
    }
    return Catalog(std::move(entries));
}

Catalog load_catalog(const std::string& path, mpfr_prec_t bits) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str(), bits);
}

Catalog load_catalog() { return load_catalog(default_catalog_path(), working_precision()); }

VerificationReport verify_catalog_entry(const CatalogEntry& entry) {
    VerificationReport r;
    const FieldDescriptor& f = entry.field;
    r.id = f.id;
    auto fail = [&](const std::string& s) {
        r.ok = false;
        r.failures.push_back(s);
    };
    if (f.mu < 2 || f.mu % 2 != 0) fail("mu must be even and at least 2");
    if (f.mu > 2) {
        if (!f.zeta) {
            fail("mu > 2 needs zeta_coords");
        } else {
            const OrderElement one = OrderElement::one(f.order);
            if (power(*f.zeta, static_cast<unsigned long>(f.mu)) != one) fail("zeta^mu != 1");
            if (power(*f.zeta, static_cast<unsigned long>(f.mu / 2)) != -one) fail("zeta^(mu/2) != -1");
            for (int k = 1; k < f.mu; ++k)
                if (f.mu % k == 0 && power(*f.zeta, static_cast<unsigned long>(k)) == one) fail("zeta is not primitive");
        }
    }
    if (entry.units.size() != f.embeddings.size()) fail("embedding and unit lists differ in length");
    if (f.region != RegionKind::none && entry.units.empty()) fail("analysed field has no unit");
    for (std::size_t k = 0; k < entry.units.size(); ++k) {
        const UnitData& u = entry.units[k];
        const std::string tag = "embedding " + std::to_string(k) + ": ";
        const Integer n = norm(u.unit);
        if (abs(n) != 1) {
            fail(tag + "|norm| != 1 (norm " + n.str() + ")");
            continue;
        }
        const PisotClass pc = classify_pisot(u.base(), u.embedding);
        if (pc.verdict != PisotVerdict::complex_pisot) fail(tag + "base is " + to_string(pc.verdict));
    }
    if (f.printed_unit && !entry.units.empty()) {
        const UnitData& u = entry.units.front();
        const std::complex<double> z = embed(u.unit, u.embedding, u.embedding.chosen_index).to_complex();
        if (std::abs(z.real() - f.printed_unit->real()) > 5e-4 || std::abs(z.imag() - f.printed_unit->imag()) > 5e-4) {
            std::ostringstream os;
            os << "unit embeds to " << z.real() << "+" << z.imag() << "i, printed " << f.printed_unit->real() << "+"
               << f.printed_unit->imag() << "i";
            fail(os.str());
        }
    }
    return r;
}

std::vector<OrderElement> torsion_units(const FieldDescriptor& field) {
    std::vector<OrderElement> out;
    const OrderElement one = OrderElement::one(field.order);
    if (field.mu > 2 && field.zeta) {
        OrderElement p = one;
        for (int k = 0; k < field.mu; ++k) {
            out.push_back(p);
            p = p * *field.zeta;
        }
    } else {
        out.push_back(one);
        out.push_back(-one);
    }
    return out;
}

OrderElement canonical_associate(const OrderElement& u, const std::vector<OrderElement>& torsion,
                                 const Embedder& main) {
    std::optional<OrderElement> best;
    for (const auto& t : torsion) {
        OrderElement a = u * t;
        if (main(a.coords()).re.sign() <= 0) continue;
        if (!best || a < *best) best = a;
    }
    return best ? *best : u;
}

std::optional<FoundUnit> find_pisot_unit(const FieldDescriptor& field, long bound, mpfr_prec_t bits) {
    if (bound < 1) return std::nullopt;
    const EmbeddingData roots = find_roots(field.min_poly, bits);
    if (roots.complex_pairs() != 2) return std::nullopt;
    // upper-half representatives of the two pairs
    std::vector<int> reps;
    for (int k = 0; k < 4; ++k)
        if (roots.roots[static_cast<std::size_t>(k)].im.sign() > 0) reps.push_back(k);
    std::array<Embedder, 2> emb{Embedder(*field.order, roots.roots[static_cast<std::size_t>(reps[0])]),
                                Embedder(*field.order, roots.roots[static_cast<std::size_t>(reps[1])])};
    std::array<std::array<std::complex<double>, 4>, 2> img;
    for (int p = 0; p < 2; ++p)
        for (std::size_t j = 0; j < 4; ++j) img[static_cast<std::size_t>(p)][j] = emb[static_cast<std::size_t>(p)].basis_images()[j].to_complex();

    struct Candidate {
        double modulus;
        int pair;
        Coords coords;
    };
    std::vector<Candidate> found;
    double best = 1e300;
    const double tol = 1e-9;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d) {
                    std::array<double, 2> m;
                    for (std::size_t p = 0; p < 2; ++p) {
                        const auto& im = img[p];
                        m[p] = std::abs(im[0] * double(a) + im[1] * double(b) + im[2] * double(c) + im[3] * double(d));
                    }
                    if (std::abs(m[0] * m[0] * m[1] * m[1] - 1.0) > 1e-6) continue;
                    for (int p = 0; p < 2; ++p) {
                        const double mm = m[static_cast<std::size_t>(p)];
                        const double mo = m[static_cast<std::size_t>(1 - p)];
                        if (!(mm > 1 + tol && mo < 1 - tol)) continue;
                        if (mm > best * (1 + tol)) continue;
                        Coords co{Integer(a), Integer(b), Integer(c), Integer(d)};
                        if (abs(norm(OrderElement(field.order, co))) != 1) continue;
                        if (mm < best * (1 - tol)) found.clear();
                        best = std::min(best, mm);
                        found.push_back({mm, p, co});
                    }
                }
    if (found.empty()) return std::nullopt;
    const auto torsion = torsion_units(field);
    std::optional<FoundUnit> result;
    for (const auto& c : found) {
        if (c.modulus > best * (1 + tol)) continue;
        const OrderElement u = canonical_associate(OrderElement(field.order, c.coords), torsion, emb[static_cast<std::size_t>(c.pair)]);
        const int root = reps[static_cast<std::size_t>(c.pair)];
        if (!result || u < result->unit || (u == result->unit && root < result->root_index)) {
            result = FoundUnit{u, root, emb[static_cast<std::size_t>(c.pair)](u.coords()).abs()};
        }
    }
    return result;
}

}  // namespace unitsum
