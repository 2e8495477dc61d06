#include "data_io.hpp"

#include "kring/b13.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kring::io {

namespace {

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path, "missing field '" + key + "'");
    return *it;
}

const json& array_field(const json& j, const std::string& key, const std::string& path) {
    const json& a = field(j, key, path);
    if (!a.is_array()) throw SchemaError(path + "." + key, "expected an array");
    return a;
}

long long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<long long>();
}

int small_int(const json& j, const std::string& path) {
    long long v = integer(j, path);
    if (v < -1000000 || v > 1000000) throw SchemaError(path, "integer out of range");
    return static_cast<int>(v);
}

std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
    return j.get<bool>();
}

json int_json(const Integer& x) {
    if (x > Integer(std::numeric_limits<long long>::max()) || x < Integer(std::numeric_limits<long long>::min()))
        throw StructuralError("integer too large for JSON: " + x.str());
    return x.convert_to<long long>();
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

json character_to_json(const Character& c) {
    json terms = json::array();
    for (const auto& [e, k] : c.terms()) terms.push_back({{"exponent", e}, {"coefficient", int_json(k)}});
    return terms;
}

Character character_from_json(const json& j, std::size_t rank, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of terms");
    Character c(rank);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = at(path, i);
        const json& e = array_field(j[i], "exponent", p);
        if (e.size() != rank) throw SchemaError(p + ".exponent", "expected " + std::to_string(rank) + " exponents");
        Exponent ex;
        for (std::size_t v = 0; v < e.size(); ++v) ex.push_back(small_int(e[v], at(p + ".exponent", v)));
        c.add_term(ex, integer(field(j[i], "coefficient", p), p + ".coefficient"));
    }
    return c;
}

// Turns module-level invariant failures into errors naming the document.
template <class F>
auto validated(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const StructuralError& e) {
        throw SchemaError(path, std::string("invariant violated: ") + e.what());
    }
}

json document(const std::string& kind) { return {{"schema_version", kSchemaVersion}, {"kind", kind}}; }

std::string group_token(const FinAbGroup& g) { return g.str(); }

FinAbGroup group_from_token(const std::string& s, const std::string& path) {
    if (s == "0") return {};
    if (s == "Z") return make_group(1);
    if (s == "Z_2") return make_group(0, {2});
    throw SchemaError(path, "coefficient must be one of 0, Z, Z_2");
}

}  // namespace

json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw SchemaError(file.string(), "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
        throw SchemaError(file.string(), "empty document");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(file.string(), std::string("not valid JSON: ") + e.what());
    }
}

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

const json& expect_kind(const json& doc, const std::string& kind) {
    if (!doc.is_object()) throw SchemaError("$", "expected an object");
    if (integer(field(doc, "schema_version", "$"), "$.schema_version") != kSchemaVersion)
        throw SchemaError("$.schema_version", "unsupported version");
    if (string(field(doc, "kind", "$"), "$.kind") != kind)
        throw SchemaError("$.kind", "expected '" + kind + "'");
    return doc;
}

json group_to_json(const FinAbGroup& g) {
    json t = json::array();
    for (const auto& d : g.torsion) t.push_back(int_json(d));
    return {{"free_rank", g.free_rank}, {"torsion", t}};
}

FinAbGroup group_from_json(const json& j, const std::string& path) {
    long long r = integer(field(j, "free_rank", path), path + ".free_rank");
    if (r < 0) throw SchemaError(path + ".free_rank", "must be nonnegative");
    std::vector<Integer> orders;
    const json& t = array_field(j, "torsion", path);
    for (std::size_t i = 0; i < t.size(); ++i) {
        long long d = integer(t[i], at(path + ".torsion", i));
        if (d < 2) throw SchemaError(at(path + ".torsion", i), "torsion orders must be at least 2");
        orders.push_back(d);
    }
    FinAbGroup g = make_group(static_cast<std::size_t>(r), orders);
    // Only invariant-factor form round-trips.
    if (g.torsion.size() != orders.size() || !std::equal(orders.begin(), orders.end(), g.torsion.begin()))
        throw SchemaError(path + ".torsion", "must be invariant factors d1 | d2 | ...");
    return g;
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(int_json(m(i, k)));
        rows.push_back(r);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const json& j, const std::string& path) {
    long long r = integer(field(j, "rows", path), path + ".rows");
    long long c = integer(field(j, "cols", path), path + ".cols");
    if (r < 0 || c < 0) throw SchemaError(path, "negative shape");
    const json& e = array_field(j, "entries", path);
    if (static_cast<long long>(e.size()) != r) throw SchemaError(path + ".entries", "expected " + std::to_string(r) + " rows");
    IntMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    for (std::size_t i = 0; i < e.size(); ++i) {
        const std::string p = at(path + ".entries", i);
        if (!e[i].is_array() || static_cast<long long>(e[i].size()) != c)
            throw SchemaError(p, "expected " + std::to_string(c) + " entries");
        for (std::size_t k = 0; k < e[i].size(); ++k) m(i, k) = integer(e[i][k], at(p, k));
    }
    return m;
}

json verdict_to_json(Verdict v) { return to_string(v); }

Verdict verdict_from_json(const json& j, const std::string& path) {
    const std::string s = string(j, path);
    for (Verdict v : {Verdict::surjective, Verdict::not_surjective, Verdict::undetermined})
        if (to_string(v) == s) return v;
    throw SchemaError(path, "unknown verdict '" + s + "'");
}

json cohomology_to_json(const CohomologyTable& c) {
    json groups = json::array(), sq2 = json::array();
    for (const auto& g : c.integral) groups.push_back(group_to_json(g));
    for (const auto& s : c.sq2) sq2.push_back(s ? matrix_to_json(*s) : json(nullptr));
    return {{"name", c.name}, {"dimension", c.dimension}, {"integral", groups}, {"sq2", sq2}};
}

CohomologyTable cohomology_from_json(const json& j, const std::string& path) {
    CohomologyTable c;
    c.name = string(field(j, "name", path), path + ".name");
    c.dimension = small_int(field(j, "dimension", path), path + ".dimension");
    const json& g = array_field(j, "integral", path);
    for (std::size_t i = 0; i < g.size(); ++i) c.integral.push_back(group_from_json(g[i], at(path + ".integral", i)));
    const json& s = array_field(j, "sq2", path);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].is_null()) c.sq2.emplace_back(std::nullopt);
        else c.sq2.emplace_back(matrix_from_json(s[i], at(path + ".sq2", i)));
    }
    validated(path, [&] { c.validate(); return 0; });
    return c;
}

CohomologyTable cohomology_document_from_json(const json& doc) {
    expect_kind(doc, "cohomology_table");
    return cohomology_from_json(field(doc, "table", "$"), "$.table");
}

std::vector<Dim7Row> dim7_rows_from_json(const json& doc) {
    expect_kind(doc, "dim7_table");
    const json& rows = array_field(doc, "rows", "$");
    std::vector<Dim7Row> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = at("$.rows", i);
        out.push_back({cohomology_from_json(field(rows[i], "table", p), p + ".table"),
                       verdict_from_json(field(rows[i], "expected", p), p + ".expected")});
    }
    return out;
}

std::vector<SphereCase> sphere_cases_from_json(const json& doc) {
    expect_kind(doc, "sphere_theorem_tuples");
    const json& cases = array_field(doc, "cases", "$");
    std::vector<SphereCase> out;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string p = at("$.cases", i);
        SphereCase s;
        const json& d = array_field(cases[i], "dims", p);
        if (d.empty()) throw SchemaError(p + ".dims", "needs at least one sphere");
        for (std::size_t k = 0; k < d.size(); ++k) {
            int n = small_int(d[k], at(p + ".dims", k));
            if (n < 1) throw SchemaError(at(p + ".dims", k), "sphere dimensions are positive");
            s.dims.push_back(n);
        }
        if (cases[i].contains("ko_trivial")) s.ko_trivial = boolean(cases[i]["ko_trivial"], p + ".ko_trivial");
        if (cases[i].contains("verdict")) s.verdict = verdict_from_json(cases[i]["verdict"], p + ".verdict");
        out.push_back(std::move(s));
    }
    return out;
}

FlagCatalog flag_catalog_from_json(const json& doc) {
    expect_kind(doc, "flag_catalog");
    FlagCatalog cat;
    const json& f = array_field(doc, "factors", "$");
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string p = at("$.factors", i);
        SimpleFactorData s;
        s.name = string(field(f[i], "name", p), p + ".name");
        std::string fam = string(field(f[i], "family", p), p + ".family");
        if (fam.size() != 1 || std::string("ABCDEFGT").find(fam[0]) == std::string::npos)
            throw SchemaError(p + ".family", "expected one of A..G or T");
        s.family = fam[0];
        s.rank = small_int(field(f[i], "rank", p), p + ".rank");
        s.b_C = small_int(field(f[i], "b_C", p), p + ".b_C");
        s.b_R = small_int(field(f[i], "b_R", p), p + ".b_R");
        s.b_H = small_int(field(f[i], "b_H", p), p + ".b_H");
        s.conjugation_trivial = boolean(field(f[i], "conjugation_trivial", p), p + ".conjugation_trivial");
        validated(p, [&] { validate_factor(s); return 0; });
        cat.factors.push_back(std::move(s));
    }
    const json& prods = array_field(doc, "surjective_products", "$");
    for (std::size_t i = 0; i < prods.size(); ++i) {
        if (!prods[i].is_array() || prods[i].empty()) throw SchemaError(at("$.surjective_products", i), "expected factor names");
        std::vector<std::string> names;
        for (std::size_t k = 0; k < prods[i].size(); ++k) {
            std::string n = string(prods[i][k], at(at("$.surjective_products", i), k));
            bool known = std::any_of(cat.factors.begin(), cat.factors.end(), [&](const auto& x) { return x.name == n; });
            if (!known) throw SchemaError(at(at("$.surjective_products", i), k), "unknown factor '" + n + "'");
            names.push_back(n);
        }
        cat.surjective_products.push_back(std::move(names));
    }
    return cat;
}

std::vector<CoefficientRow> coefficient_rows_from_json(const json& doc) {
    expect_kind(doc, "coefficient_rows");
    const json& rows = array_field(doc, "rows", "$");
    std::vector<CoefficientRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = at("$.rows", i);
        std::string th = string(field(rows[i], "theory", p), p + ".theory");
        if (th != "K" && th != "KO") throw SchemaError(p + ".theory", "expected K or KO");
        CoefficientRow r{th == "K" ? Theory::K : Theory::KO, {}};
        const json& per = array_field(rows[i], "period", p);
        for (std::size_t k = 0; k < per.size(); ++k) {
            FinAbGroup g = group_from_token(string(per[k], at(p + ".period", k)), at(p + ".period", k));
            r.period.push_back(g.is_trivial() ? RowKind::zero : g.is_free() ? RowKind::integral : RowKind::mod2);
        }
        if (r.period.empty()) throw SchemaError(p + ".period", "needs at least one entry");
        out.push_back(std::move(r));
    }
    return out;
}

PresentationCase presentation_from_json(const json& doc) {
    expect_kind(doc, "laurent_presentation");
    PresentationCase c;
    LaurentIdealPresentation& p = c.presentation;
    const json& vars = array_field(doc, "variables", "$");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string q = at("$.variables", i);
        p.names.push_back(string(field(vars[i], "name", q), q + ".name"));
        p.invertible.push_back(boolean(field(vars[i], "invertible", q), q + ".invertible"));
    }
    const json& rels = array_field(doc, "relations", "$");
    for (std::size_t i = 0; i < rels.size(); ++i) p.relations.push_back(character_from_json(rels[i], p.rank(), at("$.relations", i)));
    if (doc.contains("eliminable")) {
        const json& el = doc["eliminable"];
        if (!el.is_array()) throw SchemaError("$.eliminable", "expected an array");
        for (std::size_t i = 0; i < el.size(); ++i) {
            const std::string q = at("$.eliminable", i);
            long long r = integer(field(el[i], "relation", q), q + ".relation");
            if (r < 0 || r >= static_cast<long long>(p.relations.size())) throw SchemaError(q + ".relation", "no such relation");
            p.eliminable.push_back({string(field(el[i], "variable", q), q + ".variable"), static_cast<std::size_t>(r)});
        }
    }
    if (doc.contains("window")) c.window = small_int(doc["window"], "$.window");
    if (c.window < 1) throw SchemaError("$.window", "must be positive");
    if (doc.contains("expected")) c.expected = group_from_json(doc["expected"], "$.expected");
    validated("$", [&] { p.validate(); return 0; });
    return c;
}

json presentation_to_json(const PresentationCase& c) {
    json d = document("laurent_presentation");
    const LaurentIdealPresentation& p = c.presentation;
    json vars = json::array(), rels = json::array(), el = json::array();
    for (std::size_t i = 0; i < p.rank(); ++i) vars.push_back({{"name", p.names[i]}, {"invertible", bool(p.invertible[i])}});
    for (const auto& r : p.relations) rels.push_back(character_to_json(r));
    for (const auto& e : p.eliminable) el.push_back({{"variable", e.variable}, {"relation", e.relation}});
    d["variables"] = vars;
    d["relations"] = rels;
    if (!p.eliminable.empty()) d["eliminable"] = el;
    d["window"] = c.window;
    if (c.expected) d["expected"] = group_to_json(*c.expected);
    return d;
}

TateCase tate_case_from_json(const json& doc) {
    expect_kind(doc, "involutive_ring");
    TateCase c;
    long long n = integer(field(doc, "generators", "$"), "$.generators");
    if (n < 1 || n > 64) throw SchemaError("$.generators", "expected 1..64 generators");
    const auto gens = static_cast<std::size_t>(n);
    IntMatrix rels = doc.contains("relations") ? matrix_from_json(doc["relations"], "$.relations") : IntMatrix(0, gens);
    if (rels.cols() != gens) throw SchemaError("$.relations", "expected " + std::to_string(gens) + " columns");
    IntMatrix t = matrix_from_json(field(doc, "involution", "$"), "$.involution");
    if (t.rows() != gens || t.cols() != gens) throw SchemaError("$.involution", "expected a square matrix of size " + std::to_string(gens));
    c.ring.module = InvolutiveModule(Presentation(gens, rels), t);
    const json& mult = array_field(doc, "multiplication", "$");
    if (mult.size() != gens * gens) throw SchemaError("$.multiplication", "expected generators^2 products");
    for (std::size_t i = 0; i < mult.size(); ++i) {
        const std::string p = at("$.multiplication", i);
        if (!mult[i].is_array() || mult[i].size() != gens) throw SchemaError(p, "expected a coordinate vector");
        IntVector v;
        for (std::size_t k = 0; k < gens; ++k) v.push_back(integer(mult[i][k], at(p, k)));
        c.ring.mult.push_back(std::move(v));
    }
    const json& unit = array_field(doc, "unit", "$");
    if (unit.size() != gens) throw SchemaError("$.unit", "expected a coordinate vector");
    for (std::size_t k = 0; k < gens; ++k) c.ring.unit.push_back(integer(unit[k], at("$.unit", k)));
    if (doc.contains("expected")) {
        const json& e = doc["expected"];
        c.expected_plus = group_from_json(field(e, "h_plus", "$.expected"), "$.expected.h_plus");
        c.expected_minus = group_from_json(field(e, "h_minus", "$.expected"), "$.expected.h_minus");
    }
    if (std::string v = c.ring.violation(); !v.empty()) throw SchemaError("$", "invariant violated: " + v);
    return c;
}

json tate_case_to_json(const TateCase& c) {
    json d = document("involutive_ring");
    const std::size_t n = c.ring.gens();
    d["generators"] = n;
    d["relations"] = matrix_to_json(c.ring.module.group.rels);
    d["involution"] = matrix_to_json(c.ring.module.T);
    json mult = json::array();
    for (const auto& v : c.ring.mult) {
        json r = json::array();
        for (const auto& x : v) r.push_back(int_json(x));
        mult.push_back(r);
    }
    d["multiplication"] = mult;
    json unit = json::array();
    for (const auto& x : c.ring.unit) unit.push_back(int_json(x));
    d["unit"] = unit;
    if (c.expected_plus && c.expected_minus)
        d["expected"] = {{"h_plus", group_to_json(*c.expected_plus)}, {"h_minus", group_to_json(*c.expected_minus)}};
    return d;
}

// ---------------------------------------------------------------------------
// Bundled documents

namespace {

json b13_document() {
    json d = document("cohomology_table");
    d["table"] = cohomology_to_json(b13_cohomology());
    return d;
}

json dim7_document(const std::vector<Dim7Row>& rows) {
    json d = document("dim7_table"), r = json::array();
    for (const auto& row : rows) r.push_back({{"table", cohomology_to_json(row.table)}, {"expected", verdict_to_json(row.expected)}});
    d["rows"] = r;
    return d;
}

std::vector<Dim7Row> builtin_dim7_rows() {
    std::vector<Dim7Row> out;
    for (auto& t : dim7_table()) {
        Verdict v = t.name == "Wu" ? Verdict::not_surjective : Verdict::surjective;
        out.push_back({std::move(t), v});
    }
    return out;
}

json sphere_document(const std::vector<SphereCase>& cases) {
    json d = document("sphere_theorem_tuples"), arr = json::array();
    for (const auto& c : cases) {
        json e{{"dims", c.dims}};
        if (c.ko_trivial) e["ko_trivial"] = *c.ko_trivial;
        if (c.verdict) e["verdict"] = verdict_to_json(*c.verdict);
        arr.push_back(e);
    }
    d["cases"] = arr;
    return d;
}

std::vector<SphereCase> builtin_sphere_cases() {
    const Verdict S = Verdict::surjective, U = Verdict::undetermined;
    std::vector<SphereCase> out;
    // Products with trivial reduced KO.
    for (std::vector<int> d : {std::vector<int>{3}, {5}, {6}, {7}, {11}, {13}, {14}, {15}, {3, 3}, {5, 6}, {6, 7},
                               {7, 7}, {7, 7, 7}})
        out.push_back({d, true, S});
    for (std::vector<int> d : {std::vector<int>{1}, {2}, {4}, {8}, {3, 5}, {4, 4}}) out.push_back({d, false, std::nullopt});
    out.push_back({{2, 2, 2}, std::nullopt, S});
    out.push_back({{8, 4, 4}, std::nullopt, S});
    out.push_back({{4, 4, 3}, std::nullopt, U});
    out.push_back({{2, 6}, std::nullopt, U});
    out.push_back({{2, 6, 8}, std::nullopt, U});
    return out;
}

json flag_document(const FlagCatalog& c) {
    json d = document("flag_catalog"), f = json::array();
    for (const auto& s : c.factors)
        f.push_back({{"name", s.name}, {"family", std::string(1, s.family)}, {"rank", s.rank}, {"b_C", s.b_C},
                     {"b_R", s.b_R}, {"b_H", s.b_H}, {"conjugation_trivial", s.conjugation_trivial}});
    d["factors"] = f;
    d["surjective_products"] = c.surjective_products;
    return d;
}

FlagCatalog builtin_flag_catalog() {
    return {standard_flag_catalog(8),
            {{"SU(2)"}, {"SU(3)"}, {"SU(4)"}, {"SU(5)"}, {"SU(7)"}, {"Spin(7)"}, {"G2"},
             {"SU(2)", "SU(2)"}, {"SU(2)", "SU(2)", "SU(2)"}, {"SU(3)", "SU(3)"}, {"SU(3)", "SU(3)", "SU(3)"},
             {"SU(3)", "SU(4)"}, {"SU(3)", "SU(5)"}, {"G2", "SU(3)"}}};
}

json coefficient_document(const std::vector<CoefficientRow>& rows) {
    json d = document("coefficient_rows"), arr = json::array();
    for (const auto& r : rows) {
        json per = json::array();
        for (std::size_t i = 0; i < r.period.size(); ++i) per.push_back(group_token(r.at(-static_cast<int>(i))));
        arr.push_back({{"theory", to_string(r.theory)}, {"period", per}});
    }
    d["rows"] = arr;
    return d;
}

}  // namespace

const std::vector<std::string>& bundled_file_names() {
    static const std::vector<std::string> names{"b13_cohomology.json", "coefficient_rows.json", "dim7_table.json",
                                                "flag_catalog.json", "sphere_theorem_tuples.json"};
    return names;
}

json bundled_document(const std::string& name) {
    if (name == "b13_cohomology.json") return b13_document();
    if (name == "dim7_table.json") return dim7_document(builtin_dim7_rows());
    if (name == "sphere_theorem_tuples.json") return sphere_document(builtin_sphere_cases());
    if (name == "flag_catalog.json") return flag_document(builtin_flag_catalog());
    if (name == "coefficient_rows.json") return coefficient_document({coefficient_row(Theory::K), coefficient_row(Theory::KO)});
    throw SchemaError(name, "not a bundled data file");
}

json reserialize(const std::string& name, const json& doc) {
    if (name == "b13_cohomology.json") {
        json d = document("cohomology_table");
        d["table"] = cohomology_to_json(cohomology_document_from_json(doc));
        return d;
    }
    if (name == "dim7_table.json") return dim7_document(dim7_rows_from_json(doc));
    if (name == "sphere_theorem_tuples.json") return sphere_document(sphere_cases_from_json(doc));
    if (name == "flag_catalog.json") return flag_document(flag_catalog_from_json(doc));
    if (name == "coefficient_rows.json") return coefficient_document(coefficient_rows_from_json(doc));
    throw SchemaError(name, "not a bundled data file");
}

std::filesystem::path data_dir(const std::optional<std::string>& override_dir) {
    if (override_dir && !override_dir->empty()) return *override_dir;
    if (const char* env = std::getenv("KRING_DATA_DIR"); env && *env) return env;
    return KRING_DATA_DIR;
}

}  // namespace kring::io
