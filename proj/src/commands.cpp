#include "commands.hpp"

#include "kring/berger.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace kring::cli {

std::size_t Report::mismatches() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.ok(); }));
}

std::string Report::text() const {
    std::ostringstream out;
    out << "# " << command << "\n";
    for (const auto& e : entries) {
        out << e.key << ": " << e.value;
        if (e.expected) out << (e.ok() ? "  [ok]" : "  [MISMATCH, expected " + *e.expected + "]");
        out << "\n";
    }
    out << "mismatches: " << mismatches() << "\n";
    return out.str();
}

io::json Report::to_json() const {
    io::json arr = io::json::array();
    for (const auto& e : entries) {
        io::json j{{"key", e.key}, {"value", e.value}, {"ok", e.ok()}};
        j["expected"] = e.expected ? io::json(*e.expected) : io::json(nullptr);
        arr.push_back(j);
    }
    return {{"schema_version", io::kSchemaVersion}, {"kind", "report"}, {"command", command},
            {"entries", arr}, {"mismatches", mismatches()}};
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return io::canonical_dump(to_json());
    return text();
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple_name(const std::vector<int>& dims) {
    std::string s;
    for (int n : dims) s += (s.empty() ? "" : " x ") + ("S^" + std::to_string(n));
    return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
    return s;
}

io::json load(const Options& opt, const std::string& name) { return io::read_json_file(io::data_dir(opt.data_dir) / name); }

void add_sphere_entries(Report& rep, const std::vector<int>& dims, const std::optional<io::SphereCase>& known) {
    const std::string name = tuple_name(dims);
    const bool by_residues = sphere_ko_trivial_by_residues(dims);
    const bool by_ahss = sphere_ko_trivial_by_ahss(dims);
    rep.add(name + ": paths agree", yes_no(by_residues == by_ahss), "yes");
    std::optional<std::string> exp_trivial, exp_verdict;
    if (known && known->ko_trivial) exp_trivial = yes_no(*known->ko_trivial);
    if (known && known->verdict) exp_verdict = to_string(*known->verdict);
    rep.add(name + ": reduced KO trivial", yes_no(by_ahss), exp_trivial);
    const SurjectivityVerdict v = sphere_tuple_scsq(dims);
    rep.add(name + ": verdict", to_string(v.verdict), exp_verdict);
    if (!v.rule.empty()) rep.add(name + ": rule", v.rule);
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string group_entry(const std::optional<FinAbGroup>& g) {
    return g ? g->str() : std::string();
}

}  // namespace

Report spheres_check(const std::vector<int>& dims, const Options& opt) {
    Report rep{"spheres check", {}};
    const auto cases = io::sphere_cases_from_json(load(opt, "sphere_theorem_tuples.json"));
    if (dims.empty()) {
        for (const auto& c : cases) add_sphere_entries(rep, c.dims, c);
        return rep;
    }
    std::optional<io::SphereCase> known;
    for (const auto& c : cases)
        if (sorted(c.dims) == sorted(dims)) known = c;
    add_sphere_entries(rep, dims, known);
    return rep;
}

Report flag_check(const std::vector<std::string>& names, const Options& opt) {
    Report rep{"flag check", {}};
    const io::FlagCatalog cat = io::flag_catalog_from_json(load(opt, "flag_catalog.json"));
    std::vector<SimpleFactorData> factors;
    for (const auto& n : names) {
        auto it = std::find_if(cat.factors.begin(), cat.factors.end(), [&](const auto& f) { return f.name == n; });
        if (it == cat.factors.end()) throw io::SchemaError("flag check", "unknown factor '" + n + "'");
        factors.push_back(*it);
    }
    std::vector<std::string> key = names;
    std::sort(key.begin(), key.end());
    bool listed = false;
    for (auto p : cat.surjective_products) {
        std::sort(p.begin(), p.end());
        listed = listed || p == key;
    }
    const SurjectivityVerdict v = flag_surjective(factors);
    rep.add("product", join(key, " x "));
    rep.add("verdict", to_string(v.verdict), to_string(listed ? Verdict::surjective : Verdict::not_surjective));
    rep.add("rule", v.rule);
    rep.add("counts", v.detail);
    return rep;
}

Report flag_enumerate(int max_factors, const Options& opt) {
    Report rep{"flag enumerate", {}};
    const io::FlagCatalog cat = io::flag_catalog_from_json(load(opt, "flag_catalog.json"));
    std::set<std::vector<std::string>> expected;
    for (auto p : cat.surjective_products) {
        std::sort(p.begin(), p.end());
        if (static_cast<int>(p.size()) <= max_factors) expected.insert(p);
    }
    const auto found = enumerate_flag_products(cat.factors, max_factors);
    std::set<std::vector<std::string>> got;
    for (const auto& p : found) got.insert(p.names());
    rep.add("count", std::to_string(found.size()), std::to_string(expected.size()));
    for (const auto& p : found) rep.add("surjective", p.name());
    for (const auto& p : expected)
        if (!got.count(p)) rep.add("missing", join(p, " x "), "");
    for (const auto& p : got)
        if (!expected.count(p)) rep.add("unexpected", join(p, " x "), "");
    return rep;
}

Report dim7_table_report(const Options& opt) {
    Report rep{"dim7 table", {}};
    for (const auto& row : io::dim7_rows_from_json(load(opt, "dim7_table.json"))) {
        const SurjectivityVerdict v = dim7_realification_surjective(row.table);
        rep.add(row.table.name, to_string(v.verdict), to_string(row.expected));
    }
    const S2WuAnalysis a = s2_times_wu();
    rep.add("S^2 x Wu: criterion", to_string(a.criterion.verdict), to_string(Verdict::undetermined));
    rep.add("S^2 x Wu: coker red", a.reduction_cokernel.str(), "Z_2");
    rep.add("S^2 x Wu: w_2 generates", yes_no(a.w2_generates), "yes");
    rep.add("S^2 x Wu: verdict", to_string(a.verdict.verdict), to_string(Verdict::not_surjective));
    return rep;
}

Report tate_compute(const std::string& file, const Options&) {
    Report rep{"tate compute", {}};
    const io::TateCase c = io::tate_case_from_json(io::read_json_file(file));
    const FinAbGroup plus = h_plus(c.ring.module), minus = h_minus(c.ring.module);
    rep.add("h+", plus.str(), c.expected_plus ? std::optional(group_entry(c.expected_plus)) : std::nullopt);
    rep.add("h-", minus.str(), c.expected_minus ? std::optional(group_entry(c.expected_minus)) : std::nullopt);
    rep.add("2 kills h+ and h-", yes_no(plus.killed_by(2) && minus.killed_by(2)), "yes");
    return rep;
}

Report quotient_run(const std::string& file, const Options& opt) {
    Report rep{"quotient run", {}};
    io::PresentationCase c = io::presentation_from_json(io::read_json_file(file));
    LaurentIdealPresentation p = c.presentation.eliminable.empty() ? c.presentation : eliminate_units(c.presentation);
    const int window = opt.window != kDefaultWindow ? opt.window : c.window;
    const AdditiveStructure s = additive_structure(p, window);
    rep.add("variables", join(p.names, ", "));
    rep.add("window", std::to_string(s.window));
    rep.add("group", s.group.str(), c.expected ? std::optional(c.expected->str()) : std::nullopt);
    rep.add("next window agrees", yes_no(s.next_window_group == s.group), "yes");
    for (std::size_t i = 0; i < s.basis_reps.size(); ++i) rep.add("summand " + std::to_string(i), s.basis_reps[i].str(p.names));
    return rep;
}

Report ahss_pages(const std::string& file, Theory theory, const Options&) {
    Report rep{"ahss pages", {}};
    const CohomologyTable table = io::cohomology_document_from_json(io::read_json_file(file));
    const Page e2 = build_e2(table, theory);
    rep.add("space", table.name);
    rep.add("theory", to_string(theory));
    auto grid = [&](const Page& page) {
        for (int q = 0; q >= page.q_min; --q) {
            std::vector<std::string> row;
            for (int p = 0; p <= page.dimension; ++p) row.push_back(page.group(p, q).str());
            rep.add("E" + std::to_string(page.index) + " q=" + std::to_string(q), join(row, " | "));
        }
    };
    grid(e2);
    if (theory == Theory::KO) {
        const Page e3 = d2_ko(e2);
        for (const auto& [pq, d] : e3.differentials)
            rep.add("d2 from (" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")",
                    e2.group(pq.first, pq.second).str() + " -> " + e2.group(pq.first + 2, pq.second - 1).str() +
                        ", cycle index " + e3.at(pq.first, pq.second).cycle_index.str());
        rep.add("d2 squares to zero", yes_no(differentials_square_to_zero(e3)), "yes");
        grid(e3);
    }
    return rep;
}

Report berger_run(const Options& opt) {
    Report rep{"berger run", {}};
    const BergerModels m = build_berger_models(opt.window);
    rep.add("K", m.k.quotient.group.str(), "Z^3 + Z_5^2");
    rep.add("KO", Presentation::cyclic(m.ko.order).group().str(), "Z^2 + Z_10");
    rep.add("KSp", m.ksp.group().str(), "Z^2 + Z_5");
    for (const auto& c : verify_structure_identities(m))
        rep.add("identity " + c.name, c.holds ? "holds" : "fails at " + c.witness, "holds");

    const PhiMap phi = standard_phi(m);
    const PhiLawReport laws = check_phi_laws(m, phi, opt.seed);
    const std::string n = std::to_string(laws.pairs);
    rep.add("phi multiplicative", std::to_string(laws.multiplicative) + "/" + n, n + "/" + n);
    rep.add("phi additive law", std::to_string(laws.additive) + "/" + n, n + "/" + n);
    rep.add("phi complexification", std::to_string(laws.complexification) + "/" + n, n + "/" + n);
    rep.add("phi conjugation", std::to_string(laws.conjugation) + "/" + n, n + "/" + n);
    rep.add("phi exterior square", std::to_string(laws.exterior_square) + "/" + n, n + "/" + n);
    rep.add("phi well defined", std::to_string(laws.well_defined) + "/" + std::to_string(laws.decompositions),
            std::to_string(laws.decompositions) + "/" + std::to_string(laws.decompositions));
    rep.add("phi reduced image in im r", yes_no(laws.image_in_image_of_r), "yes");
    rep.add("phi misses w", yes_no(laws.misses_w), "yes");

    const ImageAlphaReport img = image_alpha_O(m, phi, opt.seed);
    rep.add("image of alpha_O: index", img.index().str(), "2");
    rep.add("image of alpha_O: subring", yes_no(img.subring), "yes");
    rep.add("image of alpha_O annihilates w", yes_no(img.annihilates_w), "yes");
    rep.add("coker of reduced realification", reduced_realification_cokernel(m).str(), "Z_2");

    for (int sign : {1, -1}) {
        const PontryaginScan s = pontryagin_scan(sign);
        std::vector<std::string> hits;
        for (const auto& h : s.trivial_nonzero)
            hits.push_back("(" + std::to_string(h[0]) + "," + std::to_string(h[1]) + "," + std::to_string(h[2]) + ")");
        rep.add("Pontryagin-trivial classes, sign " + std::to_string(sign), join(hits, " "), "(0,0,1)");
    }

    BottCycle cycle = b13_bott_cycle();
    attach_realification(cycle, m);
    std::map<std::string, int> counts;
    for (const auto& c : bott_segment_check(cycle)) ++counts[to_string(c.status)];
    rep.add("Bott nodes exact", std::to_string(counts["exact"]), "18");
    rep.add("Bott nodes consistency-checked", std::to_string(counts["consistency-checked"]), "4");
    rep.add("Bott nodes unchecked", std::to_string(counts["unchecked"]), "2");
    rep.add("Bott nodes violated", std::to_string(counts["violated"]), "0");
    return rep;
}

Report data_check(const Options& opt) {
    Report rep{"data check", {}};
    const auto dir = io::data_dir(opt.data_dir);
    for (const auto& name : io::bundled_file_names()) {
        std::ifstream in(dir / name, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        rep.add(name + ": matches generator", yes_no(text == io::canonical_dump(io::bundled_document(name))), "yes");
        std::string round;
        try {
            round = yes_no(text == io::canonical_dump(io::reserialize(name, io::read_json_file(dir / name))));
        } catch (const io::SchemaError& e) {
            round = e.what();
        }
        rep.add(name + ": round trip", round, "yes");
    }
    return rep;
}

void data_write(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& name : io::bundled_file_names()) {
        std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
        out << io::canonical_dump(io::bundled_document(name));
        if (!out) throw std::runtime_error("cannot write " + name);
    }
}

}  // namespace kring::cli
