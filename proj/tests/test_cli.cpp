#include "commands.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace {

using namespace kring;
using io::json;
namespace fs = std::filesystem;

const fs::path kSource = KRING_SOURCE_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "kring_cli_test";
    fs::create_directories(dir);
    std::ofstream(dir / name, std::ios::binary) << text;
    return dir / name;
}

cli::Options options() {
    cli::Options o;
    o.data_dir = (kSource / "data").string();
    return o;
}

TEST(Data, FilesMatchTheirGeneratorsByteForByte) {
    for (const auto& name : io::bundled_file_names())
        EXPECT_EQ(slurp(kSource / "data" / name), io::canonical_dump(io::bundled_document(name))) << name;
}

TEST(Data, ParseThenSerializeIsIdentity) {
    for (const auto& name : io::bundled_file_names()) {
        const json doc = io::read_json_file(kSource / "data" / name);
        EXPECT_EQ(io::canonical_dump(io::reserialize(name, doc)), slurp(kSource / "data" / name)) << name;
    }
    const json tate = io::read_json_file(kSource / "samples" / "tate_cp2.json");
    EXPECT_EQ(io::tate_case_to_json(io::tate_case_from_json(tate)), tate);
    const json pres = io::read_json_file(kSource / "samples" / "berger_presentation.json");
    EXPECT_EQ(io::presentation_to_json(io::presentation_from_json(pres)), pres);
}

TEST(Data, CheckCommandIsClean) { EXPECT_EQ(cli::data_check(options()).mismatches(), 0u); }

TEST(Schema, EmptyFileIsRejected) {
    EXPECT_THROW(io::read_json_file(scratch("empty.json", "")), io::SchemaError);
    EXPECT_THROW(io::read_json_file(scratch("blank.json", "  \n")), io::SchemaError);
    EXPECT_THROW(io::read_json_file(scratch("broken.json", "{\"kind\":")), io::SchemaError);
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const io::SchemaError& e) {
        return e.what();
    }
    return "";
}

TEST(Schema, ErrorsNameThePath) {
    json doc = io::bundled_document("dim7_table.json");
    doc["rows"][2]["expected"] = "maybe";
    EXPECT_EQ(error_of([&] { io::dim7_rows_from_json(doc); }), "$.rows[2].expected: unknown verdict 'maybe'");

    json g{{"free_rank", 0}, {"torsion", {4, 2}}};
    EXPECT_EQ(error_of([&] { io::group_from_json(g, "$.g"); }), "$.g.torsion: must be invariant factors d1 | d2 | ...");

    json other = io::bundled_document("flag_catalog.json");
    EXPECT_EQ(error_of([&] { io::dim7_rows_from_json(other); }), "$.kind: expected 'dim7_table'");

    other["schema_version"] = 2;
    EXPECT_EQ(error_of([&] { io::flag_catalog_from_json(other); }), "$.schema_version: unsupported version");

    json flags = io::bundled_document("flag_catalog.json");
    flags["surjective_products"][0] = {"SU(99)"};
    EXPECT_EQ(error_of([&] { io::flag_catalog_from_json(flags); }), "$.surjective_products[0][0]: unknown factor 'SU(99)'");
}

TEST(Schema, InvariantViolationsAreRejected) {
    json tate = io::read_json_file(kSource / "samples" / "tate_cp2.json");
    tate["involution"]["entries"][0][0] = 3;  // no longer an involution
    EXPECT_NE(error_of([&] { io::tate_case_from_json(tate); }).find("invariant violated"), std::string::npos);

    json table = io::bundled_document("b13_cohomology.json");
    table["table"]["integral"].erase(0);
    EXPECT_NE(error_of([&] { io::cohomology_document_from_json(table); }).find("invariant violated"), std::string::npos);
}

TEST(DataDir, OverrideThenEnvironment) {
    EXPECT_EQ(io::data_dir(std::string("/x")), fs::path("/x"));
    ::setenv("KRING_DATA_DIR", "/from-env", 1);
    EXPECT_EQ(io::data_dir(), fs::path("/from-env"));
    ::unsetenv("KRING_DATA_DIR");
    EXPECT_EQ(io::data_dir(), fs::path(KRING_DATA_DIR));
}

TEST(Report, MismatchesAndJson) {
    cli::Report r{"demo", {}};
    r.add("a", "1", "1");
    r.add("b", "2", "3");
    r.add("c", "free");
    EXPECT_EQ(r.mismatches(), 1u);
    EXPECT_EQ(r.text(), "# demo\na: 1  [ok]\nb: 2  [MISMATCH, expected 3]\nc: free\nmismatches: 1\n");
    const json j = r.to_json();
    EXPECT_EQ(j["mismatches"], 1);
    EXPECT_TRUE(j["entries"][2]["expected"].is_null());
    EXPECT_FALSE(j["entries"][1]["ok"]);
}

TEST(Commands, MismatchIsCounted) {
    json tate = io::read_json_file(kSource / "samples" / "tate_cp2.json");
    tate["expected"]["h_minus"] = {{"free_rank", 0}, {"torsion", {2}}};
    const fs::path f = scratch("wrong_expectation.json", io::canonical_dump(tate));
    EXPECT_EQ(cli::tate_compute(f.string(), options()).mismatches(), 1u);
}

TEST(Commands, UnknownFlagFactor) {
    EXPECT_THROW(cli::flag_check({"SU(3)", "Nope"}, options()), io::SchemaError);
    EXPECT_EQ(cli::flag_check({"SU(4)", "SU(3)"}, options()).mismatches(), 0u);
    EXPECT_EQ(cli::flag_check({"Sp(2)"}, options()).mismatches(), 0u);
}

// Golden outputs: set KRING_UPDATE_GOLDEN=1 to rewrite them.
void golden(const std::string& name, const cli::Report& rep, const std::string& format = "text") {
    const fs::path file = kSource / "tests" / "golden" / name;
    const std::string got = rep.render(format);
    if (const char* u = std::getenv("KRING_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        fs::create_directories(file.parent_path());
        std::ofstream(file, std::ios::binary) << got;
    }
    EXPECT_EQ(got, slurp(file)) << "golden " << name << " differs; rerun with KRING_UPDATE_GOLDEN=1 if intended";
    EXPECT_EQ(rep.mismatches(), 0u) << name;
}

TEST(Golden, Spheres) { golden("spheres_check.txt", cli::spheres_check({}, options())); }
TEST(Golden, SingleSphereTuple) { golden("spheres_check_4_4_3.txt", cli::spheres_check({4, 4, 3}, options())); }
TEST(Golden, FlagEnumerate) { golden("flag_enumerate_5.txt", cli::flag_enumerate(5, options())); }
TEST(Golden, Dim7) { golden("dim7_table.txt", cli::dim7_table_report(options())); }
TEST(Golden, Dim7Json) { golden("dim7_table.json", cli::dim7_table_report(options()), "json"); }
TEST(Golden, Tate) {
    golden("tate_hp2.txt", cli::tate_compute((kSource / "samples" / "tate_hp2.json").string(), options()));
}
TEST(Golden, Quotient) {
    golden("quotient_berger.txt",
           cli::quotient_run((kSource / "samples" / "berger_presentation.json").string(), options()));
}
TEST(Golden, AhssKO) {
    golden("ahss_b13_ko.txt", cli::ahss_pages((kSource / "data" / "b13_cohomology.json").string(), Theory::KO, options()));
}
TEST(Golden, AhssK) {
    golden("ahss_b13_k.txt", cli::ahss_pages((kSource / "data" / "b13_cohomology.json").string(), Theory::K, options()));
}
TEST(Golden, Berger) { golden("berger_run.txt", cli::berger_run(options())); }

}  // namespace
