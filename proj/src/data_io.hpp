#pragma once

// JSON documents: parsing with errors that name the offending path, canonical
// serialization (sorted keys, two-space indent, trailing newline), and the
// bundled data files, which are generated from the in-code definitions.

#include "kring/ahss.hpp"
#include "kring/criteria.hpp"
#include "kring/quotient.hpp"
#include "kring/tate.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kring::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct SchemaError : std::runtime_error {
    SchemaError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what) {}
};

json read_json_file(const std::filesystem::path& file);
std::string canonical_dump(const json& doc);
// Checks schema_version and kind, returning the document for further parsing.
const json& expect_kind(const json& doc, const std::string& kind);

json group_to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const json& j, const std::string& path);
json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j, const std::string& path);
json verdict_to_json(Verdict v);
Verdict verdict_from_json(const json& j, const std::string& path);

json cohomology_to_json(const CohomologyTable& c);
CohomologyTable cohomology_from_json(const json& j, const std::string& path);

struct Dim7Row {
    CohomologyTable table;
    Verdict expected = Verdict::undetermined;
};
struct SphereCase {
    std::vector<int> dims;
    std::optional<bool> ko_trivial;
    std::optional<Verdict> verdict;
};
struct FlagCatalog {
    std::vector<SimpleFactorData> factors;
    std::vector<std::vector<std::string>> surjective_products;
};
struct PresentationCase {
    LaurentIdealPresentation presentation;
    int window = kDefaultWindow;
    std::optional<FinAbGroup> expected;
};
struct TateCase {
    InvolutiveRing ring;
    std::optional<FinAbGroup> expected_plus, expected_minus;
};

std::vector<Dim7Row> dim7_rows_from_json(const json& doc);
std::vector<SphereCase> sphere_cases_from_json(const json& doc);
FlagCatalog flag_catalog_from_json(const json& doc);
std::vector<CoefficientRow> coefficient_rows_from_json(const json& doc);
PresentationCase presentation_from_json(const json& doc);
TateCase tate_case_from_json(const json& doc);
CohomologyTable cohomology_document_from_json(const json& doc);

json presentation_to_json(const PresentationCase& c);
json tate_case_to_json(const TateCase& c);

// Bundled files by name, regenerated from code.
const std::vector<std::string>& bundled_file_names();
json bundled_document(const std::string& file_name);
// Parses a bundled document and serializes it back from the parsed objects.
json reserialize(const std::string& file_name, const json& doc);

// --data-dir, else $KRING_DATA_DIR, else the source tree's data/.
std::filesystem::path data_dir(const std::optional<std::string>& override_dir = std::nullopt);

}  // namespace kring::io
