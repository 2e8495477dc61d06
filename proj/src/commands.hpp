#pragma once

// Subcommands of the kring tool as plain functions returning a Report, so the
// tests can drive them without spawning a process.

#include "data_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kring::cli {

struct ReportEntry {
    std::string key, value;
    std::optional<std::string> expected;  // nothing to compare against when empty

    bool ok() const { return !expected || *expected == value; }
};

struct Report {
    std::string command;
    std::vector<ReportEntry> entries;

    void add(std::string key, std::string value, std::optional<std::string> expected = std::nullopt) {
        entries.push_back({std::move(key), std::move(value), std::move(expected)});
    }
    std::size_t mismatches() const;
    std::string text() const;
    io::json to_json() const;
    std::string render(const std::string& format) const;
};

struct Options {
    std::string format = "text";
    std::uint64_t seed = 20240611;
    int window = kDefaultWindow;
    std::optional<std::string> data_dir;
};

// With no dimensions, every tuple in the bundled sphere data is checked.
Report spheres_check(const std::vector<int>& dims, const Options& opt);
Report flag_check(const std::vector<std::string>& factors, const Options& opt);
Report flag_enumerate(int max_factors, const Options& opt);
Report dim7_table_report(const Options& opt);
Report tate_compute(const std::string& file, const Options& opt);
Report quotient_run(const std::string& file, const Options& opt);
Report ahss_pages(const std::string& file, Theory theory, const Options& opt);
Report berger_run(const Options& opt);
// Bundled files: each must equal its regenerated form byte for byte, and
// parsing then reserializing must reproduce it.
Report data_check(const Options& opt);
void data_write(const std::string& dir);

}  // namespace kring::cli
