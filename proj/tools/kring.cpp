// kring: command-line front end. Exit status is 0 when every computed value
// matches its reference, 1 on a mismatch, 2 on bad input.

#include "commands.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

int main(int argc, char** argv) {
    using namespace kring;
    CLI::App app{"K-theory of homogeneous spaces: quotient rings, Tate groups, spectral sequences, criteria"};
    app.require_subcommand(1);

    cli::Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--seed", opt.seed, "Seed for randomized checks")->capture_default_str();
    app.add_option("--window", opt.window, "Exponent window for quotient computations")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    std::string data_dir;
    app.add_option("--data-dir", data_dir, "Directory of bundled data (default: $KRING_DATA_DIR, then the source tree)");

    std::function<cli::Report()> run;

    auto* spheres = app.add_subcommand("spheres", "Products of spheres")->require_subcommand(1);
    std::vector<int> dims;
    auto* sc = spheres->add_subcommand("check", "Check a tuple of sphere dimensions, or every bundled tuple");
    sc->add_option("dims", dims, "Sphere dimensions")->check(CLI::PositiveNumber);
    sc->callback([&] { run = [&] { return cli::spheres_check(dims, opt); }; });

    auto* flag = app.add_subcommand("flag", "Flag manifolds G/T")->require_subcommand(1);
    std::vector<std::string> factors;
    auto* fc = flag->add_subcommand("check", "Check a product of simple factors, e.g. 'SU(3)' G2");
    fc->add_option("factors", factors, "Factor names from the catalog")->required();
    fc->callback([&] { run = [&] { return cli::flag_check(factors, opt); }; });
    int max_factors = 3;
    auto* fe = flag->add_subcommand("enumerate", "List products whose flag manifold passes the criterion");
    fe->add_option("--max-factors", max_factors, "Largest number of factors")->check(CLI::Range(1, 8))->capture_default_str();
    fe->callback([&] { run = [&] { return cli::flag_enumerate(max_factors, opt); }; });

    auto* dim7 = app.add_subcommand("dim7", "Homogeneous spaces of dimension at most 7")->require_subcommand(1);
    dim7->add_subcommand("table", "Verdicts for the bundled table")->callback([&] {
        run = [&] { return cli::dim7_table_report(opt); };
    });

    std::string file;
    auto* tate = app.add_subcommand("tate", "Tate cohomology of a ring with involution")->require_subcommand(1);
    auto* tc = tate->add_subcommand("compute", "Compute h+ and h- of an involutive ring file");
    tc->add_option("file", file, "JSON file of kind involutive_ring")->required()->check(CLI::ExistingFile);
    tc->callback([&] { run = [&] { return cli::tate_compute(file, opt); }; });

    auto* quotient = app.add_subcommand("quotient", "Additive structure of a Laurent quotient")->require_subcommand(1);
    auto* qr = quotient->add_subcommand("run", "Compute the additive group of a presentation file");
    qr->add_option("file", file, "JSON file of kind laurent_presentation")->required()->check(CLI::ExistingFile);
    qr->callback([&] { run = [&] { return cli::quotient_run(file, opt); }; });

    auto* ahss = app.add_subcommand("ahss", "Atiyah-Hirzebruch spectral sequence")->require_subcommand(1);
    std::string theory = "KO";
    auto* ap = ahss->add_subcommand("pages", "Print E2, and E3 for KO, of a cohomology table file");
    ap->add_option("file", file, "JSON file of kind cohomology_table")->required()->check(CLI::ExistingFile);
    ap->add_option("--theory", theory, "K or KO")->check(CLI::IsMember({"K", "KO"}))->capture_default_str();
    ap->callback([&] {
        run = [&] { return cli::ahss_pages(file, theory == "K" ? Theory::K : Theory::KO, opt); };
    });

    auto* berger = app.add_subcommand("berger", "The 13-dimensional Berger space")->require_subcommand(1);
    berger->add_subcommand("run", "Build the K and KO models and check every stated property")->callback([&] {
        run = [&] { return cli::berger_run(opt); };
    });

    auto* data = app.add_subcommand("data", "Bundled data files")->require_subcommand(1);
    data->add_subcommand("check", "Compare the data files with their generators")->callback([&] {
        run = [&] { return cli::data_check(opt); };
    });
    std::string out_dir;
    auto* dw = data->add_subcommand("write", "Regenerate the data files");
    dw->add_option("dir", out_dir, "Output directory")->required();
    dw->callback([&] {
        run = [&] {
            cli::data_write(out_dir);
            cli::Report rep{"data write", {}};
            for (const auto& n : io::bundled_file_names()) rep.add("wrote", n);
            return rep;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!data_dir.empty()) opt.data_dir = data_dir;

    try {
        const cli::Report rep = run();
        std::cout << rep.render(opt.format);
        return rep.mismatches() == 0 ? 0 : 1;
    } catch (const io::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
