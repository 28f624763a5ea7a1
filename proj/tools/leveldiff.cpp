// leveldiff: leveled differential performance testing for JIT runtimes.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "leveldiff/cli.hpp"

namespace fs = std::filesystem;
using namespace leveldiff;

int main(int argc, char **argv)
{
    CLI::App app{"Leveled differential performance testing for JIT-compiled runtimes"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run a campaign over a corpus manifest");
    std::string campaign_path, manifest_path;
    bool fail_on_candidates = false, verbose = false;
    run->add_option("campaign", campaign_path, "Campaign file (JSON)")->required();
    run->add_option("manifest", manifest_path, "Corpus manifest (JSON)")->required();
    run->add_flag("--fail-on-candidates", fail_on_candidates, "Exit 1 when unique candidates remain");
    run->add_flag("-v,--verbose", verbose, "Print every measurement");

    auto *report = app.add_subcommand("report", "Summarize the artifacts of one or more runs");
    std::string report_dir;
    bool as_json = false;
    report->add_option("dir", report_dir, "Run output directory")->required();
    report->add_flag("--json", as_json, "Print the machine-readable summary");

    auto *simulate = app.add_subcommand("simulate", "Generate a synthetic corpus for the simulated runtime");
    std::string spec_path, sim_out;
    simulate->add_option("spec", spec_path, "Synthetic corpus spec (JSON)")->required();
    simulate->add_option("-o,--out", sim_out, "Output directory (default: next to the spec)");

    auto *validate = app.add_subcommand("validate", "Check a campaign file");
    std::string validate_path;
    validate->add_option("campaign", validate_path, "Campaign file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            cli::run_options options;
            options.fail_on_candidates = fail_on_candidates;
            const auto result = cli::cmd_run(campaign_path, manifest_path, options, verbose ? &std::cerr : nullptr);
            if (result.exit_code == cli::exit_config_error || result.exit_code == cli::exit_executor_unavailable) {
                std::cerr << "leveldiff: " << result.message << '\n';
                return result.exit_code;
            }
            std::cout << cli::render_text(cli::build_report(result.output_dir));
            std::cerr << "leveldiff: " << result.message << " (artifacts in " << result.output_dir.string() << ")\n";
            return result.exit_code;
        }
        if (*report) {
            const auto reports = cli::build_report(report_dir);
            std::cout << (as_json ? cli::render_summary_json(reports) : cli::render_text(reports));
            return cli::exit_ok;
        }
        if (*simulate) {
            const fs::path out = sim_out.empty() ? fs::path(spec_path).parent_path() : fs::path(sim_out);
            cli::cmd_simulate(spec_path, out);
            std::cout << "wrote manifest.json, models.json, ground_truth.json, campaign.json to "
                      << (out.empty() ? fs::path(".") : out).string() << '\n';
            return cli::exit_ok;
        }
        if (*validate) {
            cli::validate_campaign(cli::load_campaign(validate_path));
            std::cout << "ok\n";
            return cli::exit_ok;
        }
    } catch (const error &e) {
        std::cerr << "leveldiff: " << to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == errc::missing_artifacts ? 1 : cli::exit_config_error;
    }
    return cli::exit_ok;
}
