// lifshitz: Casimir free energy, thermal corrections and low-temperature law checks.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "casimir/commands.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

int main(int argc, char** argv) {
    CLI::App app{"Casimir free energy between metal plates with nonlocal response"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    auto add_config_command = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "configuration file")->required();
        sub->add_option("--set", overrides, "override section.key=value (repeatable)");
        return sub;
    };
    auto* compute = add_config_command("compute", "one row per (a, T, model) grid point");
    auto* sweep = add_config_command("sweep", "grid sweep with a resumable checkpoint file");
    auto* verify = add_config_command("verify-nernst", "fit the low-temperature laws and report PASS/FAIL");

    FitOptions fit_opt;
    auto* fit = app.add_subcommand("fit", "power-law fit of one column of an output file");
    fit->add_option("input", fit_opt.input, "csv file written by compute or sweep")->required();
    fit->add_option("--column", fit_opt.column, "column to fit against T_K")->capture_default_str();
    fit->add_option("--model", fit_opt.model, "keep rows of this model");
    fit->add_option("--a", fit_opt.a, "keep rows at this separation (m)");
    fit->add_option("--exponent", fit_opt.exponent, "also fit the amplitude at this exponent");
    fit->add_option("--T-min", fit_opt.T_min, "lower end of the window (K)");
    fit->add_option("--T-max", fit_opt.T_max, "upper end of the window (K)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code::config;
    }

    try {
        if (fit->parsed()) return cmd_fit(fit_opt, std::cout, std::cerr);
        const auto rc = load_run_config(config_path, overrides);
        if (compute->parsed()) return cmd_compute(rc, std::cout, std::cerr);
        if (sweep->parsed()) return cmd_sweep(rc, std::cerr);
        if (verify->parsed()) return cmd_verify_nernst(rc, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_code::config;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return exit_code::convergence;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_code::config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
