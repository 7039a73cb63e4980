// lowrf: sweep-running command-line front end. Subcommands read an optional
// "key = value" config file; flags with the same names override it. Summary
// goes to stdout, data to CSV.

#include "lowrf/commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{
        "Numerical toolkit for low-complexity RF front ends of large antenna "
        "arrays: wirelessly synchronized direct-detection receivers and "
        "one-bit quantized uplinks.\n"
        "dB conventions: dd-sweep snr_db = 10*log10(rho/(B*N0)); "
        "onebit-sweep and mc-validate snr_db = 10*log10(rho) with unit-variance "
        "noise. p_lo_dbm and n0_dbm_per_hz are absolute dBm quantities.\n"
        "Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 validation "
        "gate failure."};
    app.require_subcommand(1);

    struct PendingRun {
        const lowrf::CommandSpec* spec = nullptr;
        std::string config_path;
        std::vector<std::pair<std::string, std::string>> values;
    };
    PendingRun pending;

    for (const auto& spec : lowrf::command_specs()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->add_option("--config")
            ->description("path to a key = value config file (flags override it)");
        for (const auto& key : spec.keys) {
            sub->add_option("--" + std::string(key.key))
                ->description(std::string(key.help) + " [default: " + key.default_value + "]");
        }
        sub->callback([sub, &pending, &spec] {
            pending.spec = &spec;
            for (const CLI::Option* opt : sub->get_options()) {
                if (opt->count() == 0 || opt->get_name().size() < 3) continue;
                const std::string name = opt->get_name().substr(2);  // strip "--"
                if (name == "config")
                    pending.config_path = opt->as<std::string>();
                else
                    pending.values.emplace_back(name, opt->as<std::string>());
            }
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        lowrf::KvMap overrides(pending.values.begin(), pending.values.end());
        const lowrf::KvMap kv = lowrf::resolve_config(*pending.spec, pending.config_path, overrides);
        return pending.spec->run(kv, std::cout);
    } catch (const lowrf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return lowrf::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return lowrf::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return lowrf::kExitNumericalError;
    }
}
