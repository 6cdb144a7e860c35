// modqm: reproducible 1D quantum experiments around modular momentum,
// deterministic operators, and pre/post-selected weak measurements.
//
// Subcommands:
//   interfere      two-packet interference: densities, fringe spacing, shift
//   modular        translation-operator harmonics, folded momentum
//                  distribution, nonlocal equation of motion, classical contrast
//   weak-ensemble  Monte Carlo weak-measurement histogram with post-selection
//   detops         deterministic-operator sets and the two-slit sigma algebra
//   weak-value     one-shot weak value from serialized states
//
// Every subcommand reads a flat key=value (or JSON) config, accepts
// --set key=value overrides, writes CSV/JSON into --out (default $MODQM_OUT
// or ./out), and exits 0 only if all configured tolerances pass.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "modqm/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"modqm: modular-momentum quantum laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    long long threads = -1;
    std::vector<std::string> sets;

    const std::map<std::string, std::string> commands = {
        {"interfere", "two-packet interference densities and fringe metrics"},
        {"modular", "modular momentum harmonics, folding, equation of motion, contrast"},
        {"weak-ensemble", "Monte Carlo weak-measurement histogram"},
        {"detops", "deterministic operator sets and the sigma algebra"},
        {"weak-value", "weak value of an operator between serialized states"}};

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "config file (key=value lines or flat JSON)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "random seed (64-bit)");
        sub->add_option("--threads", threads, "worker threads, 0 = all cores");
        sub->add_option("--set", sets, "override key=value (repeatable)");
        subs[name] = sub;
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        try {
            std::vector<std::string> overrides = sets;
            if (!out_dir.empty()) overrides.push_back("out=" + out_dir);
            if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));
            if (threads >= 0) overrides.push_back("threads=" + std::to_string(threads));
            modqm::RunConfig cfg =
                modqm::build_config(modqm::schema_for(name), config_path, overrides);
            modqm::CommandResult res = modqm::run_command(name, cfg);
            if (res.exit_code == 2)
                std::cerr << res.report.dump(2) << "\n";
            else
                std::cout << res.report.dump(2) << "\n";
            return res.exit_code;
        } catch (const std::exception& e) {
            modqm::json err = {{"error", {{"command", name}, {"message", e.what()}}}};
            std::cerr << err.dump(2) << "\n";
            return 2;
        }
    }
    return 2;
}
