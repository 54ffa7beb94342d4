#include <iostream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "loewner/cli.hpp"
#include "loewner/io.hpp"

int main(int argc, char** argv)
{
    using namespace loewner::cli;

    CLI::App app{"Loewner torus inequality checker for conformal torus metrics"};
    app.require_subcommand(1);

    RunConfig config;
    std::string grid = "256";
    std::string format = "json";

    auto const add = [&](char const* name, char const* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", config.input, "Input JSON spec")
            ->required();
        sub->add_option("--out", config.output, "Output path (default stdout)");
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        return sub;
    };
    add("reduce", "Reduce a lattice to its modulus tau");
    for (auto const& [name, help] :
         {std::pair{"analyze", "Full defect report for a metric spec"},
          std::pair{"systole", "Systole estimate with witness loop"},
          std::pair{"revolution", "Surface of revolution to metric, then "
                                  "analyze"},
          std::pair{"sweep", "Margins over a parameter grid (CSV)"}})
    {
        auto* sub = add(name, help);
        sub->add_option("--grid", grid, "Grid N or N,M (default 256)");
        if (std::string_view(name) == "analyze"
            || std::string_view(name) == "revolution")
        {
            sub->add_flag("--refine", config.refine,
                          "Also run at 2N x 2M and report differences");
        }
    }

    CLI11_PARSE(app, argc, argv);

    try
    {
        config.command = parse_command(app.get_subcommands().front()->get_name());
        parse_grid(grid, config);
    }
    catch (loewner::Error const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    if (config.command == Command::sweep && format == "json"
        && app.get_subcommands().front()->count("--format") == 0)
    {
        format = "csv";
    }
    config.format = format == "csv" ? Format::csv : Format::json;
    return run(config, std::cout, std::cerr);
}
