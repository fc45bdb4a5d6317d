#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ampfsi/cli.hpp"
#include "ampfsi/parallel.hpp"

int main(int argc, char** argv) {
    namespace cli = ampfsi::cli;
    CLI::App app{"Stability analysis and model-problem drivers for partitioned fluid-structure coupling"};
    app.set_version_flag("--version", std::string(cli::kVersion));

    std::string command, config_path, out_path;
    int jobs = ampfsi::default_jobs();
    app.add_option("command", command, "Command to run")
        ->required()
        ->check(CLI::IsMember(cli::command_names()));
    app.add_option("--config", config_path, "JSON file with the command parameters")->required();
    app.add_option("--out", out_path, "Output file")->required();
    app.add_option("--jobs", jobs, "Worker threads (default: available cores)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage " << e.what() << "\n";
        return 1;
    }

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: io_error cannot read " << config_path << "\n";
        return 1;
    }
    std::stringstream text;
    text << in.rdbuf();

    cli::RunConfig cfg;
    try {
        cfg = cli::make_config(command, text.str(), out_path, jobs);
    } catch (const cli::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return cli::run(cfg, std::cerr);
}
