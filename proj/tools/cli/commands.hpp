// commands.hpp: the randbath subcommands as pure functions of a RunConfig.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "output.hpp"

namespace randbath::cli {

Table cmd_decoherence(const RunConfig& config);
Table cmd_gp(const RunConfig& config);
Table cmd_mc(const RunConfig& config);
Table cmd_pdist(const RunConfig& config);

struct FigureFile {
    std::string name;     // file name inside the output directory
    std::string command;  // subcommand that produced it
    RunConfig config;
    Table table;
};

struct Figure {
    int number{0};
    std::string title;
    std::vector<FigureFile> files;
    std::vector<std::string> notes;
};

// Runs the fixed parameter set of figure `number` (1..7). Only `threads` and
// `seed` are taken from `base`. Throws ConfigError for other numbers.
Figure build_figure(int number, const RunConfig& base);

// Writes each table as CSV plus fig<N>.json metadata into `dir`.
void write_figure(const Figure& figure, const std::filesystem::path& dir);

nlohmann::json run_metadata(const std::string& command, const RunConfig& config);

}  // namespace randbath::cli
