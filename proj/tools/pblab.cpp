#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pblab/kernels.hpp"
#include "pblab/runner.hpp"

using namespace pblab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path, "");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void report_config_error(const ConfigError& e) {
    std::cerr << "config error";
    if (e.line > 0) std::cerr << " at line " << e.line << ", column " << e.col;
    if (!e.field.empty()) std::cerr << " [" << e.field << "]";
    std::cerr << ": " << e.what() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    CLI::App app{"pblab: numerical checks for pseudo-boson models"};
    app.require_subcommand(1);

    std::string cfg_path, out_path, format;
    bool timings = false;
    auto* run_cmd = app.add_subcommand("run", "run the configured suites and write a report");
    run_cmd->add_option("config", cfg_path, "configuration file")->required();
    run_cmd->add_option("-o,--out", out_path, "output file (overrides the config)");
    run_cmd->add_option("-f,--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    run_cmd->add_flag("--timings", timings, "print per-suite wall time to stderr");

    std::string val_path;
    auto* val_cmd = app.add_subcommand("validate", "parse a configuration and print its normalized form");
    val_cmd->add_option("config", val_path, "configuration file")->required();

    auto* list_cmd = app.add_subcommand("list-models", "list the known models and their default suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*list_cmd) {
            for (const auto& m : model_names()) {
                std::cout << m << ":";
                for (const auto& s : suites_for(m)) std::cout << " " << s;
                std::cout << "\n";
            }
            return 0;
        }
        if (*val_cmd) {
            RunConfig c = parse_config(slurp(val_path));
            std::cout << canonical_dump(config_to_json(c));
            return 0;
        }
        RunConfig c = parse_config(slurp(cfg_path));
        if (!out_path.empty()) c.output_path = out_path;
        if (!format.empty()) c.format = format == "csv" ? Format::CSV : Format::JSON;
        RunReport r = run(c);
        std::string text = emit(r, c.format);
        if (c.output_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(c.output_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << c.output_path << "\n";
                return 2;
            }
            out << text;
        }
        if (timings)
            for (const auto& [name, secs] : r.timings) std::cerr << name << " " << secs << " s\n";
        for (const auto& f : r.failures) {
            std::cerr << "suite " << f << " failed";
            if (r.suites[f].contains("error")) std::cerr << ": " << r.suites[f]["error"].get<std::string>();
            std::cerr << "\n";
        }
        if (r.inconsistent) std::cerr << "inconsistent: bounded Riesz verdict but the resolution check failed\n";
        return r.exit_code();
    } catch (const ConfigError& e) {
        report_config_error(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
