#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qecco/cli/runner.hpp"

using namespace qecco;

int main(int argc, char** argv) {
    CLI::App app{"variational learning of logical operations and noise-tailored encodings"};
    app.require_subcommand(1);
    cli::install_signal_handler();

    std::string config_path;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t jobs = 0;
    std::string out_dir;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config file");
        cmd->add_option("--runs", runs, "override run count");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; }, "override base seed");
        cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)");
        cmd->add_option("--out", out_dir, "output directory");
    };

    auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
    add_common(run_cmd);

    auto* table_cmd = app.add_subcommand("reproduce-table", "success-count table sweeps");
    std::string table_id = "loss-variants";
    std::string codes_csv;
    table_cmd->add_option("--table", table_id, "loss-variants | repetitions");
    table_cmd->add_option("--codes", codes_csv, "comma-separated code subset");
    add_common(table_cmd);

    auto* gram_cmd = app.add_subcommand("gram-export", "write target/prediction Gram CSVs");
    std::string gram_code = "7_1_3";
    std::string gram_gate = "S";
    gram_cmd->add_option("--code", gram_code, "registry code");
    gram_cmd->add_option("--gate", gram_gate, "target gate");
    add_common(gram_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "recompute metrics of a result record");
    std::string record_path;
    eval_cmd->add_option("record", record_path, "result JSON")->required();

    auto* template_cmd = app.add_subcommand("config-template", "print a commented config template");
    app.add_subcommand("list-codes", "list registry codes");
    app.add_subcommand("list-gates", "list known target gates");

    CLI11_PARSE(app, argc, argv);

    try {
        cli::ExperimentConfig config;
        if (!config_path.empty()) config = cli::ExperimentConfig::from_file(config_path);
        if (runs > 0) config.runs = runs;
        if (seed_set) config.seed = seed;
        if (jobs > 0) config.jobs = jobs;
        if (!out_dir.empty()) config.out_dir = out_dir;

        if (app.got_subcommand("run")) {
            if (config_path.empty()) {
                std::cerr << "run requires --config\n";
                return 2;
            }
            return cli::run_mode(config, std::cout);
        }
        if (app.got_subcommand("reproduce-table")) {
            config.mode = "reproduce-table";
            config.table = table_id;
            if (!codes_csv.empty()) {
                config.code_subset.clear();
                std::stringstream ss(codes_csv);
                std::string part;
                while (std::getline(ss, part, ',')) config.code_subset.push_back(part);
            }
            if (config.runs == 0) config.runs = 1;
            return cli::run_reproduce_table(config, std::cout);
        }
        if (app.got_subcommand("gram-export")) {
            config.mode = "gram-export";
            config.code = gram_code;
            config.gates = {gram_gate};
            return cli::run_gram_export(config, std::cout);
        }
        if (app.got_subcommand("eval")) {
            config.mode = "eval";
            config.record_path = record_path;
            return cli::run_eval(config, std::cout);
        }
        if (app.got_subcommand("config-template")) {
            (void)template_cmd;
            std::cout << cli::config_template();
            return 0;
        }
        if (app.got_subcommand("list-codes")) return cli::run_list_codes(std::cout);
        if (app.got_subcommand("list-gates")) return cli::run_list_gates(std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
