#include <cstdio>
#include <fstream>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "qecco/cli/config.hpp"
#include "qecco/cli/records.hpp"
#include "qecco/cli/reference.hpp"
#include "qecco/cli/runner.hpp"
#include "qecco/codes/registry.hpp"

using namespace qecco;
using namespace qecco::cli;

namespace {

std::string temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "qecco-test-cli";
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("config parsing") {
    const std::string text = R"(
# comment
mode = learn-op
code = steane
gate = S
ansatz = transversal
repetitions = 2
loss = block
runs = 7
seed = 123
noise = bitflip:0.25
)";
    const ExperimentConfig cfg = ExperimentConfig::from_text(text);
    CHECK(cfg.mode == "learn-op");
    CHECK(cfg.code == "steane");
    CHECK(cfg.gates == std::vector<std::string>{"S"});
    CHECK(cfg.gate_repetitions == std::vector<std::size_t>{2});
    CHECK(cfg.runs == 7);
    CHECK(cfg.seed == 123);
    CHECK(cfg.parse_noise().px == doctest::Approx(0.25));
    CHECK(cfg.ansatz_class(0).variant == AnsatzVariant::Transversal1Q);

    CHECK_THROWS(ExperimentConfig::from_text("bogus_key = 1\n"));
    CHECK_THROWS(ExperimentConfig::from_text("gate = CZ\nansatz = strict\n").ansatz_class(0));

    // The shipped template parses cleanly.
    const ExperimentConfig tmpl = ExperimentConfig::from_text(config_template());
    CHECK(tmpl.mode == "learn-op");

    const ExperimentConfig adep = ExperimentConfig::from_text("noise = adep\n");
    CHECK(adep.parse_noise().pz == doctest::Approx(0.086));
    const ExperimentConfig triple = ExperimentConfig::from_text("noise = 0.1,0.0,0.02\n");
    CHECK(triple.parse_noise().pz == doctest::Approx(0.02));
}

TEST_CASE("record round trip and eval recompute") {
    ExperimentConfig cfg = ExperimentConfig::from_text(
        "mode = learn-op\ncode = 3_1_1\ngate = Z\nansatz = transversal\n"
        "repetitions = 1\nloss = block\nruns = 3\nseed = 5\n");
    cfg.out_dir = temp_dir();

    std::stringstream log;
    REQUIRE(run_experiment(cfg, log) == 0);
    const std::string path = (std::filesystem::path(cfg.out_dir) / record_filename(cfg)).string();
    REQUIRE(std::filesystem::exists(path));

    const ResultRecord loaded = load_record(path);
    CHECK(loaded.runs.size() == 3);
    CHECK(loaded.config.code == "3_1_1");
    const EvalReport report = eval_record(loaded);
    for (const auto& m : report.mismatches) MESSAGE(m);
    CHECK(report.ok);

    // Hand-edited parameters are flagged.
    ResultRecord corrupted = loaded;
    corrupted.runs[0].final_params[0] += 0.5;
    CHECK(!eval_record(corrupted).ok);

    // Re-running the same config is deterministic and does not duplicate files.
    std::size_t count_before = 0;
    for (auto& e : std::filesystem::directory_iterator(cfg.out_dir)) (void)e, ++count_before;
    REQUIRE(run_experiment(cfg, log) == 0);
    std::size_t count_after = 0;
    for (auto& e : std::filesystem::directory_iterator(cfg.out_dir)) (void)e, ++count_after;
    CHECK(count_before == count_after);
}

TEST_CASE("published reference counts") {
    CHECK(reference_count_loss("3_1_1", "diag", "X") == 2);
    CHECK(reference_count_loss("3_1_1", "block", "X") == 69);
    CHECK(reference_count_loss("7_1_3", "block", "S") == 92);
    CHECK(!reference_count_loss("3_1_1", "diag", "H").has_value());
    CHECK(!reference_count_loss("15_1_3", "block", "CX").has_value());
    CHECK(reference_count_repetition("7_1_3", 2, "H") == 87);
    CHECK(reference_count_repetition("11_1_5", 2, "X") == 6);
}

TEST_CASE("gram export writes labeled csv files") {
    ExperimentConfig cfg = ExperimentConfig::from_text(
        "mode = gram-export\ncode = 3_1_1\ngate = S\nansatz = transversal\nseed = 2\n");
    cfg.out_dir = temp_dir();
    std::stringstream log;
    REQUIRE(run_gram_export(cfg, log) == 0);
    std::ifstream csv(std::filesystem::path(cfg.out_dir) / "gram-3_1_1-S-target.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "state,0,1,+,-,+i,-i");
    std::string row;
    std::getline(csv, row);
    CHECK(row == "0,1,0,0.5,0.5,0.5,0.5");
}
