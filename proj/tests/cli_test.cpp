#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "pdsm/codec.hpp"
#include "support.hpp"

namespace pdsm::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

std::map<std::string, std::string> directory_contents(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files[fs::relative(entry.path(), dir).string()] = codec::read_text_file(entry.path());
        }
    }
    return files;
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("pdsm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write_level(const std::string& name, const Level& level) {
        const auto path = (dir_ / name).string();
        codec::write_text_file(path, codec::encode_level(level));
        return path;
    }

    std::string write_config(const std::string& text) {
        const auto path = (dir_ / "experiment.cfg").string();
        codec::write_text_file(path, text);
        return path;
    }

    fs::path dir_;
};

constexpr const char* kSmallConfig = "iterations = 3\npopsize = 8\nnode-budget = 100\n";

TEST_F(CliTest, PlayBesideTheExit) {
    const auto level = write_level("beside.txt", support::room({{1, 1, 'H'}, {2, 1, 'E'}}));
    const auto trace = (dir_ / "trace.txt").string();
    const auto r = invoke({"play", level, "--persona", "runner", "--trace", trace});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "persona=runner won=true hp=10 turns=1 kills=0 treasures=0\n");
    EXPECT_EQ(codec::read_text_file(trace), "east\n");
}

TEST_F(CliTest, PersonaNames) {
    const auto level = write_level("beside.txt", support::room({{1, 1, 'H'}, {2, 1, 'E'}}));
    for (const char* name : {"runner", "mk", "tc"}) {
        const auto r = invoke({"play", level, "--persona", name});
        EXPECT_EQ(r.status, 0) << name;
        EXPECT_EQ(r.out.rfind(std::string("persona=") + name + " ", 0), 0U) << r.out;
    }
    const auto bad = invoke({"play", level, "--persona", "speedrunner"});
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.err.find("speedrunner"), std::string::npos);
    EXPECT_EQ(std::count(bad.err.begin(), bad.err.end(), '\n'), 1);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({}).status, 2);
    EXPECT_EQ(invoke({"fly"}).status, 2);
    const auto level = write_level("beside.txt", support::room({{1, 1, 'H'}, {2, 1, 'E'}}));
    EXPECT_EQ(invoke({"play", level, "--persona", "runner", "--speed", "3"}).status, 2);
    EXPECT_EQ(invoke({"validate"}).status, 2);
    EXPECT_EQ(invoke({"--help"}).status, 0);
}

TEST_F(CliTest, ReplayedTraceReproducesTheResult) {
    const auto layout = support::room({{1, 1, 'H'}, {8, 8, 'E'}, {4, 4, 'g'}, {6, 2, 'T'}, {3, 7, 'p'}, {7, 5, 'o'}});
    const auto level = write_level("mixed.txt", layout);
    for (const char* name : {"runner", "mk", "tc"}) {
        const auto trace_path = (dir_ / (std::string(name) + ".trace")).string();
        const auto r = invoke({"play", level, "--persona", name, "--trace", trace_path});
        ASSERT_EQ(r.status, 0);
        const auto trace = codec::decode_trace(codec::read_text_file(trace_path));
        auto state = support::start(layout, sim::Rules{});
        for (const auto& a : trace) state = sim::step(state, a);
        const bool won = state.outcome == sim::Outcome::Won;
        std::ostringstream expected;
        expected << "persona=" << name << " won=" << (won ? "true" : "false") << " hp=" << (won ? state.hp : 0)
                 << " turns=" << trace.size() << " kills=" << state.kills << " treasures=" << state.score << '\n';
        EXPECT_EQ(r.out, expected.str());
    }
}

TEST_F(CliTest, ValidateAcceptsExactlyPlayableLevels) {
    const auto good = write_level("good.txt", support::room({{1, 1, 'H'}, {8, 8, 'E'}}));
    const auto ok = invoke({"validate", good});
    EXPECT_EQ(ok.status, 0);
    EXPECT_EQ(ok.out, "ok " + good + "\n");

    auto walled = support::room({{1, 1, 'H'}, {8, 8, 'E'}});
    for (int x = 1; x <= 8; ++x) walled.set(Pos{x, 4}, Tile::Wall);
    const auto bad = write_level("walled.txt", walled);
    for (const auto& args : {std::vector<std::string>{"validate", bad},
                             std::vector<std::string>{"play", bad, "--persona", "runner"}}) {
        const auto r = invoke(args);
        EXPECT_EQ(r.status, 1);
        EXPECT_NE(r.err.find("exit at (8,8)"), std::string::npos) << r.err;
        EXPECT_TRUE(r.out.empty());
    }

    codec::write_text_file(dir_ / "garbage.txt", "###\n#?#\n###\n");
    const auto garbage = invoke({"validate", (dir_ / "garbage.txt").string()});
    EXPECT_EQ(garbage.status, 1);
    EXPECT_NE(garbage.err.find("line 2, column 2"), std::string::npos) << garbage.err;

    qd::ExperimentConfig cfg;
    cfg.wall_init_rate = 0.5;
    cfg.empty_init_rate = 0.4;
    Rng init(3), rep(4);
    for (int n = 0; n < 40; ++n) {
        const auto level = qd::random_level(cfg, init, rep);
        const auto path = write_level("random.txt", level);
        const int validated = invoke({"validate", path}).status;
        const int played = invoke({"play", path, "--persona", "tc"}).status;
        EXPECT_EQ(validated, played);
        EXPECT_EQ(validated == 0, is_playable(level));
    }
}

TEST_F(CliTest, GenerateIsByteForByteDeterministic) {
    const auto config = write_config(kSmallConfig);
    const auto a = invoke({"generate", "--config", config, "--out", (dir_ / "a").string(), "--seeds", "42"});
    const auto b = invoke({"generate", "--config", config, "--out", (dir_ / "b").string(), "--seeds", "42", "--jobs", "2"});
    ASSERT_EQ(a.status, 0) << a.err;
    ASSERT_EQ(b.status, 0) << b.err;
    const auto first = directory_contents(dir_ / "a");
    EXPECT_TRUE(first.count("run_42/manifest.csv"));
    EXPECT_TRUE(first.count("run_42/run_log.csv"));
    EXPECT_EQ(first, directory_contents(dir_ / "b"));
    EXPECT_NE(a.err.find("seed=42 filled="), std::string::npos);
}

TEST_F(CliTest, GenerateSeedsAndRuns) {
    const auto config = write_config(kSmallConfig);
    const auto r = invoke({"generate", "--config", config, "--out", (dir_ / "out").string(), "--seeds", "7", "--runs", "3"});
    ASSERT_EQ(r.status, 0) << r.err;
    for (const char* d : {"run_7", "run_8", "run_9"}) EXPECT_TRUE(fs::exists(dir_ / "out" / d / "manifest.csv")) << d;
    const auto list = invoke({"generate", "--config", config, "--out", (dir_ / "list").string(), "--seeds", "1,5"});
    ASSERT_EQ(list.status, 0);
    EXPECT_TRUE(fs::exists(dir_ / "list" / "run_1"));
    EXPECT_TRUE(fs::exists(dir_ / "list" / "run_5"));
    EXPECT_EQ(std::count(list.err.begin(), list.err.end(), '\n'), 2);
}

TEST_F(CliTest, ZeroIterationsArchivesTheInitialPopulation) {
    const auto config = write_config("iterations = 0\npopsize = 6\nnode-budget = 100\nrng-seed = 3\n");
    ASSERT_EQ(invoke({"generate", "--config", config, "--out", dir_.string()}).status, 0);
    const auto stored = codec::read_archive(dir_ / "run_3");
    ASSERT_EQ(stored.log.size(), 1U);
    EXPECT_EQ(stored.log[0].iteration, 0);
    EXPECT_EQ(stored.log[0].evaluated + stored.log[0].rejected, 6);
}

TEST_F(CliTest, GenerateConfigErrorsNameTheKey) {
    const auto config = write_config("iterations = 3\npopulation = 8\n");
    const auto r = invoke({"generate", "--config", config, "--out", dir_.string()});
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.err.find("population"), std::string::npos);
    EXPECT_EQ(invoke({"generate", "--config", (dir_ / "none.cfg").string(), "--out", dir_.string()}).status, 1);
}

TEST_F(CliTest, AnalyzeWritesTheReport) {
    const auto config = write_config(kSmallConfig);
    ASSERT_EQ(invoke({"generate", "--config", config, "--out", (dir_ / "runs").string(), "--seeds", "1", "--runs", "2"}).status, 0);
    const auto report = dir_ / "report";
    const auto r = invoke({"analyze", (dir_ / "runs" / "run_1").string(), (dir_ / "runs" / "run_2").string(), "--out",
                           report.string()});
    ASSERT_EQ(r.status, 0) << r.err;
    for (const char* f : {"coverage.csv", "classes.csv", "elite_presence.csv", "expressive_monsters_treasures.csv"}) {
        EXPECT_TRUE(fs::exists(report / f)) << f;
    }
    const auto coverage = codec::read_text_file(report / "coverage.csv");
    EXPECT_EQ(std::count(coverage.begin(), coverage.end(), '\n'), 4);
    EXPECT_NE(coverage.find("\nrun_1,"), std::string::npos);
    EXPECT_NE(coverage.find("\nrun_2,"), std::string::npos);
    EXPECT_NE(coverage.find("\nmean,"), std::string::npos);
}

TEST_F(CliTest, AnalyzeRejectsVersionMismatch) {
    const auto config = write_config(kSmallConfig);
    ASSERT_EQ(invoke({"generate", "--config", config, "--out", dir_.string(), "--seeds", "1"}).status, 0);
    const auto manifest = dir_ / "run_1" / "manifest.csv";
    codec::write_text_file(manifest, "version 0\n");
    const auto r = invoke({"analyze", (dir_ / "run_1").string(), "--out", (dir_ / "report").string()});
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.err.find("version mismatch"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace pdsm::cli
