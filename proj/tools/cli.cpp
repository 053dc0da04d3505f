#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "pdsm/analysis.hpp"
#include "pdsm/codec.hpp"
#include "pdsm/evolution.hpp"

namespace pdsm::cli {

namespace fs = std::filesystem;

namespace {

bool verbose_logging() {
    const char* v = std::getenv("PDSM_LOG");
    return v != nullptr && *v != '\0' && std::string_view(v) != "0";
}

struct GenerateArgs {
    std::string config;
    std::string out;
    std::vector<std::uint64_t> seeds;
    int runs = 1;
    int jobs = 1;
};

int generate(const GenerateArgs& args, std::ostream& err) {
    const auto base = qd::load_config(args.config);
    std::vector<std::uint64_t> seeds = args.seeds;
    if (seeds.empty()) seeds.push_back(base.rng_seed);
    if (seeds.size() == 1 && args.runs > 1) {
        for (int i = 1; i < args.runs; ++i) seeds.push_back(seeds.front() + static_cast<std::uint64_t>(i));
    }
    const bool verbose = verbose_logging();
    for (auto seed : seeds) {
        auto config = base;
        config.rng_seed = seed;
        const auto started = std::chrono::steady_clock::now();
        qd::RunOptions options;
        options.jobs = args.jobs;
        if (verbose) {
            options.on_iteration = [&err, seed](const qd::IterationLog& l) {
                err << "seed=" << seed << " iteration=" << l.iteration << " evaluated=" << l.evaluated
                    << " rejected=" << l.rejected << " filled=" << l.filled_cells
                    << " mean_fitness=" << codec::format_number(l.mean_elite_fitness) << '\n';
            };
        }
        const auto result = qd::run(config, options);
        const auto dir = fs::path(args.out) / ("run_" + std::to_string(seed));
        fs::remove_all(dir);
        codec::write_archive(result.archive, result.log, dir);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        err << "seed=" << seed << " filled=" << result.archive.filled_cells()
            << " elapsed=" << codec::format_number(elapsed.count()) << "s dir=" << dir.string() << '\n';
    }
    return 0;
}

int play(const std::string& level_path, const std::string& persona_name, const std::string& trace_path,
         std::ostream& out, std::ostream& err) {
    const auto kind = personas::parse_persona(persona_name);
    if (!kind) {
        err << "pdsm: error: unknown persona '" << persona_name << "' (expected runner, mk or tc)\n";
        return 2;
    }
    const auto level = codec::read_level_file(level_path);
    if (const auto problems = playability_problems(level); !problems.empty()) {
        err << "pdsm: error: " << level_path << ": " << problems.front() << '\n';
        return 1;
    }
    personas::Persona persona;
    persona.kind = *kind;
    const auto result = personas::play_level(persona, level);
    out << "persona=" << personas::to_string(*kind) << " won=" << (result.won ? "true" : "false")
        << " hp=" << result.remaining_hp << " turns=" << result.turns << " kills=" << result.kills
        << " treasures=" << result.treasures_collected << '\n';
    if (!trace_path.empty()) codec::write_text_file(trace_path, codec::encode_trace(result.trace));
    return 0;
}

int analyze(const std::vector<std::string>& dirs, const std::string& report_dir, std::ostream& err) {
    std::vector<codec::StoredArchive> stored;
    stored.reserve(dirs.size());
    for (const auto& d : dirs) stored.push_back(codec::read_archive(d));
    std::vector<analysis::LabeledArchive> labeled;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        auto label = fs::path(dirs[i]).lexically_normal().filename().string();
        if (label.empty()) label = fs::path(dirs[i]).lexically_normal().parent_path().filename().string();
        labeled.push_back({label, &stored[i].archive});
    }
    analysis::write_report(labeled, report_dir);
    const auto report = analysis::coverage(labeled);
    err << "runs=" << report.runs.size() << " mean_filled=" << codec::format_number(report.filled.mean)
        << " stddev=" << codec::format_number(report.filled.stddev) << " report=" << report_dir << '\n';
    return 0;
}

int validate(const std::string& level_path, std::ostream& out, std::ostream& err) {
    const auto level = codec::read_level_file(level_path);
    if (const auto problems = playability_problems(level); !problems.empty()) {
        err << "pdsm: error: " << level_path << ": " << problems.front() << '\n';
        return 1;
    }
    out << "ok " << level_path << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Persona-driven level generation with Constrained MAP-Elites", "pdsm"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Evolve archives, one per seed");
    generate_cmd->add_option("--config", gen.config, "Experiment config file")->required();
    generate_cmd->add_option("--out", gen.out, "Output directory")->required();
    generate_cmd->add_option("--seeds", gen.seeds, "Seeds, comma separated")->delimiter(',');
    generate_cmd->add_option("--runs", gen.runs, "Run count when a single seed is given")->check(CLI::PositiveNumber);
    generate_cmd->add_option("--jobs", gen.jobs, "Evaluation worker threads")->check(CLI::PositiveNumber);

    std::string level_path;
    std::string persona_name;
    std::string trace_path;
    auto* play_cmd = app.add_subcommand("play", "Play a level with one persona");
    play_cmd->add_option("level", level_path, "Level file")->required();
    play_cmd->add_option("--persona", persona_name, "runner, mk or tc")->required();
    play_cmd->add_option("--trace", trace_path, "Write the action trace here");

    std::vector<std::string> archive_dirs;
    std::string report_dir;
    auto* analyze_cmd = app.add_subcommand("analyze", "Coverage and class tables over archives");
    analyze_cmd->add_option("archives", archive_dirs, "Archive directories")->required();
    analyze_cmd->add_option("--out", report_dir, "Report directory")->required();

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check that a level parses and is playable");
    validate_cmd->add_option("level", validate_path, "Level file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "pdsm: usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*generate_cmd) return generate(gen, err);
        if (*play_cmd) return play(level_path, persona_name, trace_path, out, err);
        if (*analyze_cmd) return analyze(archive_dirs, report_dir, err);
        if (*validate_cmd) return validate(validate_path, out, err);
    } catch (const codec::ParseError& e) {
        err << "pdsm: parse error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "pdsm: error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace pdsm::cli
