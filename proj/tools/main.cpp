// bibgender command-line front end: SSA corpus ingestion, single-name
// lookups, year-shift calibration, and the full authorship analysis that
// emits observation tables, trend reports, and figure data.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bibgender/calibration.hpp"
#include "bibgender/cohort.hpp"
#include "bibgender/errors.hpp"
#include "bibgender/gender_inference.hpp"
#include "bibgender/io.hpp"
#include "bibgender/report.hpp"
#include "bibgender/ssa_corpus.hpp"
#include "bibgender/svg.hpp"
#include "bibgender/synthetic.hpp"
#include "bibgender/text.hpp"
#include "bibgender/trends.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct OversampleDirective {
    std::string group_id;
    int year = 0;
    int half_window = 0;
};

struct RunConfig {
    std::string ssa_dir;
    std::string authorship_csv;
    std::string overrides_csv;
    std::vector<std::string> labeled_subgroups;
    std::string output_dir = ".";
    bibgender::InferenceConfig inference;
    std::vector<OversampleDirective> oversample;
    bibgender::StudyRange study_range;
    bool serial = false;
};

bibgender::Execution execution(const RunConfig& cfg) {
    return cfg.serial ? bibgender::Execution::Serial : bibgender::Execution::Parallel;
}

void merge_config_file(RunConfig& cfg, const std::string& path) {
    json j = json::parse(bibgender::read_file(path));
    if (j.contains("ssa_dir")) cfg.ssa_dir = j["ssa_dir"].get<std::string>();
    if (j.contains("authorship_csv")) cfg.authorship_csv = j["authorship_csv"].get<std::string>();
    if (j.contains("overrides_csv")) cfg.overrides_csv = j["overrides_csv"].get<std::string>();
    if (j.contains("labeled_subgroups"))
        cfg.labeled_subgroups = j["labeled_subgroups"].get<std::vector<std::string>>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("year_shift")) cfg.inference.year_shift = j["year_shift"].get<int>();
    if (j.contains("smoothing_window"))
        cfg.inference.smoothing_window = j["smoothing_window"].get<int>();
    if (j.contains("threshold")) cfg.inference.threshold = j["threshold"].get<double>();
    if (j.contains("ambiguity_band"))
        cfg.inference.ambiguity_band = j["ambiguity_band"].get<double>();
    if (j.contains("mode")) {
        std::string mode = j["mode"].get<std::string>();
        if (mode == "expected") {
            cfg.inference.mode = bibgender::Mode::ExpectedValue;
        } else if (mode == "threshold") {
            cfg.inference.mode = bibgender::Mode::Threshold;
        } else {
            throw bibgender::Error("config: mode must be 'expected' or 'threshold'");
        }
    }
    if (j.contains("study_range")) {
        cfg.study_range.min_year = j["study_range"][0].get<int>();
        cfg.study_range.max_year = j["study_range"][1].get<int>();
    }
    if (j.contains("oversample")) {
        for (const auto& d : j["oversample"]) {
            cfg.oversample.push_back({d.at("group").get<std::string>(), d.at("year").get<int>(),
                                      d.at("half_window").get<int>()});
        }
    }
}

bibgender::SsaCorpus load_corpus(const RunConfig& cfg) {
    if (cfg.ssa_dir.empty())
        throw bibgender::Error("no SSA directory; pass --ssa-dir or set ssa_dir in the config");
    return bibgender::SsaCorpus::load_directory(cfg.ssa_dir, execution(cfg));
}

bibgender::OverrideTable load_overrides(const RunConfig& cfg) {
    if (cfg.overrides_csv.empty()) return {};
    return bibgender::OverrideTable::parse_csv(bibgender::read_file(cfg.overrides_csv));
}

void write_output(const RunConfig& cfg, const std::string& name, std::string_view content) {
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    bibgender::write_file(dir / name, content);
}

int cmd_ingest(const RunConfig& cfg, bool dump) {
    bibgender::SsaCorpus corpus = load_corpus(cfg);
    ordered_json summary = bibgender::ingest_summary_json(corpus);
    std::printf("loaded %zu SSA years [%d, %d], %zu gap years, %zu rows, %zu names\n",
                corpus.years().size(), corpus.min_year(), corpus.max_year(),
                corpus.gap_years().size(), corpus.total_source_rows(), corpus.total_names());
    if (!corpus.low_reliability_years().empty())
        std::printf("note: %zu pre-%d years loaded; SSA coverage before then undercounts women\n",
                    corpus.low_reliability_years().size(), bibgender::kSsaReliableFrom);
    write_output(cfg, "ingest_summary.json", summary.dump(2) + "\n");
    if (dump) write_output(cfg, "corpus.json", bibgender::corpus_dump_json(corpus).dump(2) + "\n");
    return 0;
}

// The lookup command accepts either a full author name or a bare given
// name; a lone non-initial token is looked up directly.
bibgender::AuthorResolution resolve_lookup_name(const bibgender::SsaCorpus& corpus,
                                                const std::string& name, int publication_year,
                                                const bibgender::InferenceConfig& inference,
                                                const bibgender::OverrideTable& overrides) {
    auto tokens = bibgender::text::split_name_tokens(name);
    if (tokens.size() != 1)
        return bibgender::resolve_author(corpus, name, publication_year, inference, overrides);
    bibgender::AuthorResolution res;
    if (bibgender::text::looks_like_initial(tokens[0])) {
        res.classification = {bibgender::Outcome::Unidentified,
                              bibgender::UnidentifiedReason::InitialsOnly};
    } else {
        res.given_name = std::string(tokens[0]);
        res.estimate = bibgender::infer_pf(corpus, *res.given_name, publication_year, inference);
        res.classification = bibgender::classify(res.estimate, inference);
    }
    if (auto gender = overrides.find(name)) {
        res.classification = {*gender, std::nullopt};
        res.estimate = bibgender::GenderEstimate{
            *gender == bibgender::Outcome::Female ? 1.0 : 0.0, bibgender::Basis::Override,
            publication_year - inference.year_shift, 0};
    }
    return res;
}

int cmd_lookup(const RunConfig& cfg, const std::string& name, int publication_year) {
    bibgender::SsaCorpus corpus = load_corpus(cfg);
    bibgender::OverrideTable overrides = load_overrides(cfg);
    bibgender::AuthorResolution res =
        resolve_lookup_name(corpus, name, publication_year, cfg.inference, overrides);

    std::printf("name: %s\n", name.c_str());
    if (res.given_name) {
        std::printf("given_name: %s\n", res.given_name->c_str());
    } else {
        std::printf("given_name: (none)\n");
    }
    if (res.estimate) {
        std::printf("lookup_year: %d\n", res.estimate->lookup_year);
        std::printf("total_count: %ld\n", res.estimate->total_count);
        std::printf("p_female: %.6f\n", res.estimate->p_female);
        std::printf("basis: %s\n", std::string(to_string(res.estimate->basis)).c_str());
        if (res.estimate->basis == bibgender::Basis::Ssa &&
            res.estimate->lookup_year < bibgender::kSsaReliableFrom)
            std::printf("note: lookup year predates %d; SSA counts there undercount women\n",
                        bibgender::kSsaReliableFrom);
    }
    std::printf("class: %s\n", std::string(to_string(res.classification.outcome)).c_str());
    if (res.classification.reason)
        std::printf("reason: %s\n", std::string(to_string(*res.classification.reason)).c_str());
    return 0;
}

int cmd_calibrate(const RunConfig& cfg, const std::vector<int>& grid, int synthetic_n,
                  int synthetic_subgroups, int synthetic_offset, std::uint64_t synthetic_seed) {
    bibgender::SsaCorpus corpus = load_corpus(cfg);

    std::vector<bibgender::LabeledSubgroup> subgroups;
    if (synthetic_n > 0) {
        bibgender::SubgroupSamplerSpec spec;
        spec.subgroup_count = synthetic_subgroups;
        spec.authors_per_subgroup = synthetic_n;
        spec.offset = synthetic_offset;
        spec.seed = synthetic_seed;
        subgroups = bibgender::sample_labeled_subgroups(corpus, spec);
        std::printf("sampled %d synthetic subgroups of %d authors (offset %d, seed %llu)\n",
                    synthetic_subgroups, synthetic_n, synthetic_offset,
                    static_cast<unsigned long long>(synthetic_seed));
    } else {
        if (cfg.labeled_subgroups.empty())
            throw bibgender::Error("no labeled subgroups; pass --labeled files or --synthetic N");
        for (const auto& path : cfg.labeled_subgroups) {
            bibgender::LabeledSubgroup sg;
            sg.id = fs::path(path).stem().string();
            sg.authors = bibgender::parse_labeled_csv(bibgender::read_file(path));
            subgroups.push_back(std::move(sg));
        }
    }

    bibgender::CalibrationResult result =
        bibgender::calibrate(corpus, subgroups, grid, cfg.inference, execution(cfg));
    write_output(cfg, "calibration.json", bibgender::calibration_json(result).dump(2) + "\n");
    write_output(cfg, "fig2.csv", bibgender::calibration_fig2_csv(result));

    for (const auto& curve : result.curves) {
        if (!curve.error.empty()) {
            std::printf("subgroup %s: %s\n", curve.subgroup_id.c_str(), curve.error.c_str());
        } else {
            std::printf("subgroup %s: argmin shift %d\n", curve.subgroup_id.c_str(), *curve.argmin);
        }
    }
    for (const auto& w : result.warnings) std::printf("warning: %s\n", w.c_str());
    if (!result.minority.empty()) {
        std::printf("minority report:");
        for (const auto& id : result.minority) std::printf(" %s", id.c_str());
        std::printf("\n");
    }
    if (!result.consensus) {
        std::fprintf(stderr, "error: no subgroup produced a usable calibration curve\n");
        return 1;
    }
    std::printf("consensus shift: %d\n", *result.consensus);
    return 0;
}

int cmd_analyze(const RunConfig& cfg, bool svg) {
    if (cfg.authorship_csv.empty())
        throw bibgender::Error("no authorship CSV; pass --authors or set authorship_csv");
    bibgender::SsaCorpus corpus = load_corpus(cfg);
    bibgender::OverrideTable overrides = load_overrides(cfg);

    bibgender::AuthorshipLoad load =
        bibgender::parse_authorship_csv(bibgender::read_file(cfg.authorship_csv));
    bibgender::CohortBuild build = bibgender::build_cohorts(load.records, cfg.study_range);

    std::vector<bibgender::RejectedRecord> rejects = std::move(load.rejects);
    rejects.insert(rejects.end(), build.rejects.begin(), build.rejects.end());
    if (!rejects.empty()) {
        write_output(cfg, "rejects.csv", bibgender::rejects_to_csv(rejects));
        std::printf("rejected %zu records (see rejects.csv)\n", rejects.size());
    }

    // Per-cohort observation, with the oversampling correction where the
    // config asks for one.
    std::vector<bibgender::CohortObservation> observations = bibgender::observe_all(
        build.cohorts, corpus, cfg.inference, overrides, execution(cfg));
    for (const auto& directive : cfg.oversample) {
        bibgender::CohortObservation windowed = bibgender::windowed_observe(
            load.records, directive.group_id, directive.year, directive.half_window, corpus,
            cfg.inference, overrides, cfg.study_range);
        bool replaced = false;
        for (auto& obs : observations) {
            if (obs.group_id == directive.group_id && obs.year == directive.year) {
                obs = windowed;
                replaced = true;
                break;
            }
        }
        if (!replaced)
            throw bibgender::Error("oversample directive names missing cohort (" +
                                   directive.group_id + ", " + std::to_string(directive.year) +
                                   ")");
    }

    bibgender::TrendReport report = bibgender::analyze_trends(observations, {}, execution(cfg));

    write_output(cfg, "observations.csv", bibgender::observations_to_csv(observations));
    write_output(cfg, "observations.json",
                 bibgender::observations_json(observations).dump(2) + "\n");
    write_output(cfg, "trends.json", bibgender::trend_report_json(report).dump(2) + "\n");
    write_output(cfg, "trends.csv", bibgender::trend_report_csv(report));
    write_output(cfg, "fig34.csv", bibgender::fig34_csv(observations));
    write_output(cfg, "fig5.csv", bibgender::fig5_csv(report));
    if (svg) {
        write_output(cfg, "fig34.svg", bibgender::bubble_chart_svg(observations));
        write_output(cfg, "fig5.svg", bibgender::quadrant_chart_svg(report));
    }

    std::printf("analyzed %zu cohorts across %zu groups\n", observations.size(),
                report.groups.size());
    std::printf("composite: median_weighted %.2f, median_series %.2f, a_scaled %.1f, shape %s\n",
                report.composite.median_weighted, report.composite.median_series,
                report.composite.a_scaled(),
                std::string(to_string(report.composite.shape)).c_str());
    return 0;
}

std::vector<int> parse_grid(const std::string& grid_text) {
    std::vector<int> grid;
    std::size_t pos = 0;
    while (pos < grid_text.size()) {
        std::size_t comma = grid_text.find(',', pos);
        std::string item = grid_text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        if (!item.empty()) grid.push_back(std::stoi(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.empty()) throw bibgender::Error("empty shift grid");
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Historical name-gender inference and authorship-trend analysis"};
    app.require_subcommand(1);

    std::string ssa_dir, config_path, output_dir, overrides_csv, mode;
    int shift = 0, window = 0;
    double threshold = 0.0, band = 0.0;
    bool serial = false;
    app.add_option("--ssa-dir", ssa_dir, "Directory of SSA yobYYYY.txt files");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--output-dir", output_dir, "Where reports are written (default .)");
    app.add_option("--shift", shift, "Year shift for SSA lookups (default 30)");
    app.add_option("--mode", mode, "Counting mode: expected|threshold (default threshold)");
    app.add_option("--threshold", threshold, "Classification threshold (default 0.5)");
    app.add_option("--band", band, "Ambiguity half-width around the threshold (default 0)");
    app.add_option("--window", window, "Smoothing window in years for SSA lookups (default 0)");
    app.add_option("--overrides", overrides_csv, "CSV of personally-verified gender overrides");
    app.add_flag("--serial", serial, "Force the serial reference kernels");

    auto* ingest = app.add_subcommand("ingest-ssa", "Load and summarize an SSA corpus");
    ingest->fallthrough();
    bool dump = false;
    ingest->add_flag("--dump", dump, "Also write the normalized corpus as corpus.json");

    auto* lookup = app.add_subcommand("lookup", "Gender estimate for one author name");
    lookup->fallthrough();
    std::string lookup_name;
    int lookup_year = 0;
    lookup->add_option("name", lookup_name, "Full or given author name")->required();
    lookup->add_option("publication_year", lookup_year, "Publication year")->required();

    auto* calibrate = app.add_subcommand("calibrate", "Grid-search the year shift");
    calibrate->fallthrough();
    std::vector<std::string> labeled;
    std::string grid_text = "20,25,30,35,40,45,50";
    int synthetic_n = 0, synthetic_subgroups = 4, synthetic_offset = 30;
    std::uint64_t synthetic_seed = 1;
    calibrate->add_option("--labeled", labeled, "Labeled-subgroup CSV files");
    calibrate->add_option("--grid", grid_text, "Comma-separated shifts (default 20..50 by 5)");
    calibrate->add_option("--synthetic", synthetic_n, "Sample N labeled authors per subgroup");
    calibrate->add_option("--subgroups", synthetic_subgroups, "Synthetic subgroup count (default 4)");
    calibrate->add_option("--offset", synthetic_offset, "True offset for synthetic sampling");
    calibrate->add_option("--seed", synthetic_seed, "Synthetic sampling seed");

    auto* analyze = app.add_subcommand("analyze", "Full cohort + trend analysis");
    analyze->fallthrough();
    std::string authors_csv;
    bool svg = false;
    analyze->add_option("--authors", authors_csv, "Authorship CSV");
    analyze->add_flag("--svg", svg, "Also emit fig34.svg and fig5.svg");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) merge_config_file(cfg, config_path);
        if (app.count("--ssa-dir")) cfg.ssa_dir = ssa_dir;
        if (app.count("--output-dir")) cfg.output_dir = output_dir;
        if (app.count("--overrides")) cfg.overrides_csv = overrides_csv;
        if (app.count("--shift")) cfg.inference.year_shift = shift;
        if (app.count("--window")) cfg.inference.smoothing_window = window;
        if (app.count("--threshold")) cfg.inference.threshold = threshold;
        if (app.count("--band")) cfg.inference.ambiguity_band = band;
        if (app.count("--serial")) cfg.serial = serial;
        if (app.count("--mode")) {
            if (mode == "expected") {
                cfg.inference.mode = bibgender::Mode::ExpectedValue;
            } else if (mode == "threshold") {
                cfg.inference.mode = bibgender::Mode::Threshold;
            } else {
                throw bibgender::Error("--mode must be 'expected' or 'threshold'");
            }
        }
        cfg.inference.validate();
        if (analyze->parsed() && analyze->count("--authors")) cfg.authorship_csv = authors_csv;
        if (calibrate->parsed() && !labeled.empty()) cfg.labeled_subgroups = labeled;

        if (ingest->parsed()) return cmd_ingest(cfg, dump);
        if (lookup->parsed()) return cmd_lookup(cfg, lookup_name, lookup_year);
        if (calibrate->parsed())
            return cmd_calibrate(cfg, parse_grid(grid_text), synthetic_n, synthetic_subgroups,
                                 synthetic_offset, synthetic_seed);
        if (analyze->parsed()) return cmd_analyze(cfg, svg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
