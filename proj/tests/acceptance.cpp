// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Needs BIBGENDER_CLI and BIBGENDER_FIXTURE_DIR in the environment (ctest
// sets both).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "bibgender/calibration.hpp"
#include "bibgender/cohort.hpp"
#include "bibgender/io.hpp"
#include "bibgender/ssa_corpus.hpp"
#include "bibgender/synthetic.hpp"
#include "bibgender/trends.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace bibgender;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& label, bool ok, double seconds,
            const std::string& detail = {}) {
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", criterion,
                label.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::string cli_path() {
    const char* cli = std::getenv("BIBGENDER_CLI");
    return cli ? cli : "";
}

std::string fixture_dir() {
    const char* dir = std::getenv("BIBGENDER_FIXTURE_DIR");
    return dir ? dir : "";
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    CliResult result;
    std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) result.output.append(buf, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string output_field(const std::string& output, const std::string& key) {
    std::size_t pos = output.find(key + ": ");
    if (pos == std::string::npos) return {};
    pos += key.size() + 2;
    return output.substr(pos, output.find('\n', pos) - pos);
}

fs::path scratch_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() /
                   ("bibgender_acceptance_" + std::to_string(::getpid()) + "_" + tag);
    fs::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------------------

void criterion_1_leslie_anchor() {
    Timer timer;
    CliResult r = run_cli("lookup Leslie 1971 --shift 30 --ssa-dir " + fixture_dir() + "/ssa");
    const double expected = 505.0 / 2062.0;
    bool ok = r.exit_code == 0;
    std::string detail;
    if (ok) {
        const std::string p_text = output_field(r.output, "p_female");
        const std::string klass = output_field(r.output, "class");
        double p = p_text.empty() ? -1.0 : std::stod(p_text);
        ok = std::abs(p - expected) <= 0.0001 && klass == "Male";
        char buf[128];
        std::snprintf(buf, sizeof(buf), "p(F)=%s class=%s", p_text.c_str(), klass.c_str());
        detail = buf;
    } else {
        detail = "exit " + std::to_string(r.exit_code);
    }
    double elapsed = timer.seconds();
    report(1, "Leslie 1941 anchor via lookup", ok && elapsed < 1.0, elapsed, detail);
}

void criterion_2_composite_fit_anchor() {
    Timer timer;
    Series series;
    series.group_id = "composite";
    const double ys[4] = {3.6, 12.4, 15.1, 17.3};
    for (int i = 0; i < 4; ++i) series.points.push_back({static_cast<double>(i), ys[i], 1000});
    QuadraticFit fit = fit_quadratic(series);
    double median = median_share(series);
    bool ok = std::abs(fit.a - (-1.65)) <= 0.01 && std::abs(fit.a * 100 - (-165.0)) <= 1.0 &&
              std::abs(fit.r2 - 0.986) <= 0.005 && classify_shape(fit) == Shape::Concave &&
              std::abs(median - 13.75) <= 0.01;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "a=%.4f a_scaled=%.1f r2=%.4f shape=%s median=%.2f", fit.a,
                  fit.a * 100, fit.r2, std::string(to_string(classify_shape(fit))).c_str(),
                  median);
    double elapsed = timer.seconds();
    report(2, "composite quadratic fit anchor", ok && elapsed < 1.0, elapsed, buf);
}

void criterion_3_calibration_recovery() {
    Timer timer;
    SsaCorpus corpus = make_drift_corpus();
    const std::vector<int> grid(kDefaultShiftGrid, kDefaultShiftGrid + 7);
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SubgroupSamplerSpec spec;
        spec.subgroup_count = 4;
        spec.authors_per_subgroup = 500;
        spec.offset = 30;
        spec.seed = seed;
        auto subgroups = sample_labeled_subgroups(corpus, spec);
        auto result = calibrate(corpus, subgroups, grid);
        if (result.consensus && *result.consensus == 30) ++hits;
    }
    double elapsed = timer.seconds();
    report(3, "synthetic calibration recovers shift 30", hits >= 19 && elapsed < 10.0, elapsed,
           std::to_string(hits) + "/20 seeds");
}

void criterion_4_fit_oracle_equivalence() {
    Timer timer;
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> pct(0.0, 100.0);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> xs = {0, 1, 2, 3};
        std::vector<double> ys = {pct(rng), pct(rng), pct(rng), pct(rng)};
        Series series;
        series.group_id = "t";
        for (int i = 0; i < 4; ++i) series.points.push_back({xs[i], ys[i], 1});
        QuadraticFit fit = fit_quadratic(series);
        auto oracle = oracles::qr_polyfit(xs, ys, 2);
        double err = std::max({std::abs(fit.c - oracle[0]), std::abs(fit.b - oracle[1]),
                               std::abs(fit.a - oracle[2])});
        worst = std::max(worst, err);
        if (err > 1e-9 || !(fit.r2 >= fit.r2_linear)) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max coefficient gap %.2e", worst);
    double elapsed = timer.seconds();
    report(4, "quadratic fit matches the pseudo-inverse oracle", ok && elapsed < 1.0, elapsed,
           buf);
}

void criterion_5_dedup_idempotence() {
    Timer timer;
    SsaCorpus corpus = SsaCorpus::load_directory(fixture_dir() + "/ssa");
    AuthorshipLoad load = parse_authorship_csv(read_file(fixture_dir() + "/authorship.csv"));
    std::vector<AuthorshipRecord> doubled = load.records;
    doubled.insert(doubled.end(), load.records.begin(), load.records.end());

    auto pipeline = [&](std::span<const AuthorshipRecord> records) {
        CohortBuild build = build_cohorts(records);
        return observations_to_csv(observe_all(build.cohorts, corpus, {}, {}));
    };
    std::string base = pipeline(load.records);
    std::string redundant = pipeline(doubled);
    double elapsed = timer.seconds();
    report(5, "duplicated article rows leave observations byte-identical",
           base == redundant && elapsed < 1.0, elapsed,
           std::to_string(load.records.size()) + " rows doubled");
}

void criterion_6_oversampling_contract() {
    Timer timer;
    std::vector<YearSource> sources;
    for (int year : {1939, 1940, 1941}) {
        sources.push_back({year, "Fema,F,100\nMala,M,100\n"});
    }
    SsaCorpus corpus = SsaCorpus::load(std::move(sources));
    std::vector<AuthorshipRecord> records;
    int serial = 0;
    auto add = [&](int year, const char* given, int count) {
        for (int i = 0; i < count; ++i, ++serial) {
            records.push_back({"SIGX", year, "art" + std::to_string(serial / 3),
                               std::string(given) + " A" + std::to_string(serial), "", 0});
        }
    };
    // pooled window of 100 unique authors: 25% F / 70% M / 5% non-SSA,
    // 40 of them in the target year
    add(1970, "Fema", 10);
    add(1970, "Mala", 28);
    add(1970, "Zyxq", 2);
    add(1969, "Fema", 8);
    add(1969, "Mala", 21);
    add(1969, "Zyxq", 1);
    add(1971, "Fema", 7);
    add(1971, "Mala", 21);
    add(1971, "Zyxq", 2);
    CohortObservation obs = windowed_observe(records, "SIGX", 1970, 1, corpus, {}, {});
    bool ok = obs.n_female == 10.0 && obs.n_male == 28.0 && obs.n_unidentified == 2.0 &&
              obs.n_total == 40.0 &&
              obs.n_female + obs.n_male + obs.n_unidentified == obs.n_total && obs.scaled;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "counts (%g, %g, %g) of %g", obs.n_female, obs.n_male,
                  obs.n_unidentified, obs.n_total);
    double elapsed = timer.seconds();
    report(6, "oversampling rescale hits (10, 28, 2) exactly", ok && elapsed < 1.0, elapsed, buf);
}

void criterion_7_composite_leave_one_out() {
    Timer timer;
    // Group medians and author weights built by apportionment: twelve
    // 220-author groups averaging 11.8 plus one 200-author 40.5 group.
    const double offsets[12] = {-2.7, -2.3, -2.1, -1.9, -1.5, -0.9,
                                0.1,  0.8,  1.3,  2.0,  3.0,  4.2};
    std::vector<CohortObservation> observations;
    auto add_group = [&](const std::string& id, double median, double weight) {
        const double wiggle[4] = {-1.0, -0.3, 0.3, 1.0};
        const int years[4] = {1970, 1980, 1990, 2000};
        for (int i = 0; i < 4; ++i) {
            CohortObservation o;
            o.group_id = id;
            o.year = years[i];
            o.n_total = weight / 4.0;
            o.pct_women_all = median + wiggle[i];
            o.n_female = o.pct_women_all * o.n_total / 100.0;
            o.n_male = o.n_total - o.n_female;
            observations.push_back(o);
        }
    };
    for (int g = 0; g < 12; ++g) add_group("G" + std::to_string(10 + g), 11.8 + offsets[g], 220);
    add_group("UCCS", 40.5, 200);

    CompositeSummary full = composite(observations);
    std::vector<CohortObservation> without;
    for (const auto& o : observations) {
        if (o.group_id != "UCCS") without.push_back(o);
    }
    CompositeSummary dropped = composite(without);
    bool ok = std::abs(full.median_weighted - 13.8) <= 0.1 &&
              std::abs(dropped.median_weighted - 11.8) <= 0.2;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "weighted median %.2f -> %.2f", full.median_weighted,
                  dropped.median_weighted);
    double elapsed = timer.seconds();
    report(7, "dropping the outlier group lowers the weighted median to ~11.8",
           ok && elapsed < 1.0, elapsed, buf);
}

void criterion_8_determinism() {
    Timer timer;
    fs::path out1 = scratch_dir("det1");
    fs::path out2 = scratch_dir("det2");
    const std::string base_args = "analyze --authors " + fixture_dir() + "/authorship.csv" +
                                  " --ssa-dir " + fixture_dir() + "/ssa" + " --overrides " +
                                  fixture_dir() + "/overrides.csv --svg --output-dir ";
    CliResult r1 = run_cli(base_args + out1.string());
    CliResult r2 = run_cli(base_args + out2.string());
    bool ok = r1.exit_code == 0 && r2.exit_code == 0;
    std::string detail;
    if (ok) {
        std::map<std::string, std::string> first, second;
        for (const auto& entry : fs::directory_iterator(out1))
            first[entry.path().filename().string()] = read_file(entry.path());
        for (const auto& entry : fs::directory_iterator(out2))
            second[entry.path().filename().string()] = read_file(entry.path());
        ok = !first.empty() && first == second;
        detail = std::to_string(first.size()) + " files compared";
    } else {
        detail = "exits " + std::to_string(r1.exit_code) + "/" + std::to_string(r2.exit_code);
    }
    fs::remove_all(out1);
    fs::remove_all(out2);
    report(8, "two analyze runs are byte-identical", ok, timer.seconds(), detail);
}

}  // namespace

int main() {
    if (cli_path().empty() || fixture_dir().empty()) {
        std::fprintf(stderr, "BIBGENDER_CLI and BIBGENDER_FIXTURE_DIR must be set\n");
        return 2;
    }
    criterion_1_leslie_anchor();
    criterion_2_composite_fit_anchor();
    criterion_3_calibration_recovery();
    criterion_4_fit_oracle_equivalence();
    criterion_5_dedup_idempotence();
    criterion_6_oversampling_contract();
    criterion_7_composite_leave_one_out();
    criterion_8_determinism();
    if (failures == 0) {
        std::printf("all 8 acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criterion(s) failed\n", failures);
    }
    return failures;
}
