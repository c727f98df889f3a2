// Serial-vs-OpenMP benchmark for the three batch kernels: corpus parsing,
// the calibration grid, and cohort observation. Each kernel's parallel
// result must match the serial reference bit for bit.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bibgender/calibration.hpp"
#include "bibgender/cohort.hpp"
#include "bibgender/execution.hpp"
#include "bibgender/report.hpp"
#include "bibgender/synthetic.hpp"

using namespace bibgender;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report_line(const char* kernel, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   identical: %s\n",
                kernel, serial_s, parallel_s, serial_s / parallel_s, identical ? "yes" : "NO");
}

std::string curves_fingerprint(const CalibrationResult& r) {
    return calibration_fig2_csv(r);
}

}  // namespace

int main(int argc, char** argv) {
    int corpus_names = 2000;
    int subgroup_size = 20000;
    int cohort_count = 240;
    int members_per_cohort = 1500;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        int value = std::atoi(argv[i + 1]);
        if (flag == "--names") corpus_names = value;
        if (flag == "--subgroup-size") subgroup_size = value;
        if (flag == "--cohorts") cohort_count = value;
        if (flag == "--members") members_per_cohort = value;
    }

    std::printf("OpenMP: %s (%d threads)\n", openmp_enabled() ? "enabled" : "disabled",
                worker_threads());

    DriftCorpusSpec corpus_spec;
    corpus_spec.first_year = 1880;
    corpus_spec.last_year = 2020;
    corpus_spec.name_count = corpus_names;
    std::vector<YearSource> sources = synthetic_drift_sources(corpus_spec);
    std::printf("corpus: %zu years x %d names\n", sources.size(), corpus_names);

    auto t0 = std::chrono::steady_clock::now();
    SsaCorpus serial_corpus = SsaCorpus::load(sources, Execution::Serial);
    double parse_serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    SsaCorpus parallel_corpus = SsaCorpus::load(sources, Execution::Parallel);
    double parse_parallel = seconds_since(t0);
    bool parse_same =
        corpus_dump_json(serial_corpus).dump() == corpus_dump_json(parallel_corpus).dump();
    report_line("corpus parse", parse_serial, parse_parallel, parse_same);

    SubgroupSamplerSpec sampler;
    sampler.subgroup_count = 8;
    sampler.authors_per_subgroup = subgroup_size;
    sampler.seed = 7;
    std::vector<LabeledSubgroup> subgroups = sample_labeled_subgroups(parallel_corpus, sampler);
    std::vector<int> grid(kDefaultShiftGrid, kDefaultShiftGrid + 7);

    t0 = std::chrono::steady_clock::now();
    CalibrationResult cal_serial =
        calibrate(parallel_corpus, subgroups, grid, {}, Execution::Serial);
    double cal_serial_s = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    CalibrationResult cal_parallel =
        calibrate(parallel_corpus, subgroups, grid, {}, Execution::Parallel);
    double cal_parallel_s = seconds_since(t0);
    report_line("calibration grid", cal_serial_s, cal_parallel_s,
                curves_fingerprint(cal_serial) == curves_fingerprint(cal_parallel));

    // Cohorts drawn from the same corpus: every member resolves via SSA.
    std::vector<Cohort> cohorts(static_cast<std::size_t>(cohort_count));
    {
        SubgroupSamplerSpec member_spec;
        member_spec.subgroup_count = 1;
        member_spec.authors_per_subgroup = members_per_cohort;
        for (int c = 0; c < cohort_count; ++c) {
            member_spec.seed = 1000 + static_cast<std::uint64_t>(c);
            LabeledSubgroup sampled =
                sample_labeled_subgroups(parallel_corpus, member_spec).front();
            Cohort& cohort = cohorts[static_cast<std::size_t>(c)];
            cohort.group_id = "G" + std::to_string(c % 13);
            cohort.year = 1950 + (c % 4) * 10;
            cohort.members.reserve(sampled.authors.size());
            for (std::size_t m = 0; m < sampled.authors.size(); ++m)
                cohort.members.push_back({"id:" + std::to_string(c) + "." + std::to_string(m),
                                          sampled.authors[m].given_name + " Author"});
        }
    }
    InferenceConfig config;
    OverrideTable overrides;
    t0 = std::chrono::steady_clock::now();
    auto obs_serial = observe_all(cohorts, parallel_corpus, config, overrides, Execution::Serial);
    double obs_serial_s = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto obs_parallel =
        observe_all(cohorts, parallel_corpus, config, overrides, Execution::Parallel);
    double obs_parallel_s = seconds_since(t0);
    report_line("cohort observation", obs_serial_s, obs_parallel_s,
                observations_to_csv(obs_serial) == observations_to_csv(obs_parallel));
    return 0;
}
