#pragma once

#include <cstdint>
#include <vector>

#include "bibgender/calibration.hpp"
#include "bibgender/ssa_corpus.hpp"

namespace bibgender {

// The real author dataset is not redistributable, so the repo ships
// generators for SSA-shaped corpora and labeled subgroups instead. The
// corpus generator produces names whose gender association drifts across
// birth years (sharp logistic transitions at staggered centers), which is
// exactly the structure that makes the year shift recoverable.

struct DriftCorpusSpec {
    int first_year = 1900;
    int last_year = 1995;
    int name_count = 40;
    long bearers_per_name = 200;
    double low_p = 0.05;   // p(F) plateau before/after the transition
    double high_p = 0.95;
    double transition_width = 1.5;  // logistic width in years
    double stable_fraction = 0.2;   // names that never change gender
};

std::vector<YearSource> synthetic_drift_sources(const DriftCorpusSpec& spec = {});
SsaCorpus make_drift_corpus(const DriftCorpusSpec& spec = {},
                            Execution exec = Execution::Parallel);

struct SubgroupSamplerSpec {
    int subgroup_count = 4;
    int authors_per_subgroup = 500;
    int offset = 30;  // birth year = publication year - offset
    int pub_year_min = 0;
    int pub_year_max = 0;  // 0,0 = derive a safe range from the corpus
    std::uint64_t seed = 1;
};

// Samples labeled authors directly from the corpus: name weighted by birth
// counts, gender Bernoulli(p(F)) at birth year = publication year - offset.
std::vector<LabeledSubgroup> sample_labeled_subgroups(const SsaCorpus& corpus,
                                                      const SubgroupSamplerSpec& spec);

}  // namespace bibgender
