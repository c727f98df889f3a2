#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibgender/execution.hpp"
#include "bibgender/gender_inference.hpp"
#include "bibgender/ssa_corpus.hpp"

namespace bibgender {

// A personally-identified author used to tune the year shift.
struct LabeledAuthor {
    std::string given_name;
    int publication_year = 0;
    double true_p_female = 0.0;  // exactly 0 or 1
};

struct LabeledSubgroup {
    std::string id;
    std::vector<LabeledAuthor> authors;
};

inline constexpr int kDefaultShiftGrid[] = {20, 25, 30, 35, 40, 45, 50};

struct DifferentialResult {
    double mean_abs_diff = 0.0;  // mean |computed p(F) - actual p(F)| over resolvable authors
    double coverage = 0.0;       // resolvable / total
    std::size_t resolvable = 0;
    std::size_t total = 0;
};

// Evaluates one subgroup at one shift. Authors whose name is non-SSA at
// that shift are excluded from the mean and reflected in coverage.
// Throws std::invalid_argument on an empty subgroup and ZeroResolvableError
// when nothing resolves.
DifferentialResult differential(const SsaCorpus& corpus, std::span<const LabeledAuthor> subgroup,
                                int year_shift, const InferenceConfig& base = {});

struct CurvePoint {
    int shift = 0;
    double differential = 0.0;
    double coverage = 0.0;
    std::size_t resolvable = 0;
    std::size_t total = 0;
    bool valid = false;  // false when no author resolved at this shift
};

struct CalibrationCurve {
    std::string subgroup_id;
    std::vector<CurvePoint> points;  // one per grid shift, ascending
    std::optional<int> argmin;       // smallest differential; ties to the smaller shift
    std::string error;               // non-empty when the whole subgroup failed
};

struct CalibrationResult {
    std::vector<CalibrationCurve> curves;
    CalibrationCurve pooled;  // subgroups concatenated, weighted by resolvable counts
    std::optional<int> consensus;
    std::vector<std::string> minority;  // subgroups whose argmin disagrees with the consensus
    std::vector<std::string> warnings;  // tie-break notes
};

// Grid-searches the shift per subgroup and picks the modal argmin as the
// consensus (ties break toward 30, with a warning). Per-subgroup failures
// are recorded without aborting the rest.
CalibrationResult calibrate(const SsaCorpus& corpus, std::span<const LabeledSubgroup> subgroups,
                            std::span<const int> grid, const InferenceConfig& base = {},
                            Execution exec = Execution::Parallel);

// CSV with header `given_name,publication_year,gender`, gender F or M.
std::vector<LabeledAuthor> parse_labeled_csv(std::string_view csv_text);

}  // namespace bibgender
