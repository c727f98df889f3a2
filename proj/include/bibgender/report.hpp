#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "bibgender/calibration.hpp"
#include "bibgender/cohort.hpp"
#include "bibgender/ssa_corpus.hpp"
#include "bibgender/trends.hpp"

namespace bibgender {

// All emitters order their content (groups alphabetical, years ascending,
// shifts ascending) so identical inputs produce byte-identical files.

nlohmann::ordered_json observations_json(std::span<const CohortObservation> observations);

nlohmann::ordered_json trend_report_json(const TrendReport& report);
std::string trend_report_csv(const TrendReport& report);

nlohmann::ordered_json calibration_json(const CalibrationResult& result);
std::string calibration_fig2_csv(const CalibrationResult& result);

// Figure 3/4 data: x (year), y (pct women), bubble area (cohort size).
std::string fig34_csv(std::span<const CohortObservation> observations);
// Figure 5 data: group placement in the benchmark quadrant.
std::string fig5_csv(const TrendReport& report);

nlohmann::ordered_json ingest_summary_json(const SsaCorpus& corpus);
nlohmann::ordered_json corpus_dump_json(const SsaCorpus& corpus);

}  // namespace bibgender
