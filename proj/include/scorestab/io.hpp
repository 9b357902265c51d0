#pragma once

#include "scorestab/degradation.hpp"
#include "scorestab/discrimination.hpp"
#include "scorestab/distributions.hpp"
#include "scorestab/linkage.hpp"
#include "scorestab/oracle.hpp"
#include "scorestab/replication.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace scorestab::io {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path);

enum class DistributionCsv { bucketed, gridded };

/// Decides from the header: `bucket,mass` / `bucket,count` vs `score,density`.
DistributionCsv detect_distribution_csv(std::string_view csv);

/// `bucket,mass` (must sum to 1) or `bucket,count` (normalized).
BucketedDistribution parse_bucketed_csv(std::string_view csv);

/// `score,density` on a uniform grid.
GriddedDensity parse_gridded_csv(std::string_view csv);

/// `score,label` with label in {good, bad, 0, 1}; 1 means bad.
LabeledScoreSample parse_labeled_csv(std::string_view csv);

/// Rounds to 10 significant digits so the shortest JSON form stays stable.
double sig10(double value);
std::string format10(double value);

json to_json(const StabilityReport& report, const BucketedDistribution& base);
json to_json(const GiniEstimate& estimate, double auroc);
json to_json(const DegradationResult& result);
json to_json(const LinkageReport& report);
json to_json(const ScatterSummary& summary);
json to_json(const ValidationReport& report);

ShiftScenario scenario_from_json(const json& j);

std::string roc_csv(const RocCurve& roc);
std::string series_csv(const ScatterSummary& summary);

}  // namespace scorestab::io
