#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "metrics.hpp"
#include "stats.hpp"

namespace vm {

// CSV schemas are fixed external interfaces; writers and parsers live side by
// side so every stage can be driven from files.

void write_measurements_csv(const std::filesystem::path& path,
                            std::span<const MeasurementRow> rows);
std::vector<MeasurementRow> read_measurements_csv(const std::filesystem::path& path);

void write_clarity_csv(const std::filesystem::path& path, std::span<const ClarityScore> rows);
std::vector<ClarityScore> read_clarity_csv(const std::filesystem::path& path);

void write_variability_csv(const std::filesystem::path& path, std::span<const VfdValue> rows);
std::vector<VfdValue> read_variability_csv(const std::filesystem::path& path);

void write_points_csv(const std::filesystem::path& path, std::span<const NormalizedPoint> rows);
std::vector<NormalizedPoint> read_points_csv(const std::filesystem::path& path);

void write_results_csv(const std::filesystem::path& path,
                       std::span<const ComparisonResult> rows);

void write_descriptives_csv(const std::filesystem::path& path,
                            std::span<const DescriptiveRow> rows);

}  // namespace vm
