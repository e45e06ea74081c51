#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "formant.hpp"
#include "metrics.hpp"
#include "stats.hpp"
#include "synth.hpp"

namespace vm {

enum class NormScope { session, speaker };

struct RunOptions {
    ExtractionConfig extraction;
    std::string tier = "phoneme";
    NormScope norm_scope = NormScope::session;
    CornerStat vai_stat = CornerStat::mean;
    std::optional<uint64_t> seed;  // overrides the recipe seed when set
    bool emit_csv = true, emit_json = true, emit_svg = true;
};

// Mirrors the CLI exit-code contract: 0 success, 1 partial (warnings),
// 2 input error, 3 internal error.
enum Status : int { kOk = 0, kPartial = 1, kInputError = 2, kInternalError = 3 };

struct RunOutcome {
    int status = kOk;
    std::vector<std::string> messages;

    std::string joined() const;
};

// --- in-memory stages (used by the file-level runners and by tests) ---------

struct SessionExtraction {
    std::string speaker;
    Group group = Group::typical;
    std::vector<MeasurementRow> rows;  // winning-ceiling measurements, flags set
    std::map<Vowel, int> ceiling_by_phoneme;
    int tokens_in = 0, measured = 0, dropped = 0, flagged = 0;
    std::vector<std::string> dropped_tokens;
};

std::vector<SessionExtraction> extract_corpus(const Corpus& corpus,
                                              const ExtractionConfig& config,
                                              std::vector<std::string>* warnings = nullptr);

struct MetricsBundle {
    std::vector<ClarityScore> clarity;
    std::vector<NormalizedPoint> points;
    std::vector<VfdValue> vfd;
    std::vector<std::string> diagnostics;
};

MetricsBundle compute_metrics(std::span<const MeasurementRow> rows, NormScope scope,
                              CornerStat vai_stat);

// --- file-level runners (the C API surface calls straight into these) --------

// Manifest paths may also point to a JSON array of manifest paths (a corpus
// index); entries resolve relative to the index file.
RunOutcome run_extract(const std::vector<std::filesystem::path>& manifests,
                       const std::filesystem::path& out_dir, const RunOptions& options);

RunOutcome run_metrics(const std::filesystem::path& measurements_csv,
                       const std::filesystem::path& out_dir, const RunOptions& options);

RunOutcome run_compare(const std::filesystem::path& clarity_csv,
                       const std::filesystem::path& variability_csv,
                       const std::filesystem::path& out_dir, const RunOptions& options);

RunOutcome run_plot(const std::filesystem::path& clarity_csv,
                    const std::filesystem::path& variability_csv,
                    const std::filesystem::path& points_csv,
                    const std::filesystem::path& out_dir, const RunOptions& options);

RunOutcome run_synth_demo(const std::optional<std::filesystem::path>& recipe_json,
                          const std::filesystem::path& out_dir, const RunOptions& options);

}  // namespace vm
