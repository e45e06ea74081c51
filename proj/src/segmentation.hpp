#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vowels.hpp"

namespace vm {

struct SegmentInterval {
    double start_s = 0.0;
    double end_s = 0.0;
    Vowel phoneme = Vowel::I;
    std::string word;
    bool stressed = true;
};

enum class SegFormat { csv, textgrid };

std::optional<SegFormat> infer_seg_format(const std::filesystem::path& path);

struct SegmentationResult {
    std::vector<SegmentInterval> intervals;  // sorted by start, non-overlapping
    int dropped = 0;  // labelled intervals that were unstressed or not in the inventory
};

// CSV format: exact header start_s,end_s,phoneme,word,stressed (UTF-8, '.' decimal).
// TextGrid: long text format, interval tiers only; intervals on the named tier
// whose label canonicalizes to one of the six vowels are taken as stressed
// tokens (the tier is assumed to hold exactly the annotated stressed vowels).
SegmentationResult read_segmentation(const std::filesystem::path& path, SegFormat format,
                                     const std::string& tier = "phoneme");

}  // namespace vm
