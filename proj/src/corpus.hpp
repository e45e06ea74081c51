#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "audio.hpp"
#include "segmentation.hpp"
#include "vowels.hpp"

namespace vm {

struct ManifestEntry {
    std::filesystem::path audio;
    std::filesystem::path segmentation;
    std::optional<SegFormat> format;  // inferred from extension when absent
};

struct SessionManifest {
    std::string speaker_id;
    Group group = Group::typical;
    Sex sex = Sex::unspecified;
    double age_years = 0.0;
    std::vector<ManifestEntry> entries;
    std::map<std::string, std::string> metadata;  // T-stage, location, ... (opaque)
};

// Paths in the manifest resolve relative to the manifest file's directory.
SessionManifest read_manifest(const std::filesystem::path& path);

struct VowelToken {
    std::string speaker_id;
    Group group = Group::typical;
    Vowel phoneme = Vowel::I;
    std::string word;
    int clip_index = 0;  // into Session::clips
    SegmentInterval interval;
    int token_id = 0;  // stable ordinal, unique within the session
};

struct Session {
    SessionManifest manifest;
    std::vector<AudioClip> clips;
    std::vector<VowelToken> tokens;
    int dropped_intervals = 0;
};

struct Corpus {
    std::vector<Session> sessions;
    std::vector<std::string> warnings;  // e.g. phonemes under the 12-token guideline
};

Corpus build_corpus(const std::vector<SessionManifest>& manifests,
                    const std::string& tier = "phoneme");

}  // namespace vm
