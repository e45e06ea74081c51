#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "audio.hpp"
#include "roots.hpp"
#include "vowels.hpp"

namespace vm {

struct VowelSpec {
    double f0_hz = 120.0;
    std::vector<Resonance> formants;  // >= 2, ascending, all below Nyquist
    double duration_s = 0.3;
    int sample_rate_hz = 22050;
    double amplitude = 0.9;      // peak after normalization, in (0, 1]
    uint64_t seed = 0;           // drives the additive noise floor
    double noise_level = 1e-4;   // rms of seeded white noise mixed into the source
};

// Impulse train through cascaded two-pole resonators, peak-normalized.
// Bit-identical output for identical spec + seed.
AudioClip synthesize_vowel(const VowelSpec& spec);

struct PhonemeTarget {
    double f1 = 0, f2 = 0;      // Hz means
    double sd_f1 = 0, sd_f2 = 0;  // Hz dispersions
};

struct CorpusRecipe {
    uint64_t seed = 42;
    int typical_speakers = 3;
    int patient_speakers = 3;  // each yields a pre- and a post-surgery session
    int tokens_per_phoneme = 12;
    int sample_rate_hz = 22050;
    double token_min_s = 0.17, token_max_s = 0.23;
    double gap_s = 0.12;
    std::map<Group, std::map<Vowel, PhonemeTarget>> targets;
};

// Baseline recipe: identical vowel targets in all three groups.
CorpusRecipe null_recipe();

// Paper-shaped demo: post-surgery /i/ dispersion doubled and post-surgery
// corner vowels pulled 5% toward the vowel-space center.
CorpusRecipe default_recipe();

CorpusRecipe recipe_from_json_file(const std::filesystem::path& path);

struct GeneratedCorpus {
    std::vector<std::filesystem::path> manifests;
    std::filesystem::path index;  // JSON array listing the manifests
};

// Writes one WAV + CSV segmentation + manifest per speaker-session, plus a
// corpus index. Token formants are truncated-Gaussian draws (+-3 sigma,
// 50 Hz floor) around the recipe targets; everything derives from the seed.
GeneratedCorpus generate_corpus(const CorpusRecipe& recipe,
                                const std::filesystem::path& out_dir);

}  // namespace vm
