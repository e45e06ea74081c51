#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "formant.hpp"
#include "vowels.hpp"

namespace vm {

// One row of the measurements table; the unit the metrics stage consumes,
// whether produced in memory or parsed back from CSV.
struct MeasurementRow {
    int token_id = 0;
    std::string speaker;
    Group group = Group::typical;
    Vowel phoneme = Vowel::I;
    std::string word;
    double f1_hz = 0, f2_hz = 0, b1_hz = 0, b2_hz = 0;
    int ceiling_hz = 0;
    int n_frames = 0;
    bool flagged = false;
};

struct NormalizedPoint {
    int token_id = 0;
    std::string speaker;
    Group group = Group::typical;
    Vowel phoneme = Vowel::I;
    double z1 = 0, z2 = 0;  // Lobanov units
};

struct PhonemeCenter {
    Vowel phoneme = Vowel::I;
    double z1 = 0, z2 = 0;  // componentwise median
};

struct VfdValue {
    int token_id = 0;
    std::string speaker;
    Group group = Group::typical;
    Vowel phoneme = Vowel::I;
    double vfd = 0;      // Lobanov-unit Euclidean distance to the phoneme center
    double log_vfd = 0;  // ln(max(vfd, 1e-9))
};

struct ClarityScore {
    std::string speaker;
    Group group = Group::typical;
    double vai = 0;
    double vsa_hz2 = 0;
    // corner phoneme -> (F1, F2) aggregate in Hz
    std::map<Vowel, std::pair<double, double>> corner_hz;
};

// z-scores one normalization scope (all unflagged tokens of all phonemes of a
// speaker-session, or of a speaker when sessions are pooled). Sample SD (n-1).
// Throws "degenerate scope" when either dimension has zero spread.
std::vector<NormalizedPoint> lobanov_normalize(std::span<const MeasurementRow> scope);

enum class CornerStat { mean, median };

// VAI = (F2_i + F1_a) / (F1_i + F1_u + F2_u + F2_a), formants in Hz.
// Throws when a corner vowel /i/, /a:/ or /u/ has no unflagged token.
double compute_vai(std::span<const MeasurementRow> session, CornerStat stat = CornerStat::mean);

// Convex-hull area (shoelace) of per-phoneme mean (F2, F1) points in Hz^2.
// Fewer than 3 distinct points yields 0 (caller warns).
double compute_vsa(std::span<const MeasurementRow> session);

// Componentwise median center per phoneme over unflagged points.
std::vector<PhonemeCenter> phoneme_centers(std::span<const NormalizedPoint> points);

std::vector<VfdValue> compute_vfd(std::span<const NormalizedPoint> points,
                                  std::span<const PhonemeCenter> centers);

constexpr double kVfdLogFloor = 1e-9;

}  // namespace vm
