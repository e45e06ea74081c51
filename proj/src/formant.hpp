#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "audio.hpp"
#include "roots.hpp"
#include "vowels.hpp"

namespace vm {

struct ExtractionConfig {
    double time_step_s = 0.01;
    double window_s = 0.025;
    std::vector<int> ceilings_hz = {4000, 4500, 5000, 5500, 6000};
    int n_formants_tracked = 5;
    int lpc_order = 10;  // 2 * n_formants_tracked
    double pre_emphasis_from_hz = 50.0;
    double middle_fraction = 0.25;

    void validate() const;
};

struct FrameFormants {
    double frame_center_s = 0.0;
    std::vector<Resonance> formants;  // ascending in frequency
};

struct FormantMeasurement {
    int token_id = 0;
    double f1_hz = 0, f2_hz = 0, b1_hz = 0, b2_hz = 0;
    int ceiling_hz = 0;
    int n_frames = 0;  // frames that contributed to the medians
    bool flagged = false;
};

enum class TokenDrop { too_short, silent, no_frame_with_two_formants, formant_order };
const char* drop_reason(TokenDrop d);

// Frame centers lie on an inclusive grid over the central middle_fraction of
// the token; a frame qualifies only if its analysis window fits inside the
// token. Short tokens fall back to a single frame at the token midpoint.
std::vector<double> frame_centers(double start_s, double end_s, const ExtractionConfig& cfg);

// `prepared` is the preprocess() output for this clip at `ceiling_hz`.
std::vector<FrameFormants> extract_token_frames(const AudioClip& prepared, double start_s,
                                                double end_s, const ExtractionConfig& cfg,
                                                int ceiling_hz);

std::optional<FormantMeasurement> measure_token(const AudioClip& prepared, int token_id,
                                                double start_s, double end_s,
                                                const ExtractionConfig& cfg, int ceiling_hz,
                                                TokenDrop* drop = nullptr);

// Picks the sweep ceiling with the lowest variation score
// CV(F1)^2 + CV(F2)^2 for one (session, phoneme) cell. Ceilings with no
// surviving tokens are out of contention; if any contender has fewer than two
// tokens the most-populated ceiling wins. Ties resolve to the lowest ceiling.
int select_ceiling(const std::map<int, std::vector<FormantMeasurement>>& per_ceiling);

// Robust MAD-based outlier marking within one (session, phoneme) cell.
// Cells with fewer than 3 tokens are never flagged. When the MAD is zero,
// only values more than 1 Hz from the median are flagged.
void flag_mistracks(std::vector<FormantMeasurement>& cell);

}  // namespace vm
