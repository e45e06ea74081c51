#pragma once

#include "audio.hpp"

namespace vm {

// Rational-ratio resampler: windowed-sinc (Kaiser, beta = 9, ~24 input samples
// per side) evaluated through a per-ratio polyphase table. Tables are cached
// per (input rate, output rate) pair.
AudioClip resample(const AudioClip& clip, int target_rate);

// First-difference pre-emphasis x'[n] = x[n] - a.x[n-1], a = exp(-2.pi.f/fs).
void pre_emphasize(AudioClip& clip, double from_hz);

// Formant-tracker front end: resample to 2 * ceiling, then pre-emphasize.
// Requires ceiling < Nyquist of the source clip.
AudioClip preprocess(const AudioClip& clip, int ceiling_hz, double pre_emphasis_from_hz);

}  // namespace vm
