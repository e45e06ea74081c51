#pragma once

#include <span>
#include <string>

#include "metrics.hpp"

namespace vm {

// Deterministic SVG renderers (fixed-precision coordinates, sorted iteration)
// so plots can be golden-file tested byte for byte.

// One vowel-space panel: token points in Lobanov space, connected to the
// group-level median of their phoneme. F2 decreases rightward, F1 decreases
// upward (articulatory orientation).
std::string vowel_space_svg(Group group, std::span<const NormalizedPoint> points);

// Pre -> post VAI per patient, one row per speaker.
std::string vai_dumbbell_svg(std::span<const ClarityScore> clarity);

// Per-speaker change bars: delta VAI and delta mean /i/ VFD (post - pre).
std::string change_panels_svg(std::span<const ClarityScore> clarity,
                              std::span<const VfdValue> vfd);

}  // namespace vm
