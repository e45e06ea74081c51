#pragma once

#include <optional>
#include <span>
#include <vector>

namespace vm {

// Coefficients of the prediction-error filter A(z) = 1 + sum_k a[k] z^-k,
// estimated by minimizing the combined forward/backward prediction error.
struct BurgResult {
    std::vector<double> a;           // a[0] is the z^-1 coefficient
    std::vector<double> reflection;  // one per stage, each in (-1, 1)
};

// Returns nullopt for an all-zero (silent) frame; the caller skips the frame.
std::optional<BurgResult> burg_coefficients(std::span<const double> frame, int order);

}  // namespace vm
