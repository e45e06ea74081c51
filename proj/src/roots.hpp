#pragma once

#include <complex>
#include <vector>

namespace vm {

struct Resonance {
    double frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
};

// Roots of z^p + a[0] z^(p-1) + ... + a[p-1], i.e. of A(z) from the Burg fit,
// via the companion-matrix eigenproblem.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& a);

// Upper-half-plane roots mapped to resonances: F = arg(z).fs/(2pi),
// B = -ln|z|.fs/pi. Roots outside the unit circle are reflected into it.
// Keeps 50 Hz < F < ceiling - 50 Hz and 0 < B < 700 Hz; ascending in F.
std::vector<Resonance> roots_to_formants(const std::vector<double>& a, double fs_hz,
                                         double ceiling_hz);

}  // namespace vm
