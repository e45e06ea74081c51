// Independent reference implementations used only by tests. Each one checks a
// production path through a different algorithm than the implementation uses.
#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

// Magnitude spectrum |DFT(x)| for bins 0..n/2 (FFTW under the hood).
std::vector<double> magnitude_spectrum(const std::vector<double>& samples);

// Dominant frequency via FFT peak with quadratic interpolation in log
// magnitude (Hann windowed).
double dominant_frequency_hz(const std::vector<double>& samples, double fs_hz);

// Spectral-envelope peak near a target frequency: parabolic fit over the
// harmonic amplitudes of an f0-periodic signal.
double envelope_peak_hz(const std::vector<double>& samples, double fs_hz, double f0_hz,
                        double lo_hz, double hi_hz);

// Seeded AR process x[n] = -a1 x[n-1] - ... - ap x[n-p] + e[n].
std::vector<double> ar_process(const std::vector<double>& a, std::size_t n, uint64_t seed);

// Convex hull area by exhaustive subset search (max area over convex
// vertex subsets), O(2^n) - for tiny point sets only.
double brute_force_hull_area(const std::vector<std::pair<double, double>>& pts);

// Two-sided permutation test on the difference of means (label shuffles).
double permutation_p_value(const std::vector<double>& a, const std::vector<double>& b,
                           int n_permutations, uint64_t seed);

// Brute-force Benjamini-Hochberg step-up: direct min over j >= i on the
// sorted vector, no running-minimum pass.
std::vector<double> bh_adjust_bruteforce(const std::vector<double>& p);

// Student-t CDF through the Gauss hypergeometric series for the regularized
// incomplete beta, in long double arithmetic.
double t_cdf_series(double t, double df);

// Polynomial residual |z^p + a1 z^(p-1) + ... + ap| at a candidate root.
double poly_residual(const std::vector<double>& a, std::complex<double> z);

}  // namespace oracle
