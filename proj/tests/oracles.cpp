#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fftw3.h>

namespace oracle {

std::vector<double> magnitude_spectrum(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    std::vector<std::complex<double>> out(n / 2 + 1);
    std::vector<double> in(samples);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> mag(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) mag[i] = std::abs(out[i]);
    return mag;
}

double dominant_frequency_hz(const std::vector<double>& samples, double fs_hz) {
    const std::size_t n = samples.size();
    std::vector<double> windowed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1));
        windowed[i] = samples[i] * w;
    }
    const auto mag = magnitude_spectrum(windowed);
    std::size_t peak = 1;
    for (std::size_t i = 2; i + 1 < mag.size(); ++i)
        if (mag[i] > mag[peak]) peak = i;
    // Quadratic interpolation around the peak bin in log magnitude.
    const double alpha = std::log(std::max(mag[peak - 1], 1e-300));
    const double beta = std::log(std::max(mag[peak], 1e-300));
    const double gamma = std::log(std::max(mag[peak + 1], 1e-300));
    const double denom = alpha - 2.0 * beta + gamma;
    const double delta = denom == 0.0 ? 0.0 : 0.5 * (alpha - gamma) / denom;
    return (static_cast<double>(peak) + delta) * fs_hz / static_cast<double>(n);
}

double envelope_peak_hz(const std::vector<double>& samples, double fs_hz, double f0_hz,
                        double lo_hz, double hi_hz) {
    const auto mag = magnitude_spectrum(samples);
    const double bin_hz = fs_hz / static_cast<double>(samples.size());

    // Amplitude of each harmonic: the largest bin within half an f0 of k*f0.
    std::vector<std::pair<double, double>> harmonics;  // (freq, amplitude)
    for (int k = 1;; ++k) {
        const double f = k * f0_hz;
        if (f >= fs_hz / 2.0 - f0_hz) break;
        const std::size_t lo_bin = static_cast<std::size_t>((f - 0.45 * f0_hz) / bin_hz);
        const std::size_t hi_bin = static_cast<std::size_t>((f + 0.45 * f0_hz) / bin_hz);
        std::size_t best = lo_bin;
        for (std::size_t b = lo_bin; b <= hi_bin && b < mag.size(); ++b)
            if (mag[b] > mag[best]) best = b;
        harmonics.emplace_back(best * bin_hz, mag[best]);
    }

    // Largest harmonic in the search band, then a log-parabola through it and
    // its neighbours approximates the envelope peak.
    std::size_t peak = 0;
    bool found = false;
    for (std::size_t i = 0; i < harmonics.size(); ++i) {
        if (harmonics[i].first < lo_hz || harmonics[i].first > hi_hz) continue;
        if (!found || harmonics[i].second > harmonics[peak].second) {
            peak = i;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("no harmonic in envelope search band");
    if (peak == 0 || peak + 1 >= harmonics.size()) return harmonics[peak].first;

    const double x1 = harmonics[peak - 1].first, x2 = harmonics[peak].first,
                 x3 = harmonics[peak + 1].first;
    const double y1 = std::log(harmonics[peak - 1].second),
                 y2 = std::log(harmonics[peak].second),
                 y3 = std::log(harmonics[peak + 1].second);
    const double d21 = (y2 - y1) / (x2 - x1);
    const double d32 = (y3 - y2) / (x3 - x2);
    const double curvature = (d32 - d21) / (x3 - x1);
    if (curvature >= 0.0) return x2;
    // Newton-form parabola vertex.
    return 0.5 * (x1 + x2) - d21 / (2.0 * curvature);
}

std::vector<double> ar_process(const std::vector<double>& a, std::size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t p = a.size();
    std::vector<double> x(n + 10 * p, 0.0);  // burn-in
    for (std::size_t i = p; i < x.size(); ++i) {
        double v = noise(rng);
        for (std::size_t k = 0; k < p; ++k) v -= a[k] * x[i - 1 - k];
        x[i] = v;
    }
    return {x.end() - static_cast<long>(n), x.end()};
}

namespace {

double polygon_area_if_convex(const std::vector<std::pair<double, double>>& pts) {
    // Orders the points around their centroid, then requires all cross
    // products to share a sign.
    const std::size_t n = pts.size();
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p.first;
        cy += p.second;
    }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::atan2(pts[i].second - cy, pts[i].first - cx) <
               std::atan2(pts[j].second - cy, pts[j].first - cx);
    });
    double area2 = 0.0;
    bool convex = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = pts[order[i]];
        const auto& q = pts[order[(i + 1) % n]];
        const auto& r = pts[order[(i + 2) % n]];
        const double cr = (q.first - p.first) * (r.second - q.second) -
                          (q.second - p.second) * (r.first - q.first);
        if (cr < 0) convex = false;
        area2 += p.first * q.second - q.first * p.second;
    }
    if (!convex || area2 <= 0.0) return 0.0;
    return 0.5 * area2;
}

}  // namespace

double brute_force_hull_area(const std::vector<std::pair<double, double>>& pts) {
    const std::size_t n = pts.size();
    if (n > 16) throw std::runtime_error("brute-force hull is exponential; keep n small");
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::pair<double, double>> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(pts[i]);
        if (subset.size() < 3) continue;
        best = std::max(best, polygon_area_if_convex(subset));
    }
    return best;
}

double permutation_p_value(const std::vector<double>& a, const std::vector<double>& b,
                           int n_permutations, uint64_t seed) {
    std::vector<double> pool(a);
    pool.insert(pool.end(), b.begin(), b.end());
    const std::size_t na = a.size();
    const double observed =
        std::fabs(std::accumulate(a.begin(), a.end(), 0.0) / a.size() -
                  std::accumulate(b.begin(), b.end(), 0.0) / b.size());

    std::mt19937_64 rng(seed);
    int at_least = 1;  // include the observed labelling
    for (int rep = 0; rep < n_permutations; ++rep) {
        std::shuffle(pool.begin(), pool.end(), rng);
        const double ma = std::accumulate(pool.begin(), pool.begin() + na, 0.0) / na;
        const double mb =
            std::accumulate(pool.begin() + na, pool.end(), 0.0) / (pool.size() - na);
        if (std::fabs(ma - mb) >= observed - 1e-12) ++at_least;
    }
    return static_cast<double>(at_least) / (n_permutations + 1);
}

std::vector<double> bh_adjust_bruteforce(const std::vector<double>& p) {
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return p[i] < p[j]; });
    std::vector<double> adjusted(m);
    for (std::size_t i = 0; i < m; ++i) {
        double q = 1.0;
        for (std::size_t j = i; j < m; ++j) {
            const double term =
                static_cast<double>(m) * p[order[j]] / static_cast<double>(j + 1);
            q = std::min(q, std::min(term, 1.0));
        }
        adjusted[order[i]] = q;
    }
    return adjusted;
}

double t_cdf_series(double t, double df) {
    // I_x(a, b) = x^a (1-x)^b / (a B(a,b)) * 2F1(a+b, 1; a+1; x), with the
    // symmetric-tail switch for convergence; long double throughout.
    auto hyp2f1_series = [](long double a, long double b, long double x) -> long double {
        // 2F1(a+b, 1; a+1; x) = sum_n ((a+b)_n / (a+1)_n) x^n
        long double term = 1.0L, sum = 1.0L;
        for (int n = 0; n < 100000; ++n) {
            term *= (a + b + n) / (a + 1.0L + n) * x;
            sum += term;
            if (std::fabs(static_cast<double>(term)) < 1e-20 * std::fabs(static_cast<double>(sum)))
                break;
        }
        return sum;
    };
    auto reg_inc_beta = [&](long double a, long double b, long double x) -> long double {
        auto core = [&](long double aa, long double bb, long double xx) -> long double {
            const long double log_front = aa * std::log(xx) + bb * std::log1p(-(double)xx) -
                                          std::log(aa) -
                                          (std::lgamma((double)aa) + std::lgamma((double)bb) -
                                           std::lgamma((double)(aa + bb)));
            return std::exp((double)log_front) * hyp2f1_series(aa, bb, xx);
        };
        if (x <= 0.0L) return 0.0L;
        if (x >= 1.0L) return 1.0L;
        if (x < (a + 1.0L) / (a + b + 2.0L)) return core(a, b, x);
        return 1.0L - core(b, a, 1.0L - x);
    };
    if (t == 0.0) return 0.5;
    const long double x = df / (df + static_cast<long double>(t) * t);
    const long double tail = 0.5L * reg_inc_beta(df / 2.0L, 0.5L, x);
    return static_cast<double>(t > 0 ? 1.0L - tail : tail);
}

double poly_residual(const std::vector<double>& a, std::complex<double> z) {
    std::complex<double> acc(1.0, 0.0);
    for (double coeff : a) acc = acc * z + coeff;
    return std::abs(acc);
}

}  // namespace oracle
