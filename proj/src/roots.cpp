#include "roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "util.hpp"

namespace vm {

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& a) {
    // Strip trailing zero coefficients; they contribute roots at the origin,
    // which carry no resonance.
    std::size_t p = a.size();
    while (p > 0 && a[p - 1] == 0.0) --p;
    if (p == 0) return {};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<long>(p),
                                                      static_cast<long>(p));
    for (std::size_t i = 0; i < p; ++i) companion(0, static_cast<long>(i)) = -a[i];
    for (std::size_t i = 1; i < p; ++i)
        companion(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;

    // The companion matrix is already upper Hessenberg, so the Schur iteration
    // can start directly; eigenvectors are never needed.
    Eigen::RealSchur<Eigen::MatrixXd> schur(static_cast<long>(p));
    schur.computeFromHessenberg(companion, Eigen::MatrixXd::Identity(static_cast<long>(p),
                                                                     static_cast<long>(p)),
                                false);
    if (schur.info() != Eigen::Success) throw_internal("LPC root solver failed to converge");
    const Eigen::MatrixXd& t = schur.matrixT();

    std::vector<std::complex<double>> roots;
    roots.reserve(p);
    long i = 0;
    const long np = static_cast<long>(p);
    while (i < np) {
        if (i + 1 < np && t(i + 1, i) != 0.0) {
            // 2x2 block: complex conjugate pair.
            const double m = 0.5 * (t(i, i) + t(i + 1, i + 1));
            const double det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
            const double disc = m * m - det;
            if (disc < 0.0) {
                const double im = std::sqrt(-disc);
                roots.emplace_back(m, im);
                roots.emplace_back(m, -im);
            } else {
                const double s = std::sqrt(disc);
                roots.emplace_back(m + s, 0.0);
                roots.emplace_back(m - s, 0.0);
            }
            i += 2;
        } else {
            roots.emplace_back(t(i, i), 0.0);
            i += 1;
        }
    }
    return roots;
}

std::vector<Resonance> roots_to_formants(const std::vector<double>& a, double fs_hz,
                                         double ceiling_hz) {
    constexpr double kEdgeMarginHz = 50.0;
    constexpr double kMaxBandwidthHz = 700.0;

    std::vector<Resonance> out;
    for (std::complex<double> z : polynomial_roots(a)) {
        if (z.imag() <= 0.0) continue;  // conjugates counted once; real roots carry no formant
        double mag = std::abs(z);
        if (mag >= 1.0) {
            if (mag == 0.0) continue;
            z = z / (mag * mag);  // reflect into the unit circle, angle preserved
            mag = std::abs(z);
        }
        const double freq = std::atan2(z.imag(), z.real()) * fs_hz / (2.0 * M_PI);
        const double bw = -std::log(mag) * fs_hz / M_PI;
        if (freq <= kEdgeMarginHz || freq >= ceiling_hz - kEdgeMarginHz) continue;
        if (bw <= 0.0 || bw >= kMaxBandwidthHz) continue;
        out.push_back({freq, bw});
    }
    std::sort(out.begin(), out.end(), [](const Resonance& x, const Resonance& y) {
        return x.frequency_hz < y.frequency_hz;
    });
    return out;
}

}  // namespace vm
