#include "burg.hpp"

#include "util.hpp"

namespace vm {

std::optional<BurgResult> burg_coefficients(std::span<const double> frame, int order) {
    const std::size_t n = frame.size();
    if (order < 1) throw_input("LPC order must be >= 1");
    if (static_cast<std::size_t>(order) >= n)
        throw_input(strprintf("LPC order %d >= frame length %zu", order, n));

    double energy = 0.0;
    for (double s : frame) energy += s * s;
    if (energy == 0.0) return std::nullopt;  // silent frame

    std::vector<double> f(frame.begin(), frame.end());  // forward error
    std::vector<double> b(frame.begin(), frame.end());  // backward error
    BurgResult result;
    result.a.assign(static_cast<std::size_t>(order), 0.0);
    std::vector<double> prev(result.a);

    for (int m = 1; m <= order; ++m) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = static_cast<std::size_t>(m); i < n; ++i) {
            num += f[i] * b[i - 1];
            den += f[i] * f[i] + b[i - 1] * b[i - 1];
        }
        if (den <= 0.0) break;  // residual fully predicted; keep lower-order model
        const double k = -2.0 * num / den;
        result.reflection.push_back(k);

        prev = result.a;
        result.a[m - 1] = k;
        for (int i = 1; i < m; ++i) result.a[i - 1] = prev[i - 1] + k * prev[m - 1 - i];

        // In-place lattice update; b shifts one sample per stage.
        for (std::size_t i = n - 1; i >= static_cast<std::size_t>(m); --i) {
            const double fi = f[i];
            const double bi = b[i - 1];
            f[i] = fi + k * bi;
            b[i] = bi + k * fi;
        }
    }
    return result;
}

}  // namespace vm
