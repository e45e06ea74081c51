#include "resample.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "util.hpp"

namespace vm {

namespace {

constexpr int kHalfWidthInputSamples = 32;
constexpr double kKaiserBeta = 9.0;
constexpr double kCutoffFraction = 0.95;  // of the narrower Nyquist

double bessel_i0(double x) {
    // Power series; converges quickly for the argument range used here.
    double sum = 1.0, term = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

struct PolyphaseFilter {
    int up = 1;    // L
    int down = 1;  // M
    int taps_per_phase = 0;
    // taps[phase * taps_per_phase + i] pairs with x[q - (i - half_phases)].
    std::vector<double> taps;
    int left_reach = 0;  // input samples of look-back per output sample
};

std::shared_ptr<const PolyphaseFilter> build_filter(int fs_in, int fs_out) {
    const int g = std::gcd(fs_in, fs_out);
    auto f = std::make_shared<PolyphaseFilter>();
    f->up = fs_out / g;
    f->down = fs_in / g;
    if (f->up > 100000) throw_input(strprintf(
        "unsupported resampling ratio %d -> %d Hz", fs_in, fs_out));

    // Kernel in upsampled-rate units (fs_in * L). Cutoff sits below the
    // narrower of the two Nyquists; gain L compensates the zero insertion.
    const double cutoff = kCutoffFraction * M_PI / std::max(f->up, f->down);
    const int half_len = kHalfWidthInputSamples * f->up;
    const double inv_i0 = 1.0 / bessel_i0(kKaiserBeta);

    f->taps_per_phase = 2 * kHalfWidthInputSamples;
    f->left_reach = kHalfWidthInputSamples;
    f->taps.assign(static_cast<std::size_t>(f->up) * f->taps_per_phase, 0.0);
    for (int phase = 0; phase < f->up; ++phase) {
        for (int i = 0; i < f->taps_per_phase; ++i) {
            // Tap index along the prototype filter: j = phase + (i - half) * L,
            // mirrored so that positive i looks further back in the input.
            const int j = phase + (i - kHalfWidthInputSamples) * f->up;
            if (std::abs(j) >= half_len) continue;
            const double sinc = (j == 0) ? cutoff / M_PI
                                         : std::sin(cutoff * j) / (M_PI * j);
            const double u = static_cast<double>(j) / half_len;
            const double window = bessel_i0(kKaiserBeta * std::sqrt(1.0 - u * u)) * inv_i0;
            f->taps[static_cast<std::size_t>(phase) * f->taps_per_phase + i] =
                sinc * window * f->up;
        }
    }
    return f;
}

std::shared_ptr<const PolyphaseFilter> get_filter(int fs_in, int fs_out) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const PolyphaseFilter>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{fs_in, fs_out}];
    if (!slot) slot = build_filter(fs_in, fs_out);
    return slot;
}

}  // namespace

AudioClip resample(const AudioClip& clip, int target_rate) {
    if (clip.sample_rate <= 0 || clip.samples.empty())
        throw_input("cannot resample an empty clip");
    if (target_rate <= 0) throw_input("target sample rate must be positive");
    if (target_rate == clip.sample_rate) return clip;

    const auto filter = get_filter(clip.sample_rate, target_rate);
    const int up = filter->up, down = filter->down;
    const std::size_t n_in = clip.samples.size();
    const std::size_t n_out =
        (n_in * static_cast<std::size_t>(up) + down - 1) / static_cast<std::size_t>(down);

    AudioClip out;
    out.sample_rate = target_rate;
    out.samples.assign(n_out, 0.0);
    const double* x = clip.samples.data();
    const int tpp = filter->taps_per_phase;
    const int reach = filter->left_reach;
    for (std::size_t m = 0; m < n_out; ++m) {
        const std::size_t n_up = m * static_cast<std::size_t>(down);
        const std::size_t q = n_up / up;
        const int phase = static_cast<int>(n_up % up);
        const double* taps = &filter->taps[static_cast<std::size_t>(phase) * tpp];
        double acc = 0.0;
        if (q >= static_cast<std::size_t>(tpp - 1 - reach) && q + reach < n_in) {
            const double* base = x + q + reach;  // i = 0 reads x[q + reach]
            for (int i = 0; i < tpp; ++i) acc += taps[i] * base[-i];
        } else {
            for (int i = 0; i < tpp; ++i) {
                const long idx = static_cast<long>(q) - (i - reach);
                if (idx < 0 || idx >= static_cast<long>(n_in)) continue;
                acc += taps[i] * x[idx];
            }
        }
        out.samples[m] = acc;
    }
    return out;
}

void pre_emphasize(AudioClip& clip, double from_hz) {
    const double a = std::exp(-2.0 * M_PI * from_hz / clip.sample_rate);
    double prev = 0.0;
    for (double& s : clip.samples) {
        const double cur = s;
        s = cur - a * prev;
        prev = cur;
    }
}

AudioClip preprocess(const AudioClip& clip, int ceiling_hz, double pre_emphasis_from_hz) {
    if (ceiling_hz <= 0) throw_input("formant ceiling must be positive");
    if (2 * ceiling_hz > clip.sample_rate)
        throw_input(strprintf("ceiling %d Hz is at or above the Nyquist frequency of a %d Hz clip",
                              ceiling_hz, clip.sample_rate));
    AudioClip out = resample(clip, 2 * ceiling_hz);
    pre_emphasize(out, pre_emphasis_from_hz);
    return out;
}

}  // namespace vm
