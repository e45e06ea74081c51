#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "resample.hpp"
#include "util.hpp"

using namespace vm;

namespace {

AudioClip sinusoid(double freq, double fs, double duration, double amp = 0.5) {
    AudioClip clip;
    clip.sample_rate = static_cast<int>(fs);
    const std::size_t n = static_cast<std::size_t>(duration * fs);
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        clip.samples[i] = amp * std::sin(2.0 * M_PI * freq * i / fs);
    return clip;
}

}  // namespace

TEST_CASE("constant-zero clip stays zero through preprocessing") {
    AudioClip clip;
    clip.sample_rate = 22050;
    clip.samples.assign(22050, 0.0);
    const AudioClip out = preprocess(clip, 5000, 50.0);
    CHECK(out.sample_rate == 10000);
    for (double s : out.samples) CHECK(s == 0.0);
}

TEST_CASE("22050 Hz with ceiling 5000 resamples to 10000 Hz") {
    const AudioClip out = preprocess(sinusoid(1000, 22050, 0.5), 5000, 50.0);
    CHECK(out.sample_rate == 10000);
    CHECK(out.samples.size() == doctest::Approx(0.5 * 10000).epsilon(0.01));
}

TEST_CASE("pure 1 kHz tone keeps its frequency through preprocess (FFT oracle)") {
    const AudioClip out = preprocess(sinusoid(1000, 22050, 1.0), 5000, 50.0);
    const double peak = oracle::dominant_frequency_hz(out.samples, out.sample_rate);
    CHECK(std::fabs(peak - 1000.0) < 1.0);
}

TEST_CASE("tones above the new Nyquist are attenuated away") {
    const AudioClip out = resample(sinusoid(5600, 22050, 0.5), 10000);
    double peak = 0.0;
    for (double s : out.samples) peak = std::max(peak, std::fabs(s));
    CHECK(peak < 1e-3);  // stopband
}

TEST_CASE("in-band tones keep their amplitude") {
    const AudioClip out = resample(sinusoid(1000, 22050, 0.5), 10000);
    double peak = 0.0;
    for (std::size_t i = out.samples.size() / 4; i < 3 * out.samples.size() / 4; ++i)
        peak = std::max(peak, std::fabs(out.samples[i]));
    CHECK(peak == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("ceiling at or above source Nyquist is an input error") {
    CHECK_THROWS_AS(preprocess(sinusoid(100, 8000, 0.1), 4000, 50.0), Error);
    CHECK_THROWS_AS(preprocess(sinusoid(100, 8000, 0.1), 5000, 50.0), Error);
    CHECK_NOTHROW(preprocess(sinusoid(100, 8000, 0.1), 3500, 50.0));
}

TEST_CASE("pre-emphasis applies the documented first difference") {
    AudioClip clip;
    clip.sample_rate = 10000;
    clip.samples = {1.0, 1.0, 1.0};
    pre_emphasize(clip, 50.0);
    const double a = std::exp(-2.0 * M_PI * 50.0 / 10000.0);
    CHECK(clip.samples[0] == doctest::Approx(1.0));
    CHECK(clip.samples[1] == doctest::Approx(1.0 - a));
    CHECK(clip.samples[2] == doctest::Approx(1.0 - a));
}
