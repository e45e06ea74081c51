#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "formant.hpp"
#include "resample.hpp"
#include "synth.hpp"
#include "util.hpp"

using namespace vm;

TEST_CASE("frame grid: 0.20 s token yields 6 inclusive centers") {
    ExtractionConfig cfg;
    const auto centers = frame_centers(1.0, 1.2, cfg);
    REQUIRE(centers.size() == 6);  // central span 0.05 s, step 0.01, inclusive
    CHECK(centers.front() == doctest::Approx(1.075));
    CHECK(centers.back() == doctest::Approx(1.125));
    for (std::size_t i = 1; i < centers.size(); ++i)
        CHECK(centers[i] - centers[i - 1] == doctest::Approx(0.01));
}

TEST_CASE("frame grid: short token falls back to its midpoint") {
    ExtractionConfig cfg;
    const auto centers = frame_centers(0.5, 0.515, cfg);  // 15 ms < 25 ms window
    REQUIRE(centers.size() == 1);
    CHECK(centers[0] == doctest::Approx(0.5075));
}

TEST_CASE("config invariants are enforced") {
    ExtractionConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.lpc_order = 9;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = ExtractionConfig{};
    cfg.ceilings_hz = {5000, 4000};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = ExtractionConfig{};
    cfg.window_s = 0.005;  // below the step
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("silent token is dropped with a reason") {
    AudioClip clip;
    clip.sample_rate = 10000;
    clip.samples.assign(10000, 0.0);
    ExtractionConfig cfg;
    TokenDrop why = TokenDrop::too_short;
    const auto m = measure_token(clip, 0, 0.3, 0.5, cfg, 5000, &why);
    CHECK(!m.has_value());
    CHECK(why == TokenDrop::silent);
}

TEST_CASE("synthesized vowel measures close to its formants at one ceiling") {
    VowelSpec spec;
    spec.f0_hz = 120.0;
    spec.duration_s = 0.4;
    spec.sample_rate_hz = 22050;
    spec.formants = {{700, 70}, {1200, 90}, {2900, 140}, {3900, 180}, {4750, 220}};
    const AudioClip vowel = synthesize_vowel(spec);

    ExtractionConfig cfg;
    const AudioClip prepared = preprocess(vowel, 5500, cfg.pre_emphasis_from_hz);
    const auto m = measure_token(prepared, 0, 0.0, 0.4, cfg, 5500);
    REQUIRE(m.has_value());
    CHECK(m->n_frames >= 6);
    CHECK(std::fabs(m->f1_hz - 700.0) / 700.0 < 0.05);
    CHECK(std::fabs(m->f2_hz - 1200.0) / 1200.0 < 0.05);
    CHECK(m->f1_hz < m->f2_hz);
    CHECK(m->f2_hz < 5500);
}

TEST_CASE("single-frame token reports that frame verbatim") {
    VowelSpec spec;
    spec.f0_hz = 120.0;
    spec.duration_s = 0.02;  // below one window
    spec.sample_rate_hz = 22050;
    spec.formants = {{700, 70}, {1200, 90}, {2900, 140}};
    const AudioClip vowel = synthesize_vowel(spec);
    ExtractionConfig cfg;
    const AudioClip prepared = preprocess(vowel, 5000, cfg.pre_emphasis_from_hz);
    const auto m = measure_token(prepared, 0, 0.0, 0.02, cfg, 5000);
    REQUIRE(m.has_value());
    CHECK(m->n_frames == 1);
}

namespace {

FormantMeasurement meas(int id, double f1, double f2) {
    FormantMeasurement m;
    m.token_id = id;
    m.f1_hz = f1;
    m.f2_hz = f2;
    m.b1_hz = 60;
    m.b2_hz = 90;
    m.n_frames = 5;
    return m;
}

std::vector<FormantMeasurement> cell_with_sds(double mean1, double sd1, double mean2,
                                              double sd2, int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d1(mean1, sd1), d2(mean2, sd2);
    std::vector<FormantMeasurement> cell;
    for (int i = 0; i < n; ++i) cell.push_back(meas(i, d1(rng), d2(rng)));
    return cell;
}

}  // namespace

TEST_CASE("select_ceiling prefers the lower-variation sweep point") {
    // Ceiling A: SD 10/20 around 500/1500. Ceiling B: SDs doubled and more.
    std::map<int, std::vector<FormantMeasurement>> per_ceiling;
    per_ceiling[4500] = cell_with_sds(500, 10, 1500, 20, 10, 1);
    per_ceiling[5500] = cell_with_sds(500, 30, 1500, 60, 10, 2);
    CHECK(select_ceiling(per_ceiling) == 4500);
}

TEST_CASE("identical scores tie toward the lowest ceiling") {
    std::map<int, std::vector<FormantMeasurement>> per_ceiling;
    const auto cell = cell_with_sds(500, 10, 1500, 20, 8, 3);
    for (int c : {4000, 4500, 5000, 5500, 6000}) per_ceiling[c] = cell;
    CHECK(select_ceiling(per_ceiling) == 4000);
}

TEST_CASE("a ceiling that dropped all tokens is out of contention") {
    std::map<int, std::vector<FormantMeasurement>> per_ceiling;
    per_ceiling[4000] = {};
    per_ceiling[4500] = cell_with_sds(500, 10, 1500, 20, 8, 4);
    per_ceiling[5000] = cell_with_sds(500, 40, 1500, 80, 8, 5);
    CHECK(select_ceiling(per_ceiling) == 4500);
}

TEST_CASE("with a one-token ceiling in play, the most populated ceiling wins") {
    std::map<int, std::vector<FormantMeasurement>> per_ceiling;
    per_ceiling[4000] = {meas(0, 500, 1500)};
    per_ceiling[4500] = cell_with_sds(500, 40, 1500, 80, 6, 6);
    per_ceiling[5000] = cell_with_sds(500, 10, 1500, 20, 4, 7);
    CHECK(select_ceiling(per_ceiling) == 4500);
}

TEST_CASE("no measurements anywhere is an error") {
    std::map<int, std::vector<FormantMeasurement>> per_ceiling;
    per_ceiling[4000] = {};
    CHECK_THROWS_AS(select_ceiling(per_ceiling), Error);
}

TEST_CASE("select_ceiling is permutation invariant") {
    auto cell_a = cell_with_sds(480, 12, 1480, 25, 9, 8);
    auto cell_b = cell_with_sds(505, 28, 1520, 55, 9, 9);
    std::map<int, std::vector<FormantMeasurement>> forward, reversed;
    forward[4500] = cell_a;
    forward[5500] = cell_b;
    std::reverse(cell_a.begin(), cell_a.end());
    std::reverse(cell_b.begin(), cell_b.end());
    reversed[4500] = cell_a;
    reversed[5500] = cell_b;
    CHECK(select_ceiling(forward) == select_ceiling(reversed));
}

TEST_CASE("MAD flagging marks the far-out F2 token") {
    std::vector<FormantMeasurement> cell;
    for (int i = 0; i < 9; ++i) cell.push_back(meas(i, 400 + i, 1500 + i));
    cell.push_back(meas(9, 405, 3000));  // octave-style mistrack
    flag_mistracks(cell);
    int flagged = 0;
    for (const auto& m : cell)
        if (m.flagged) ++flagged;
    CHECK(flagged == 1);
    CHECK(cell.back().flagged);
}

TEST_CASE("constant cell flags nothing (zero-MAD guard)") {
    std::vector<FormantMeasurement> cell;
    for (int i = 0; i < 6; ++i) cell.push_back(meas(i, 400, 1500));
    flag_mistracks(cell);
    for (const auto& m : cell) CHECK(!m.flagged);
}

TEST_CASE("zero MAD still flags a value that differs by more than 1 Hz") {
    std::vector<FormantMeasurement> cell;
    for (int i = 0; i < 6; ++i) cell.push_back(meas(i, 400, 1500));
    cell.push_back(meas(6, 400, 1503));
    flag_mistracks(cell);
    CHECK(cell.back().flagged);
}

TEST_CASE("two-token cells are never flagged") {
    std::vector<FormantMeasurement> cell = {meas(0, 400, 1500), meas(1, 900, 2800)};
    flag_mistracks(cell);
    CHECK(!cell[0].flagged);
    CHECK(!cell[1].flagged);
}
