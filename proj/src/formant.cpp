#include "formant.hpp"

#include <algorithm>
#include <cmath>

#include "burg.hpp"
#include "util.hpp"

namespace vm {

void ExtractionConfig::validate() const {
    if (!(time_step_s > 0.0) || !(window_s > time_step_s))
        throw_input("extraction config requires window_s > time_step_s > 0");
    if (ceilings_hz.empty()) throw_input("at least one formant ceiling is required");
    if (!std::is_sorted(ceilings_hz.begin(), ceilings_hz.end()))
        throw_input("formant ceilings must be ascending");
    for (int c : ceilings_hz)
        if (c <= 0) throw_input("formant ceilings must be positive");
    if (lpc_order != 2 * n_formants_tracked)
        throw_input("lpc_order must equal 2 * n_formants_tracked");
    if (!(middle_fraction > 0.0) || middle_fraction > 1.0)
        throw_input("middle_fraction must be in (0, 1]");
    if (pre_emphasis_from_hz < 0.0) throw_input("pre-emphasis frequency must be >= 0");
}

const char* drop_reason(TokenDrop d) {
    switch (d) {
        case TokenDrop::too_short: return "too_short";
        case TokenDrop::silent: return "silent";
        case TokenDrop::no_frame_with_two_formants: return "no_frame_with_two_formants";
        case TokenDrop::formant_order: return "formant_order";
    }
    return "?";
}

std::vector<double> frame_centers(double start_s, double end_s, const ExtractionConfig& cfg) {
    const double dur = end_s - start_s;
    const double margin = 0.5 * (1.0 - cfg.middle_fraction);
    const double center_lo = start_s + margin * dur;
    const double center_hi = end_s - margin * dur;
    const double half_window = 0.5 * cfg.window_s;

    std::vector<double> centers;
    for (int k = 0;; ++k) {
        const double c = center_lo + k * cfg.time_step_s;
        if (c > center_hi + 1e-12) break;
        if (c - half_window >= start_s - 1e-12 && c + half_window <= end_s + 1e-12)
            centers.push_back(c);
    }
    if (centers.empty()) centers.push_back(start_s + 0.5 * dur);  // short-token fallback
    return centers;
}

std::vector<FrameFormants> extract_token_frames(const AudioClip& prepared, double start_s,
                                                double end_s, const ExtractionConfig& cfg,
                                                int ceiling_hz) {
    if (end_s <= start_s) throw_input("token interval is empty");
    const double fs = prepared.sample_rate;
    if ((end_s - start_s) * fs < 1.0) throw_input("token shorter than one sample");

    const int n_window = std::max(cfg.lpc_order + 2,
                                  static_cast<int>(std::lround(cfg.window_s * fs)));
    const double sigma = n_window / 6.0;
    const double mid = 0.5 * (n_window - 1);

    std::vector<FrameFormants> frames;
    std::vector<double> buffer(static_cast<std::size_t>(n_window));
    for (double center : frame_centers(start_s, end_s, cfg)) {
        long first = std::lround(center * fs - mid);
        // Clamp whole-window overruns at the clip edges.
        first = std::clamp<long>(first, 0,
                                 std::max<long>(0, static_cast<long>(prepared.samples.size()) -
                                                       n_window));
        if (first + n_window > static_cast<long>(prepared.samples.size())) continue;

        double frame_mean = 0.0;
        for (int i = 0; i < n_window; ++i) frame_mean += prepared.samples[first + i];
        frame_mean /= n_window;
        for (int i = 0; i < n_window; ++i) {
            const double w = std::exp(-0.5 * ((i - mid) / sigma) * ((i - mid) / sigma));
            buffer[i] = (prepared.samples[first + i] - frame_mean) * w;
        }

        const auto burg = burg_coefficients(buffer, cfg.lpc_order);
        if (!burg) continue;  // silent frame
        std::vector<Resonance> formants = roots_to_formants(burg->a, fs, ceiling_hz);
        if (formants.empty()) continue;  // no qualifying roots
        frames.push_back({center, std::move(formants)});
    }
    return frames;
}

std::optional<FormantMeasurement> measure_token(const AudioClip& prepared, int token_id,
                                                double start_s, double end_s,
                                                const ExtractionConfig& cfg, int ceiling_hz,
                                                TokenDrop* drop) {
    auto fail = [&](TokenDrop why) -> std::optional<FormantMeasurement> {
        if (drop) *drop = why;
        return std::nullopt;
    };
    if ((end_s - start_s) * prepared.sample_rate < 1.0) return fail(TokenDrop::too_short);

    const auto frames = extract_token_frames(prepared, start_s, end_s, cfg, ceiling_hz);
    if (frames.empty()) return fail(TokenDrop::silent);

    std::vector<double> f1s, f2s, b1s, b2s;
    for (const FrameFormants& fr : frames) {
        if (fr.formants.size() < 2) continue;
        f1s.push_back(fr.formants[0].frequency_hz);
        b1s.push_back(fr.formants[0].bandwidth_hz);
        f2s.push_back(fr.formants[1].frequency_hz);
        b2s.push_back(fr.formants[1].bandwidth_hz);
    }
    if (f1s.empty()) return fail(TokenDrop::no_frame_with_two_formants);

    FormantMeasurement m;
    m.token_id = token_id;
    m.f1_hz = median(f1s);
    m.f2_hz = median(f2s);
    m.b1_hz = median(b1s);
    m.b2_hz = median(b2s);
    m.ceiling_hz = ceiling_hz;
    m.n_frames = static_cast<int>(f1s.size());
    if (!(m.f1_hz < m.f2_hz)) return fail(TokenDrop::formant_order);
    return m;
}

namespace {

double variation_score(const std::vector<FormantMeasurement>& cell) {
    std::vector<double> f1s, f2s;
    f1s.reserve(cell.size());
    f2s.reserve(cell.size());
    for (const auto& m : cell) {
        f1s.push_back(m.f1_hz);
        f2s.push_back(m.f2_hz);
    }
    const double cv1 = sample_sd(f1s) / mean(f1s);
    const double cv2 = sample_sd(f2s) / mean(f2s);
    return cv1 * cv1 + cv2 * cv2;
}

}  // namespace

int select_ceiling(const std::map<int, std::vector<FormantMeasurement>>& per_ceiling) {
    std::vector<std::pair<int, const std::vector<FormantMeasurement>*>> contenders;
    for (const auto& [ceiling, cell] : per_ceiling)
        if (!cell.empty()) contenders.emplace_back(ceiling, &cell);
    if (contenders.empty()) throw_input("no formant ceiling produced any measurement");

    const bool all_scoreable =
        std::all_of(contenders.begin(), contenders.end(),
                    [](const auto& c) { return c.second->size() >= 2; });

    int best = contenders.front().first;
    if (all_scoreable) {
        double best_score = variation_score(*contenders.front().second);
        for (std::size_t i = 1; i < contenders.size(); ++i) {
            const double score = variation_score(*contenders[i].second);
            if (score < best_score) {  // ties keep the lower ceiling (map order)
                best_score = score;
                best = contenders[i].first;
            }
        }
    } else {
        std::size_t best_count = contenders.front().second->size();
        for (std::size_t i = 1; i < contenders.size(); ++i) {
            if (contenders[i].second->size() > best_count) {
                best_count = contenders[i].second->size();
                best = contenders[i].first;
            }
        }
    }
    return best;
}

void flag_mistracks(std::vector<FormantMeasurement>& cell) {
    if (cell.size() < 3) return;
    std::vector<double> f1s, f2s;
    for (const auto& m : cell) {
        f1s.push_back(m.f1_hz);
        f2s.push_back(m.f2_hz);
    }
    const double med1 = median(f1s), med2 = median(f2s);
    const double mad1 = mad(f1s), mad2 = mad(f2s);
    auto outlier = [](double x, double med, double mad_value) {
        if (mad_value == 0.0) return std::fabs(x - med) > 1.0;
        return std::fabs(x - med) > 3.0 * 1.4826 * mad_value;
    };
    for (auto& m : cell)
        m.flagged = outlier(m.f1_hz, med1, mad1) || outlier(m.f2_hz, med2, mad2);
}

}  // namespace vm
