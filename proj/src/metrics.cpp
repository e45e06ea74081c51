#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "util.hpp"

namespace vm {

namespace {

std::vector<const MeasurementRow*> unflagged(std::span<const MeasurementRow> rows) {
    std::vector<const MeasurementRow*> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        if (!r.flagged) out.push_back(&r);
    return out;
}

}  // namespace

std::vector<NormalizedPoint> lobanov_normalize(std::span<const MeasurementRow> scope) {
    const auto rows = unflagged(scope);
    if (rows.size() < 2) throw_input("degenerate scope: fewer than 2 unflagged tokens");

    std::vector<double> f1s, f2s;
    f1s.reserve(rows.size());
    f2s.reserve(rows.size());
    for (const auto* r : rows) {
        f1s.push_back(r->f1_hz);
        f2s.push_back(r->f2_hz);
    }
    const double m1 = mean(f1s), m2 = mean(f2s);
    const double s1 = sample_sd(f1s), s2 = sample_sd(f2s);
    if (s1 == 0.0 || s2 == 0.0) throw_input("degenerate scope: zero formant spread");

    std::vector<NormalizedPoint> out;
    out.reserve(rows.size());
    for (const auto* r : rows)
        out.push_back({r->token_id, r->speaker, r->group, r->phoneme,
                       (r->f1_hz - m1) / s1, (r->f2_hz - m2) / s2});
    return out;
}

namespace {

// Per-phoneme (F1, F2) aggregate in Hz over unflagged rows.
std::map<Vowel, std::pair<double, double>> phoneme_hz_points(
    std::span<const MeasurementRow> session, CornerStat stat) {
    std::map<Vowel, std::vector<double>> f1s, f2s;
    for (const auto& r : session) {
        if (r.flagged) continue;
        f1s[r.phoneme].push_back(r.f1_hz);
        f2s[r.phoneme].push_back(r.f2_hz);
    }
    std::map<Vowel, std::pair<double, double>> out;
    for (auto& [v, values] : f1s) {
        if (stat == CornerStat::mean)
            out[v] = {mean(values), mean(f2s[v])};
        else
            out[v] = {median(values), median(f2s[v])};
    }
    return out;
}

}  // namespace

double compute_vai(std::span<const MeasurementRow> session, CornerStat stat) {
    const auto points = phoneme_hz_points(session, stat);
    for (Vowel corner : kCornerVowels)
        if (!points.count(corner))
            throw_input(std::string("missing corner vowel /") + label(corner) + "/");
    const auto& [f1_i, f2_i] = points.at(Vowel::I);
    const auto& [f1_a, f2_a] = points.at(Vowel::Aa);
    const auto& [f1_u, f2_u] = points.at(Vowel::U);
    const double denominator = f1_i + f1_u + f2_u + f2_a;
    if (denominator <= 0.0) throw_input("VAI denominator is not positive");
    return (f2_i + f1_a) / denominator;
}

namespace {

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

// Andrew's monotone chain; returns hull vertices in counterclockwise order.
std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<std::pair<double, double>> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

double compute_vsa(std::span<const MeasurementRow> session) {
    const auto points = phoneme_hz_points(session, CornerStat::mean);
    std::vector<std::pair<double, double>> pts;
    for (const auto& [v, p] : points) pts.emplace_back(p.second, p.first);  // (F2, F1)
    const auto hull = convex_hull(std::move(pts));
    if (hull.size() < 3) return 0.0;
    double twice_area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& p = hull[i];
        const auto& q = hull[(i + 1) % hull.size()];
        twice_area += p.first * q.second - q.first * p.second;
    }
    return 0.5 * std::fabs(twice_area);
}

std::vector<PhonemeCenter> phoneme_centers(std::span<const NormalizedPoint> points) {
    std::map<Vowel, std::vector<double>> z1s, z2s;
    for (const auto& p : points) {
        z1s[p.phoneme].push_back(p.z1);
        z2s[p.phoneme].push_back(p.z2);
    }
    std::vector<PhonemeCenter> out;
    for (auto& [v, values] : z1s) out.push_back({v, median(values), median(z2s[v])});
    return out;
}

std::vector<VfdValue> compute_vfd(std::span<const NormalizedPoint> points,
                                  std::span<const PhonemeCenter> centers) {
    std::map<Vowel, const PhonemeCenter*> by_phoneme;
    for (const auto& c : centers) by_phoneme[c.phoneme] = &c;

    std::vector<VfdValue> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const auto it = by_phoneme.find(p.phoneme);
        if (it == by_phoneme.end())
            throw_input(std::string("no center for phoneme /") + label(p.phoneme) + "/");
        const double d1 = p.z1 - it->second->z1;
        const double d2 = p.z2 - it->second->z2;
        const double dist = std::sqrt(d1 * d1 + d2 * d2);
        out.push_back({p.token_id, p.speaker, p.group, p.phoneme, dist,
                       std::log(std::max(dist, kVfdLogFloor))});
    }
    return out;
}

}  // namespace vm
