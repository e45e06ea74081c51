#include "svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "util.hpp"

namespace vm {

namespace {

std::string num(double v) {
    // Avoid "-0.00" so output is stable across sign-of-zero differences.
    std::string s = strprintf("%.2f", v);
    return s == "-0.00" ? "0.00" : s;
}

const char* vowel_color(Vowel v) {
    switch (v) {
        case Vowel::I: return "#1f77b4";
        case Vowel::Ee: return "#ff7f0e";
        case Vowel::Eh: return "#2ca02c";
        case Vowel::Aa: return "#d62728";
        case Vowel::Oo: return "#9467bd";
        case Vowel::U: return "#8c564b";
    }
    return "#000000";
}

std::string svg_open(double width, double height) {
    return strprintf(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
        "viewBox=\"0 0 %.0f %.0f\">\n",
        width, height, width, height);
}

std::string text_el(double x, double y, const std::string& s, int size,
                    const std::string& anchor) {
    return strprintf(
        "<text x=\"%s\" y=\"%s\" font-family=\"sans-serif\" font-size=\"%d\" "
        "text-anchor=\"%s\">%s</text>\n",
        num(x).c_str(), num(y).c_str(), size, anchor.c_str(), s.c_str());
}

// Marker per phoneme, all roughly the same visual weight.
std::string marker(Vowel v, double x, double y, double r, const char* fill) {
    switch (v) {
        case Vowel::I:
        case Vowel::U:
            return strprintf("<circle cx=\"%s\" cy=\"%s\" r=\"%s\" fill=\"%s\"/>\n",
                             num(x).c_str(), num(y).c_str(), num(r).c_str(), fill);
        case Vowel::Ee:
        case Vowel::Oo:
            return strprintf(
                "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"%s\"/>\n",
                num(x - r).c_str(), num(y - r).c_str(), num(2 * r).c_str(), num(2 * r).c_str(),
                fill);
        case Vowel::Eh:
            return strprintf("<path d=\"M %s %s L %s %s L %s %s Z\" fill=\"%s\"/>\n",
                             num(x).c_str(), num(y - 1.3 * r).c_str(), num(x - 1.2 * r).c_str(),
                             num(y + r).c_str(), num(x + 1.2 * r).c_str(), num(y + r).c_str(),
                             fill);
        case Vowel::Aa:
            return strprintf("<path d=\"M %s %s L %s %s L %s %s Z\" fill=\"%s\"/>\n",
                             num(x).c_str(), num(y + 1.3 * r).c_str(), num(x - 1.2 * r).c_str(),
                             num(y - r).c_str(), num(x + 1.2 * r).c_str(), num(y - r).c_str(),
                             fill);
    }
    return "";
}

struct Range {
    double lo = 0, hi = 1;
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

}  // namespace

std::string vowel_space_svg(Group group, std::span<const NormalizedPoint> points) {
    constexpr double kW = 560, kH = 560, kMargin = 60;

    Range z1r{-2.5, 2.5}, z2r{-2.5, 2.5};
    for (const auto& p : points) {
        z1r.expand(p.z1);
        z2r.expand(p.z2);
    }
    z1r.lo -= 0.3; z1r.hi += 0.3;
    z2r.lo -= 0.3; z2r.hi += 0.3;

    // F2 on x decreasing rightward, F1 on y decreasing upward.
    auto px = [&](double z2) {
        return kMargin + (z2r.hi - z2) / (z2r.hi - z2r.lo) * (kW - 2 * kMargin);
    };
    auto py = [&](double z1) {
        return kMargin + (z1 - z1r.lo) / (z1r.hi - z1r.lo) * (kH - 2 * kMargin);
    };

    // Group-level phoneme medians.
    std::map<Vowel, std::vector<double>> z1s, z2s;
    for (const auto& p : points) {
        z1s[p.phoneme].push_back(p.z1);
        z2s[p.phoneme].push_back(p.z2);
    }
    std::map<Vowel, std::pair<double, double>> medians;
    for (auto& [v, values] : z1s) medians[v] = {median(values), median(z2s[v])};

    std::string svg = svg_open(kW, kH);
    svg += strprintf("<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n",
                     kW, kH);
    svg += strprintf(
        "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"none\" stroke=\"#888888\"/>\n",
        num(kMargin).c_str(), num(kMargin).c_str(), num(kW - 2 * kMargin).c_str(),
        num(kH - 2 * kMargin).c_str());

    for (int z = static_cast<int>(std::ceil(z2r.lo)); z <= static_cast<int>(std::floor(z2r.hi)); ++z) {
        svg += strprintf(
            "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#888888\"/>\n",
            num(px(z)).c_str(), num(kH - kMargin).c_str(), num(px(z)).c_str(),
            num(kH - kMargin + 6).c_str());
        svg += text_el(px(z), kH - kMargin + 20, strprintf("%d", z), 12, "middle");
    }
    for (int z = static_cast<int>(std::ceil(z1r.lo)); z <= static_cast<int>(std::floor(z1r.hi)); ++z) {
        svg += strprintf(
            "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#888888\"/>\n",
            num(kMargin - 6).c_str(), num(py(z)).c_str(), num(kMargin).c_str(),
            num(py(z)).c_str());
        svg += text_el(kMargin - 10, py(z) + 4, strprintf("%d", z), 12, "end");
    }
    svg += text_el(kW / 2, kH - 14, "F2 (Lobanov)", 14, "middle");
    svg += strprintf(
        "<text x=\"18\" y=\"%s\" font-family=\"sans-serif\" font-size=\"14\" "
        "text-anchor=\"middle\" transform=\"rotate(-90 18 %s)\">F1 (Lobanov)</text>\n",
        num(kH / 2).c_str(), num(kH / 2).c_str());
    svg += text_el(kW / 2, kMargin - 20, std::string("vowel space: ") + label(group), 16,
                   "middle");

    // Connectors under points, medians on top.
    for (const auto& p : points) {
        const auto& m = medians.at(p.phoneme);
        svg += strprintf(
            "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#555555\" "
            "stroke-width=\"0.6\"/>\n",
            num(px(p.z2)).c_str(), num(py(p.z1)).c_str(), num(px(m.second)).c_str(),
            num(py(m.first)).c_str());
    }
    for (const auto& p : points)
        svg += marker(p.phoneme, px(p.z2), py(p.z1), 3.0, vowel_color(p.phoneme));
    for (const auto& [v, m] : medians) {
        svg += strprintf(
            "<circle cx=\"%s\" cy=\"%s\" r=\"8\" fill=\"#cccccc\" stroke=\"#555555\"/>\n",
            num(px(m.second)).c_str(), num(py(m.first)).c_str());
        svg += text_el(px(m.second), py(m.first) - 12, label(v), 12, "middle");
    }
    svg += "</svg>\n";
    return svg;
}

std::string vai_dumbbell_svg(std::span<const ClarityScore> clarity) {
    constexpr double kW = 560, kMarginX = 90, kRowH = 28, kTop = 60;

    std::map<std::string, std::pair<const ClarityScore*, const ClarityScore*>> by_speaker;
    for (const auto& c : clarity) {
        if (c.group == Group::pre_surgery) by_speaker[c.speaker].first = &c;
        if (c.group == Group::post_surgery) by_speaker[c.speaker].second = &c;
    }
    std::vector<std::pair<std::string, std::pair<double, double>>> rows;
    for (const auto& [speaker, pair] : by_speaker)
        if (pair.first && pair.second)
            rows.push_back({speaker, {pair.first->vai, pair.second->vai}});

    const double kH = kTop + kRowH * std::max<std::size_t>(rows.size(), 1) + 60;
    Range vr{0.85, 1.15};
    for (const auto& r : rows) {
        vr.expand(r.second.first);
        vr.expand(r.second.second);
    }
    vr.lo -= 0.02; vr.hi += 0.02;
    auto px = [&](double v) {
        return kMarginX + (v - vr.lo) / (vr.hi - vr.lo) * (kW - 2 * kMarginX);
    };

    std::string svg = svg_open(kW, kH);
    svg += strprintf("<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n",
                     kW, kH);
    svg += text_el(kW / 2, 28, "VAI pre vs post surgery", 16, "middle");
    for (double tick = std::ceil(vr.lo * 20) / 20; tick <= vr.hi + 1e-9; tick += 0.05) {
        svg += strprintf(
            "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#dddddd\"/>\n",
            num(px(tick)).c_str(), num(kTop - 10).c_str(), num(px(tick)).c_str(),
            num(kH - 50).c_str());
        svg += text_el(px(tick), kH - 34, strprintf("%.2f", tick), 11, "middle");
    }
    double y = kTop;
    for (const auto& [speaker, vai] : rows) {
        svg += text_el(kMarginX - 12, y + 4, speaker, 12, "end");
        svg += strprintf(
            "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#333333\"/>\n",
            num(px(vai.first)).c_str(), num(y).c_str(), num(px(vai.second)).c_str(),
            num(y).c_str());
        svg += strprintf(
            "<circle cx=\"%s\" cy=\"%s\" r=\"5\" fill=\"white\" stroke=\"#333333\"/>\n",
            num(px(vai.first)).c_str(), num(y).c_str());
        svg += strprintf("<circle cx=\"%s\" cy=\"%s\" r=\"5\" fill=\"#333333\"/>\n",
                         num(px(vai.second)).c_str(), num(y).c_str());
        y += kRowH;
    }
    svg += text_el(kW / 2, kH - 12, "open = pre, filled = post", 11, "middle");
    svg += "</svg>\n";
    return svg;
}

std::string change_panels_svg(std::span<const ClarityScore> clarity,
                              std::span<const VfdValue> vfd) {
    // Post-minus-pre deltas per patient.
    std::map<std::string, std::pair<const ClarityScore*, const ClarityScore*>> by_speaker;
    for (const auto& c : clarity) {
        if (c.group == Group::pre_surgery) by_speaker[c.speaker].first = &c;
        if (c.group == Group::post_surgery) by_speaker[c.speaker].second = &c;
    }
    std::map<std::string, std::vector<double>> i_pre, i_post;
    for (const auto& v : vfd) {
        if (v.phoneme != Vowel::I) continue;
        if (v.group == Group::pre_surgery) i_pre[v.speaker].push_back(v.vfd);
        if (v.group == Group::post_surgery) i_post[v.speaker].push_back(v.vfd);
    }

    struct Delta {
        std::string speaker;
        double d_vai = 0;
        double d_vfd = 0;
        bool has_vfd = false;
    };
    std::vector<Delta> deltas;
    for (const auto& [speaker, pair] : by_speaker) {
        if (!pair.first || !pair.second) continue;
        Delta d;
        d.speaker = speaker;
        d.d_vai = pair.second->vai - pair.first->vai;
        if (i_pre.count(speaker) && i_post.count(speaker)) {
            d.d_vfd = mean(i_post[speaker]) - mean(i_pre[speaker]);
            d.has_vfd = true;
        }
        deltas.push_back(std::move(d));
    }

    constexpr double kPanelW = 320, kH = 360, kMargin = 50;
    const double kW = 2 * kPanelW;
    std::string svg = svg_open(kW, kH);
    svg += strprintf("<rect x=\"0\" y=\"0\" width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n",
                     kW, kH);

    auto panel = [&](double x0, const std::string& title, auto get, auto has) {
        Range r{-0.01, 0.01};
        for (const auto& d : deltas)
            if (has(d)) r.expand(get(d));
        r.lo *= 1.15; r.hi *= 1.15;
        auto py = [&](double v) {
            return kMargin + (r.hi - v) / (r.hi - r.lo) * (kH - 2 * kMargin - 20);
        };
        std::string out = text_el(x0 + kPanelW / 2, 24, title, 14, "middle");
        out += strprintf(
            "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#555555\"/>\n",
            num(x0 + kMargin).c_str(), num(py(0)).c_str(), num(x0 + kPanelW - 20).c_str(),
            num(py(0)).c_str());
        const double band = (kPanelW - kMargin - 30) / std::max<std::size_t>(deltas.size(), 1);
        double x = x0 + kMargin + 6;
        for (const auto& d : deltas) {
            if (has(d)) {
                const double v = get(d);
                const double top = std::min(py(0), py(v));
                const double h = std::fabs(py(v) - py(0));
                out += strprintf(
                    "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"%s\"/>\n",
                    num(x).c_str(), num(top).c_str(), num(band * 0.7).c_str(), num(h).c_str(),
                    v >= 0 ? "#7a9e7e" : "#a35d6a");
            }
            out += strprintf(
                "<text x=\"%s\" y=\"%s\" font-family=\"sans-serif\" font-size=\"10\" "
                "text-anchor=\"end\" transform=\"rotate(-60 %s %s)\">%s</text>\n",
                num(x + band * 0.35).c_str(), num(kH - kMargin + 14).c_str(),
                num(x + band * 0.35).c_str(), num(kH - kMargin + 14).c_str(),
                d.speaker.c_str());
            x += band;
        }
        return out;
    };

    svg += panel(0, "change in VAI (post - pre)",
                 [](const Delta& d) { return d.d_vai; },
                 [](const Delta&) { return true; });
    svg += panel(kPanelW, "change in /i/ VFD (post - pre)",
                 [](const Delta& d) { return d.d_vfd; },
                 [](const Delta& d) { return d.has_vfd; });
    svg += "</svg>\n";
    return svg;
}

}  // namespace vm
