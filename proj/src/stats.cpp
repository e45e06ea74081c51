#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "util.hpp"

namespace vm {

namespace {

// Continued fraction for the incomplete beta (modified Lentz method).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw_internal("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw_internal("incomplete beta requires a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw_internal("t distribution requires df > 0");
    if (t == 0.0) return 0.5;
    const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

namespace {

double two_sided_p(double t, double df) {
    const double p = 2.0 * (1.0 - student_t_cdf(std::fabs(t), df));
    return std::clamp(p, 0.0, 1.0);
}

double variance(std::span<const double> v, double m) {
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / (static_cast<double>(v.size()) - 1.0);
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

ComparisonResult welch_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw_input("Welch t needs at least 2 values per group");
    const double ma = mean_of(a), mb = mean_of(b);
    const double va = variance(a, ma), vb = variance(b, mb);
    if (va == 0.0 && vb == 0.0) throw_input("degenerate variance in both groups");

    const double sa = va / static_cast<double>(a.size());
    const double sb = vb / static_cast<double>(b.size());
    const double se = std::sqrt(sa + sb);
    const double t = (ma - mb) / se;
    const double df = (sa + sb) * (sa + sb) /
                      (sa * sa / (static_cast<double>(a.size()) - 1.0) +
                       sb * sb / (static_cast<double>(b.size()) - 1.0));

    ComparisonResult r;
    r.estimate = ma - mb;
    r.statistic = t;
    r.df = df;
    r.p_raw = r.p_adj = two_sided_p(t, df);
    r.paired = false;
    r.n_a = static_cast<int>(a.size());
    r.n_b = static_cast<int>(b.size());
    return r;
}

ComparisonResult paired_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw_input("paired t needs aligned samples");
    if (a.size() < 2) throw_input("paired t needs at least 2 complete pairs");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double md = mean_of(d);
    const double vd = variance(d, md);
    if (vd == 0.0) throw_input("no variation in paired differences");

    const double n = static_cast<double>(d.size());
    const double t = md / std::sqrt(vd / n);
    const double df = n - 1.0;

    ComparisonResult r;
    r.estimate = md;
    r.statistic = t;
    r.df = df;
    r.p_raw = r.p_adj = two_sided_p(t, df);
    r.paired = true;
    r.n_a = r.n_b = static_cast<int>(d.size());
    return r;
}

std::vector<double> fdr_adjust(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw_input("p-values must lie in [0, 1]");
    if (m == 0) return {};

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });

    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double q = static_cast<double>(m) * p_values[order[r]] /
                         static_cast<double>(r + 1);
        running = std::min(running, std::min(q, 1.0));
        adjusted[order[r]] = running;
    }
    return adjusted;
}

TrimReport trim_outliers(std::vector<Cell>& cells, double threshold_sd) {
    TrimReport report;
    for (Cell& cell : cells) {
        report.n_total += static_cast<int>(cell.values.size());
        if (cell.values.size() < 2) continue;
        const double m = mean(cell.values);
        const double sd = sample_sd(cell.values);
        if (sd == 0.0) continue;

        std::vector<double> kept;
        std::vector<std::string> kept_ids;
        for (std::size_t i = 0; i < cell.values.size(); ++i) {
            if (std::fabs(cell.values[i] - m) > threshold_sd * sd) {
                ++report.n_removed;
                if (i < cell.ids.size()) report.removed_ids.push_back(cell.ids[i]);
            } else {
                kept.push_back(cell.values[i]);
                if (i < cell.ids.size()) kept_ids.push_back(cell.ids[i]);
            }
        }
        cell.values = std::move(kept);
        cell.ids = std::move(kept_ids);
    }
    report.fraction =
        report.n_total > 0 ? static_cast<double>(report.n_removed) / report.n_total : 0.0;
    return report;
}

namespace {

struct ContrastSpec {
    std::string name;
    Group first;
    Group second;
    bool paired;
};

const std::vector<ContrastSpec>& contrast_battery() {
    static const std::vector<ContrastSpec> specs = {
        {"pre vs post", Group::pre_surgery, Group::post_surgery, true},
        {"typical vs pre", Group::typical, Group::pre_surgery, false},
        {"typical vs post", Group::typical, Group::post_surgery, false},
    };
    return specs;
}

std::string vai_cell_key(Group g) { return std::string("vai/") + label(g); }

std::string vfd_cell_key(Group g, Vowel v) {
    return std::string("log_vfd/") + label(g) + "/" + label(v);
}

}  // namespace

AnalysisReport run_analysis(std::span<const ClarityScore> clarity,
                            std::span<const VfdValue> vfd) {
    AnalysisReport report;

    std::set<Group> groups;
    for (const auto& c : clarity) groups.insert(c.group);
    for (const auto& v : vfd) groups.insert(v.group);
    if (groups.size() < 2) throw_input("at least two groups are required for comparisons");

    // --- VAI family ---------------------------------------------------------
    std::map<Group, std::vector<double>> vai_by_group;
    std::map<Group, std::map<std::string, double>> vai_by_speaker;
    for (const auto& c : clarity) {
        vai_by_group[c.group].push_back(c.vai);
        vai_by_speaker[c.group][c.speaker] = c.vai;
    }

    std::vector<ComparisonResult> vai_family;
    for (const auto& spec : contrast_battery()) {
        auto record_gap = [&](const std::string& why) {
            report.gaps.push_back("vai: " + spec.name + ": " + why);
        };
        if (!vai_by_group.count(spec.first) || !vai_by_group.count(spec.second)) {
            record_gap("group missing");
            continue;
        }
        try {
            ComparisonResult r;
            if (spec.paired) {
                // Complete pairs only; incomplete speakers are reported as gaps.
                std::vector<double> first_vals, second_vals;
                for (const auto& [speaker, value] : vai_by_speaker[spec.first]) {
                    const auto it = vai_by_speaker[spec.second].find(speaker);
                    if (it == vai_by_speaker[spec.second].end()) {
                        report.gaps.push_back("vai: " + spec.name + ": speaker " + speaker +
                                              " lacks a " + label(spec.second) + " session");
                        continue;
                    }
                    first_vals.push_back(value);
                    second_vals.push_back(it->second);
                }
                for (const auto& [speaker, value] : vai_by_speaker[spec.second])
                    if (!vai_by_speaker[spec.first].count(speaker))
                        report.gaps.push_back("vai: " + spec.name + ": speaker " + speaker +
                                              " lacks a " + label(spec.first) + " session");
                r = paired_t(second_vals, first_vals);
            } else {
                r = welch_t(vai_by_group[spec.second], vai_by_group[spec.first]);
            }
            r.contrast = spec.name;
            r.response = "vai";
            vai_family.push_back(std::move(r));
        } catch (const Error& e) {
            record_gap(e.what());
        }
    }

    // --- log-VFD family (trimmed first) --------------------------------------
    std::map<std::pair<Group, Vowel>, Cell> vfd_cells;
    for (const auto& v : vfd) {
        Cell& cell = vfd_cells[{v.group, v.phoneme}];
        if (cell.key.empty()) cell.key = vfd_cell_key(v.group, v.phoneme);
        cell.values.push_back(v.log_vfd);
        cell.ids.push_back(v.speaker + "/" + label(v.group) + "/" +
                           std::to_string(v.token_id));
    }
    std::vector<Cell> cells;
    cells.reserve(vfd_cells.size());
    for (auto& [key, cell] : vfd_cells) cells.push_back(std::move(cell));
    report.trim = trim_outliers(cells);
    std::map<std::string, const Cell*> trimmed;
    for (const Cell& c : cells) trimmed[c.key] = &c;

    std::vector<ComparisonResult> vfd_family;
    for (Vowel v : kVowels) {
        for (const auto& spec : contrast_battery()) {
            const auto a = trimmed.find(vfd_cell_key(spec.second, v));
            const auto b = trimmed.find(vfd_cell_key(spec.first, v));
            auto record_gap = [&](const std::string& why) {
                report.gaps.push_back(std::string("log_vfd /") + label(v) + "/: " + spec.name +
                                      ": " + why);
            };
            if (a == trimmed.end() || b == trimmed.end()) {
                record_gap("cell missing");
                continue;
            }
            try {
                ComparisonResult r = welch_t(a->second->values, b->second->values);
                r.contrast = spec.name;
                r.response = "log_vfd";
                r.phoneme = v;
                vfd_family.push_back(std::move(r));
            } catch (const Error& e) {
                record_gap(e.what());
            }
        }
    }

    // --- FDR within each family ----------------------------------------------
    auto apply_fdr = [](std::vector<ComparisonResult>& family) {
        std::vector<double> p;
        p.reserve(family.size());
        for (const auto& r : family) p.push_back(r.p_raw);
        const auto adj = fdr_adjust(p);
        for (std::size_t i = 0; i < family.size(); ++i) family[i].p_adj = adj[i];
    };
    apply_fdr(vai_family);
    apply_fdr(vfd_family);
    report.results.insert(report.results.end(), vai_family.begin(), vai_family.end());
    report.results.insert(report.results.end(), vfd_family.begin(), vfd_family.end());

    // --- descriptives ---------------------------------------------------------
    for (Group g : kGroups) {
        const auto it = vai_by_group.find(g);
        if (it == vai_by_group.end()) continue;
        report.descriptives.push_back({vai_cell_key(g), static_cast<int>(it->second.size()),
                                       mean(it->second), sample_sd(it->second)});
    }
    for (const Cell& c : cells) {
        if (c.values.empty()) continue;
        report.descriptives.push_back(
            {c.key, static_cast<int>(c.values.size()), mean(c.values), sample_sd(c.values)});
    }
    return report;
}

}  // namespace vm
