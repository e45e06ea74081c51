#include "reports.hpp"

#include "csv.hpp"
#include "util.hpp"

namespace vm {

namespace {

void check_header(const std::vector<std::vector<std::string>>& rows,
                  const std::vector<std::string>& expected, const std::string& ctx) {
    if (rows.empty() || rows[0] != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i)
            want += (i ? "," : "") + expected[i];
        throw_input(ctx + ": bad or missing header, expected " + want);
    }
}

Group parse_group_or_throw(const std::string& s, const std::string& ctx) {
    const auto g = parse_group(s);
    if (!g) throw_input(ctx + ": unknown group '" + s + "'");
    return *g;
}

Vowel parse_vowel_or_throw(const std::string& s, const std::string& ctx) {
    const auto v = canonicalize_vowel(s);
    if (!v) throw_input(ctx + ": unknown phoneme '" + s + "'");
    return *v;
}

}  // namespace

void write_measurements_csv(const std::filesystem::path& path,
                            std::span<const MeasurementRow> rows) {
    std::string out =
        "token_id,speaker,group,phoneme,word,f1_hz,f2_hz,b1_hz,b2_hz,ceiling_hz,n_frames,flagged\n";
    for (const auto& r : rows) {
        out += csv::join_row({std::to_string(r.token_id), r.speaker, label(r.group),
                              label(r.phoneme), r.word, strprintf("%.4f", r.f1_hz),
                              strprintf("%.4f", r.f2_hz), strprintf("%.4f", r.b1_hz),
                              strprintf("%.4f", r.b2_hz), std::to_string(r.ceiling_hz),
                              std::to_string(r.n_frames), r.flagged ? "1" : "0"});
    }
    csv::write_file(path, out);
}

std::vector<MeasurementRow> read_measurements_csv(const std::filesystem::path& path) {
    const auto rows = csv::parse_file(path);
    const std::string ctx = path.string();
    check_header(rows,
                 {"token_id", "speaker", "group", "phoneme", "word", "f1_hz", "f2_hz", "b1_hz",
                  "b2_hz", "ceiling_hz", "n_frames", "flagged"},
                 ctx);
    std::vector<MeasurementRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 12) throw_input(ctx + strprintf(": row %zu has %zu fields", i + 1, r.size()));
        MeasurementRow m;
        m.token_id = static_cast<int>(parse_long(r[0], ctx + " token_id"));
        m.speaker = r[1];
        m.group = parse_group_or_throw(r[2], ctx);
        m.phoneme = parse_vowel_or_throw(r[3], ctx);
        m.word = r[4];
        m.f1_hz = parse_double(r[5], ctx + " f1_hz");
        m.f2_hz = parse_double(r[6], ctx + " f2_hz");
        m.b1_hz = parse_double(r[7], ctx + " b1_hz");
        m.b2_hz = parse_double(r[8], ctx + " b2_hz");
        m.ceiling_hz = static_cast<int>(parse_long(r[9], ctx + " ceiling_hz"));
        m.n_frames = static_cast<int>(parse_long(r[10], ctx + " n_frames"));
        m.flagged = r[11] == "1";
        out.push_back(std::move(m));
    }
    return out;
}

void write_clarity_csv(const std::filesystem::path& path, std::span<const ClarityScore> rows) {
    std::string out = "speaker,group,vai,vsa_hz2\n";
    for (const auto& r : rows)
        out += csv::join_row({r.speaker, label(r.group), strprintf("%.6f", r.vai),
                              strprintf("%.2f", r.vsa_hz2)});
    csv::write_file(path, out);
}

std::vector<ClarityScore> read_clarity_csv(const std::filesystem::path& path) {
    const auto rows = csv::parse_file(path);
    const std::string ctx = path.string();
    check_header(rows, {"speaker", "group", "vai", "vsa_hz2"}, ctx);
    std::vector<ClarityScore> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4) throw_input(ctx + strprintf(": row %zu has %zu fields", i + 1, r.size()));
        ClarityScore c;
        c.speaker = r[0];
        c.group = parse_group_or_throw(r[1], ctx);
        c.vai = parse_double(r[2], ctx + " vai");
        c.vsa_hz2 = parse_double(r[3], ctx + " vsa_hz2");
        out.push_back(std::move(c));
    }
    return out;
}

void write_variability_csv(const std::filesystem::path& path, std::span<const VfdValue> rows) {
    std::string out = "token_id,speaker,group,phoneme,vfd,log_vfd\n";
    for (const auto& r : rows)
        out += csv::join_row({std::to_string(r.token_id), r.speaker, label(r.group),
                              label(r.phoneme), strprintf("%.6f", r.vfd),
                              strprintf("%.6f", r.log_vfd)});
    csv::write_file(path, out);
}

std::vector<VfdValue> read_variability_csv(const std::filesystem::path& path) {
    const auto rows = csv::parse_file(path);
    const std::string ctx = path.string();
    check_header(rows, {"token_id", "speaker", "group", "phoneme", "vfd", "log_vfd"}, ctx);
    std::vector<VfdValue> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 6) throw_input(ctx + strprintf(": row %zu has %zu fields", i + 1, r.size()));
        VfdValue v;
        v.token_id = static_cast<int>(parse_long(r[0], ctx + " token_id"));
        v.speaker = r[1];
        v.group = parse_group_or_throw(r[2], ctx);
        v.phoneme = parse_vowel_or_throw(r[3], ctx);
        v.vfd = parse_double(r[4], ctx + " vfd");
        v.log_vfd = parse_double(r[5], ctx + " log_vfd");
        out.push_back(std::move(v));
    }
    return out;
}

void write_points_csv(const std::filesystem::path& path,
                      std::span<const NormalizedPoint> rows) {
    std::string out = "token_id,speaker,group,phoneme,z1,z2\n";
    for (const auto& r : rows)
        out += csv::join_row({std::to_string(r.token_id), r.speaker, label(r.group),
                              label(r.phoneme), strprintf("%.6f", r.z1),
                              strprintf("%.6f", r.z2)});
    csv::write_file(path, out);
}

std::vector<NormalizedPoint> read_points_csv(const std::filesystem::path& path) {
    const auto rows = csv::parse_file(path);
    const std::string ctx = path.string();
    check_header(rows, {"token_id", "speaker", "group", "phoneme", "z1", "z2"}, ctx);
    std::vector<NormalizedPoint> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 6) throw_input(ctx + strprintf(": row %zu has %zu fields", i + 1, r.size()));
        NormalizedPoint p;
        p.token_id = static_cast<int>(parse_long(r[0], ctx + " token_id"));
        p.speaker = r[1];
        p.group = parse_group_or_throw(r[2], ctx);
        p.phoneme = parse_vowel_or_throw(r[3], ctx);
        p.z1 = parse_double(r[4], ctx + " z1");
        p.z2 = parse_double(r[5], ctx + " z2");
        out.push_back(std::move(p));
    }
    return out;
}

void write_results_csv(const std::filesystem::path& path,
                       std::span<const ComparisonResult> rows) {
    std::string out = "contrast,response,phoneme,estimate,statistic,df,p_raw,p_adj,n_A,n_B\n";
    for (const auto& r : rows)
        out += csv::join_row({r.contrast, r.response, r.phoneme ? label(*r.phoneme) : "",
                              strprintf("%.6g", r.estimate), strprintf("%.6g", r.statistic),
                              strprintf("%.6g", r.df), strprintf("%.6g", r.p_raw),
                              strprintf("%.6g", r.p_adj), std::to_string(r.n_a),
                              std::to_string(r.n_b)});
    csv::write_file(path, out);
}

void write_descriptives_csv(const std::filesystem::path& path,
                            std::span<const DescriptiveRow> rows) {
    std::string out = "cell,n,mean,sd\n";
    for (const auto& r : rows)
        out += csv::join_row({r.cell, std::to_string(r.n), strprintf("%.6g", r.mean),
                              strprintf("%.6g", r.sd)});
    csv::write_file(path, out);
}

}  // namespace vm
