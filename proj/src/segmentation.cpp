#include "segmentation.hpp"

#include <algorithm>
#include <cstdint>

#include "csv.hpp"
#include "util.hpp"

namespace vm {

namespace {

void sort_and_check_overlap(std::vector<std::pair<double, double>>& spans,
                            const std::string& context) {
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
        if (spans[i].first < spans[i - 1].second - 1e-9)
            throw_input(context + ": overlapping intervals at " +
                        strprintf("%.4f s", spans[i].first));
    }
}

SegmentationResult parse_csv_segmentation(const std::filesystem::path& path) {
    const auto rows = csv::parse_file(path);
    const std::string ctx = path.string();
    if (rows.empty()) throw_input(ctx + ": empty segmentation file");
    const std::vector<std::string> expected = {"start_s", "end_s", "phoneme", "word", "stressed"};
    if (rows[0] != expected)
        throw_input(ctx + ": bad header, expected start_s,end_s,phoneme,word,stressed");

    SegmentationResult result;
    std::vector<std::pair<double, double>> spans;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 5)
            throw_input(ctx + strprintf(": row %zu has %zu fields, expected 5", r + 1, row.size()));
        const double start = parse_double(row[0], ctx + " start_s");
        const double end = parse_double(row[1], ctx + " end_s");
        if (start < 0.0) throw_input(ctx + strprintf(": negative start %.4f", start));
        if (end <= start)
            throw_input(ctx + strprintf(": inverted interval [%.4f, %.4f]", start, end));
        spans.emplace_back(start, end);

        const std::string stressed_raw = lower(trim(row[4]));
        bool stressed;
        if (stressed_raw == "1" || stressed_raw == "true") stressed = true;
        else if (stressed_raw == "0" || stressed_raw == "false") stressed = false;
        else throw_input(ctx + ": bad stressed flag '" + row[4] + "'");

        const auto vowel = canonicalize_vowel(row[2]);
        if (!vowel || !stressed) {
            ++result.dropped;
            continue;
        }
        result.intervals.push_back({start, end, *vowel, trim(row[3]), true});
    }
    sort_and_check_overlap(spans, ctx);
    std::sort(result.intervals.begin(), result.intervals.end(),
              [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    return result;
}

// --- TextGrid ---------------------------------------------------------------

std::string utf16_to_utf8(const std::string& raw, bool big_endian) {
    std::string out;
    std::size_t i = 2;  // skip BOM
    auto next_unit = [&](uint32_t& unit) {
        if (i + 1 >= raw.size()) return false;
        const unsigned char a = raw[i], b = raw[i + 1];
        unit = big_endian ? (static_cast<uint32_t>(a) << 8 | b)
                          : (static_cast<uint32_t>(b) << 8 | a);
        i += 2;
        return true;
    };
    uint32_t u;
    while (next_unit(u)) {
        uint32_t cp = u;
        if (u >= 0xD800 && u <= 0xDBFF) {
            uint32_t lo;
            if (!next_unit(lo) || lo < 0xDC00 || lo > 0xDFFF)
                throw_input("invalid UTF-16 surrogate pair in TextGrid");
            cp = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
        }
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }
    return out;
}

std::string decode_textgrid_bytes(std::string raw) {
    if (raw.size() >= 2) {
        const unsigned char a = raw[0], b = raw[1];
        if (a == 0xFE && b == 0xFF) return utf16_to_utf8(raw, true);
        if (a == 0xFF && b == 0xFE) return utf16_to_utf8(raw, false);
    }
    if (raw.size() >= 3 && static_cast<unsigned char>(raw[0]) == 0xEF &&
        static_cast<unsigned char>(raw[1]) == 0xBB && static_cast<unsigned char>(raw[2]) == 0xBF)
        return raw.substr(3);
    return raw;
}

// Pulls `key = value` off a long-format TextGrid line; value keeps its quotes
// stripped. Returns false when the line has a different shape.
bool parse_kv(const std::string& line, std::string& key, std::string& value) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) return false;
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        value = value.substr(1, value.size() - 2);
        // Praat escapes embedded quotes by doubling.
        std::size_t pos;
        while ((pos = value.find("\"\"")) != std::string::npos) value.erase(pos, 1);
    }
    return true;
}

SegmentationResult parse_textgrid(const std::filesystem::path& path, const std::string& tier) {
    const std::string text = decode_textgrid_bytes(csv::read_text_file(path));
    const std::string ctx = path.string();
    if (text.find("ooTextFile") == std::string::npos ||
        text.find("TextGrid") == std::string::npos)
        throw_input(ctx + ": not a TextGrid long text file");

    struct RawInterval {
        double xmin = 0, xmax = 0;
        std::string text;
    };
    struct Tier {
        std::string klass, name;
        std::vector<RawInterval> intervals;
    };
    std::vector<Tier> tiers;

    std::vector<std::string> lines = split(text, '\n');
    Tier* current_tier = nullptr;
    RawInterval* current_interval = nullptr;
    for (const std::string& raw_line : lines) {
        const std::string line = trim(raw_line);
        if (line.rfind("item [", 0) == 0 && line.find("[]") == std::string::npos) {
            tiers.emplace_back();
            current_tier = &tiers.back();
            current_interval = nullptr;
            continue;
        }
        if (line.rfind("intervals [", 0) == 0) {
            if (!current_tier) throw_input(ctx + ": interval outside of a tier");
            current_tier->intervals.emplace_back();
            current_interval = &current_tier->intervals.back();
            continue;
        }
        std::string key, value;
        if (!parse_kv(line, key, value)) continue;
        if (current_interval) {
            if (key == "xmin") current_interval->xmin = parse_double(value, ctx + " xmin");
            else if (key == "xmax") current_interval->xmax = parse_double(value, ctx + " xmax");
            else if (key == "text") current_interval->text = value;
        } else if (current_tier) {
            if (key == "class") current_tier->klass = value;
            else if (key == "name") current_tier->name = value;
        }
    }

    const Tier* selected = nullptr;
    for (const Tier& t : tiers) {
        if (t.klass == "IntervalTier" && t.name == tier) {
            selected = &t;
            break;
        }
    }
    if (!selected) {
        std::string names;
        for (const Tier& t : tiers)
            if (t.klass == "IntervalTier") names += " \"" + t.name + "\"";
        throw_input(ctx + ": no interval tier named \"" + tier + "\" (available:" +
                    (names.empty() ? " none" : names) + ")");
    }

    SegmentationResult result;
    std::vector<std::pair<double, double>> spans;
    for (const RawInterval& iv : selected->intervals) {
        if (iv.xmax <= iv.xmin)
            throw_input(ctx + strprintf(": inverted interval [%.4f, %.4f]", iv.xmin, iv.xmax));
        spans.emplace_back(iv.xmin, iv.xmax);
        const std::string label_text = trim(iv.text);
        if (label_text.empty()) continue;  // structural filler between tokens
        const auto vowel = canonicalize_vowel(label_text);
        if (!vowel) {
            ++result.dropped;
            continue;
        }
        result.intervals.push_back({iv.xmin, iv.xmax, *vowel, "", true});
    }
    sort_and_check_overlap(spans, ctx);
    std::sort(result.intervals.begin(), result.intervals.end(),
              [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    return result;
}

}  // namespace

std::optional<SegFormat> infer_seg_format(const std::filesystem::path& path) {
    const std::string ext = lower(path.extension().string());
    if (ext == ".csv") return SegFormat::csv;
    if (ext == ".textgrid") return SegFormat::textgrid;
    return std::nullopt;
}

SegmentationResult read_segmentation(const std::filesystem::path& path, SegFormat format,
                                     const std::string& tier) {
    if (format == SegFormat::csv) return parse_csv_segmentation(path);
    return parse_textgrid(path, tier);
}

}  // namespace vm
