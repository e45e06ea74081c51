#include "corpus.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "util.hpp"

namespace vm {

using nlohmann::json;

SessionManifest read_manifest(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(csv::read_text_file(path));
    } catch (const json::exception& e) {
        throw_input(path.string() + ": invalid manifest JSON (" + e.what() + ")");
    }
    const std::string ctx = path.string();
    if (!doc.is_object()) throw_input(ctx + ": manifest must be a JSON object");

    SessionManifest m;
    if (!doc.contains("speaker_id") || !doc["speaker_id"].is_string())
        throw_input(ctx + ": missing speaker_id");
    m.speaker_id = doc["speaker_id"].get<std::string>();
    if (trim(m.speaker_id).empty()) throw_input(ctx + ": speaker_id must be nonempty");

    if (!doc.contains("group")) throw_input(ctx + ": missing group");
    const auto group = parse_group(doc["group"].get<std::string>());
    if (!group) throw_input(ctx + ": unknown group '" + doc["group"].get<std::string>() + "'");
    m.group = *group;

    if (doc.contains("sex")) {
        const auto sex = parse_sex(doc["sex"].get<std::string>());
        if (!sex) throw_input(ctx + ": unknown sex '" + doc["sex"].get<std::string>() + "'");
        m.sex = *sex;
    }
    if (doc.contains("age_years")) {
        m.age_years = doc["age_years"].get<double>();
        if (m.age_years < 0) throw_input(ctx + ": age_years must be >= 0");
    }
    if (doc.contains("metadata")) {
        for (const auto& [k, v] : doc["metadata"].items())
            m.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }

    if (!doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].empty())
        throw_input(ctx + ": manifest needs a nonempty entries array");
    const std::filesystem::path base = path.parent_path();
    for (const auto& e : doc["entries"]) {
        ManifestEntry entry;
        if (!e.contains("audio") || !e.contains("segmentation"))
            throw_input(ctx + ": each entry needs audio and segmentation paths");
        entry.audio = base / e["audio"].get<std::string>();
        entry.segmentation = base / e["segmentation"].get<std::string>();
        if (e.contains("format")) {
            const std::string f = lower(e["format"].get<std::string>());
            if (f == "csv") entry.format = SegFormat::csv;
            else if (f == "textgrid") entry.format = SegFormat::textgrid;
            else throw_input(ctx + ": unknown segmentation format '" + f + "'");
        }
        m.entries.push_back(std::move(entry));
    }
    return m;
}

Corpus build_corpus(const std::vector<SessionManifest>& manifests, const std::string& tier) {
    if (manifests.empty()) throw_input("no manifests given");

    std::set<std::pair<std::string, Group>> seen;
    for (const auto& m : manifests) {
        if (!seen.emplace(m.speaker_id, m.group).second)
            throw_input("duplicate speaker/group pair: " + m.speaker_id + " / " +
                        label(m.group));
    }

    Corpus corpus;
    corpus.sessions.resize(manifests.size());

    // Per-file parsing is pure; sessions load in parallel. Warnings and
    // token ids are assigned in a serial pass afterwards.
    parallel_for(manifests.size(), [&](std::size_t i) {
        const SessionManifest& m = manifests[i];
        Session session;
        session.manifest = m;
        for (std::size_t e = 0; e < m.entries.size(); ++e) {
            const ManifestEntry& entry = m.entries[e];
            if (!std::filesystem::exists(entry.audio))
                throw_input(m.speaker_id + ": missing audio file " + entry.audio.string());
            if (!std::filesystem::exists(entry.segmentation))
                throw_input(m.speaker_id + ": missing segmentation file " +
                            entry.segmentation.string());
            AudioClip clip = read_wav(entry.audio);
            SegFormat format;
            if (entry.format) {
                format = *entry.format;
            } else {
                const auto inferred = infer_seg_format(entry.segmentation);
                if (!inferred)
                    throw_input(m.speaker_id + ": cannot infer segmentation format of " +
                                entry.segmentation.string());
                format = *inferred;
            }
            SegmentationResult seg = read_segmentation(entry.segmentation, format, tier);
            session.dropped_intervals += seg.dropped;
            const double dur = clip.duration_s();
            for (const SegmentInterval& iv : seg.intervals) {
                if (iv.end_s > dur + 1e-9)
                    throw_input(m.speaker_id + ": interval [" +
                                strprintf("%.4f, %.4f", iv.start_s, iv.end_s) +
                                "] outside clip bounds of " + entry.audio.string() +
                                strprintf(" (duration %.4f s)", dur));
                VowelToken token;
                token.speaker_id = m.speaker_id;
                token.group = m.group;
                token.phoneme = iv.phoneme;
                token.word = iv.word;
                token.clip_index = static_cast<int>(e);
                token.interval = iv;
                session.tokens.push_back(std::move(token));
            }
            session.clips.push_back(std::move(clip));
        }
        for (std::size_t t = 0; t < session.tokens.size(); ++t)
            session.tokens[t].token_id = static_cast<int>(t);
        corpus.sessions[i] = std::move(session);
    });

    for (const Session& s : corpus.sessions) {
        std::map<Vowel, int> counts;
        for (Vowel v : kVowels) counts[v] = 0;
        for (const VowelToken& t : s.tokens) counts[t.phoneme]++;
        for (Vowel v : kVowels) {
            if (counts[v] < 12)
                corpus.warnings.push_back(strprintf(
                    "%s/%s: phoneme %s has %d tokens (guideline is at least 12)",
                    s.manifest.speaker_id.c_str(), label(s.manifest.group), label(v),
                    counts[v]));
        }
    }
    return corpus;
}

}  // namespace vm
