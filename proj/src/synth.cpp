#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "util.hpp"

namespace vm {

AudioClip synthesize_vowel(const VowelSpec& spec) {
    if (!(spec.duration_s > 0.0)) throw_input("vowel duration must be positive");
    if (!(spec.f0_hz > 0.0)) throw_input("f0 must be positive");
    if (spec.sample_rate_hz <= 0) throw_input("sample rate must be positive");
    if (!(spec.amplitude > 0.0) || spec.amplitude > 1.0)
        throw_input("amplitude must be in (0, 1]");
    if (spec.formants.size() < 2) throw_input("at least two formants are required");
    const double nyquist = 0.5 * spec.sample_rate_hz;
    for (std::size_t i = 0; i < spec.formants.size(); ++i) {
        if (spec.formants[i].frequency_hz >= nyquist)
            throw_input(strprintf("formant %.0f Hz is at or above Nyquist (%.0f Hz)",
                                  spec.formants[i].frequency_hz, nyquist));
        if (!(spec.formants[i].bandwidth_hz > 0.0))
            throw_input("formant bandwidths must be positive");
        if (i > 0 && spec.formants[i].frequency_hz <= spec.formants[i - 1].frequency_hz)
            throw_input("formant frequencies must be ascending");
    }

    const double fs = spec.sample_rate_hz;
    const std::size_t n = static_cast<std::size_t>(std::lround(spec.duration_s * fs));
    if (n == 0) throw_input("vowel duration must be positive");

    // Source: unit impulses at pitch periods plus a seeded noise floor.
    std::vector<double> x(n, 0.0);
    const double period = fs / spec.f0_hz;
    for (double t = 0.0; t < static_cast<double>(n); t += period)
        x[static_cast<std::size_t>(t)] += 1.0;
    if (spec.noise_level > 0.0) {
        std::mt19937_64 rng(mix_seed(spec.seed, 0x5e15));
        std::normal_distribution<double> noise(0.0, spec.noise_level);
        for (double& s : x) s += noise(rng);
    }

    // Cascaded two-pole resonators: y[n] = x[n] + c1 y[n-1] - c2 y[n-2] with
    // the pole pair at radius exp(-pi B / fs), angle 2 pi F / fs.
    for (const Resonance& r : spec.formants) {
        const double radius = std::exp(-M_PI * r.bandwidth_hz / fs);
        const double c1 = 2.0 * radius * std::cos(2.0 * M_PI * r.frequency_hz / fs);
        const double c2 = radius * radius;
        double y1 = 0.0, y2 = 0.0;
        for (double& s : x) {
            const double y = s + c1 * y1 - c2 * y2;
            y2 = y1;
            y1 = y;
            s = y;
        }
    }

    double peak = 0.0;
    for (double s : x) peak = std::max(peak, std::fabs(s));
    if (peak > 0.0) {
        const double gain = spec.amplitude / peak;
        for (double& s : x) s *= gain;
    }

    AudioClip clip;
    clip.sample_rate = spec.sample_rate_hz;
    clip.samples = std::move(x);
    return clip;
}

namespace {

std::map<Vowel, PhonemeTarget> typical_targets() {
    // Rounded adult Dutch-style targets; higher formants are appended at
    // synthesis time.
    return {
        {Vowel::I, {280, 2250, 25, 50}},  {Vowel::Ee, {400, 2100, 25, 50}},
        {Vowel::Eh, {560, 1800, 25, 50}}, {Vowel::Aa, {780, 1300, 25, 50}},
        {Vowel::Oo, {480, 900, 25, 50}},  {Vowel::U, {320, 750, 25, 50}},
    };
}

}  // namespace

CorpusRecipe null_recipe() {
    CorpusRecipe recipe;
    const auto base = typical_targets();
    recipe.targets[Group::typical] = base;
    recipe.targets[Group::pre_surgery] = base;
    recipe.targets[Group::post_surgery] = base;
    return recipe;
}

CorpusRecipe default_recipe() {
    CorpusRecipe recipe = null_recipe();
    auto& post = recipe.targets[Group::post_surgery];
    post[Vowel::I].sd_f1 *= 2.0;
    post[Vowel::I].sd_f2 *= 2.0;

    double center_f1 = 0.0, center_f2 = 0.0;
    for (const auto& [v, t] : post) {
        center_f1 += t.f1;
        center_f2 += t.f2;
    }
    center_f1 /= static_cast<double>(post.size());
    center_f2 /= static_cast<double>(post.size());
    for (Vowel corner : kCornerVowels) {
        PhonemeTarget& t = post[corner];
        t.f1 = center_f1 + 0.95 * (t.f1 - center_f1);
        t.f2 = center_f2 + 0.95 * (t.f2 - center_f2);
    }
    return recipe;
}

CorpusRecipe recipe_from_json_file(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(csv::read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw_input(path.string() + ": invalid recipe JSON (" + e.what() + ")");
    }
    CorpusRecipe recipe = null_recipe();
    const std::string ctx = path.string();
    if (doc.contains("seed")) recipe.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("typical_speakers"))
        recipe.typical_speakers = doc["typical_speakers"].get<int>();
    if (doc.contains("patient_speakers"))
        recipe.patient_speakers = doc["patient_speakers"].get<int>();
    if (doc.contains("tokens_per_phoneme"))
        recipe.tokens_per_phoneme = doc["tokens_per_phoneme"].get<int>();
    if (doc.contains("sample_rate_hz")) recipe.sample_rate_hz = doc["sample_rate_hz"].get<int>();
    if (doc.contains("token_duration_s")) {
        const auto& d = doc["token_duration_s"];
        if (!d.is_array() || d.size() != 2)
            throw_input(ctx + ": token_duration_s must be [min, max]");
        recipe.token_min_s = d[0].get<double>();
        recipe.token_max_s = d[1].get<double>();
    }
    if (doc.contains("gap_s")) recipe.gap_s = doc["gap_s"].get<double>();
    if (doc.contains("groups")) {
        for (const auto& [group_name, phonemes] : doc["groups"].items()) {
            const auto group = parse_group(group_name);
            if (!group) throw_input(ctx + ": unknown group '" + group_name + "'");
            for (const auto& [phoneme_name, t] : phonemes.items()) {
                const auto vowel = canonicalize_vowel(phoneme_name);
                if (!vowel) throw_input(ctx + ": unknown phoneme '" + phoneme_name + "'");
                if (!t.is_array() || t.size() != 4)
                    throw_input(ctx + ": target must be [f1, f2, sd_f1, sd_f2]");
                recipe.targets[*group][*vowel] = {t[0].get<double>(), t[1].get<double>(),
                                                  t[2].get<double>(), t[3].get<double>()};
            }
        }
    }
    if (recipe.tokens_per_phoneme < 1) throw_input(ctx + ": tokens_per_phoneme must be >= 1");
    if (recipe.typical_speakers < 0 || recipe.patient_speakers < 0)
        throw_input(ctx + ": speaker counts must be >= 0");
    if (!(recipe.token_min_s > 0.0) || recipe.token_max_s < recipe.token_min_s)
        throw_input(ctx + ": bad token duration range");
    for (const auto& [g, targets] : recipe.targets)
        for (const auto& [v, t] : targets)
            if (t.sd_f1 < 0 || t.sd_f2 < 0 || t.f1 <= 0 || t.f2 <= t.f1)
                throw_input(ctx + ": invalid target for " + std::string(label(v)));
    return recipe;
}

namespace {

struct SpeakerTraits {
    std::string id;
    Sex sex = Sex::M;
    double age = 0.0;
    double f0 = 120.0;
    double tract_scale = 1.0;  // multiplies all formant targets
};

SpeakerTraits make_speaker(const std::string& id, int index, uint64_t seed) {
    SpeakerTraits t;
    t.id = id;
    t.sex = (index % 2 == 0) ? Sex::M : Sex::F;
    t.age = 45.0 + 4.0 * index;
    std::mt19937_64 rng(mix_seed(seed, std::hash<std::string>{}(id)));
    std::uniform_real_distribution<double> scale(0.94, 1.06);
    std::uniform_real_distribution<double> f0_m(105.0, 135.0), f0_f(185.0, 225.0);
    t.tract_scale = scale(rng);
    t.f0 = (t.sex == Sex::M) ? f0_m(rng) : f0_f(rng);
    return t;
}

double truncated_gaussian(std::mt19937_64& rng, double mu, double sigma) {
    if (sigma <= 0.0) return std::max(mu, 50.0);
    std::normal_distribution<double> dist(mu, sigma);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double x = dist(rng);
        if (std::fabs(x - mu) <= 3.0 * sigma && x >= 50.0) return x;
    }
    return std::max(mu, 50.0);
}

struct PlannedToken {
    Vowel phoneme = Vowel::I;
    double f1 = 0, f2 = 0;
    double duration = 0.2;
    uint64_t seed = 0;
};

void write_session(const CorpusRecipe& recipe, const SpeakerTraits& speaker, Group group,
                   const std::map<Vowel, PhonemeTarget>& targets,
                   const std::filesystem::path& out_dir, std::vector<unsigned char>* wav_bytes,
                   std::string* seg_csv, std::string* manifest_json,
                   const std::string& stem) {
    // Derive one RNG stream per (speaker, group, phoneme, token) so output is
    // independent of generation order.
    const uint64_t session_seed =
        mix_seed(recipe.seed, std::hash<std::string>{}(speaker.id + "/" + label(group)));

    std::vector<PlannedToken> plan;
    for (Vowel v : kVowels) {
        const auto target_it = targets.find(v);
        if (target_it == targets.end()) continue;
        const PhonemeTarget& target = target_it->second;
        for (int k = 0; k < recipe.tokens_per_phoneme; ++k) {
            const uint64_t token_seed =
                mix_seed(session_seed, (static_cast<uint64_t>(v) << 32) | static_cast<uint64_t>(k));
            std::mt19937_64 rng(token_seed);
            PlannedToken tok;
            tok.phoneme = v;
            tok.f1 = truncated_gaussian(rng, target.f1 * speaker.tract_scale,
                                        target.sd_f1 * speaker.tract_scale);
            tok.f2 = truncated_gaussian(rng, target.f2 * speaker.tract_scale,
                                        target.sd_f2 * speaker.tract_scale);
            if (tok.f2 <= tok.f1 + 100.0) tok.f2 = tok.f1 + 100.0;
            std::uniform_real_distribution<double> dur(recipe.token_min_s, recipe.token_max_s);
            tok.duration = dur(rng);
            tok.seed = token_seed;
            plan.push_back(tok);
        }
    }

    // Synthesize tokens in parallel, then lay them out serially with gaps.
    std::vector<AudioClip> clips(plan.size());
    parallel_for(plan.size(), [&](std::size_t i) {
        const PlannedToken& tok = plan[i];
        VowelSpec spec;
        spec.f0_hz = speaker.f0;
        spec.duration_s = tok.duration;
        spec.sample_rate_hz = recipe.sample_rate_hz;
        spec.amplitude = 0.7;
        spec.seed = tok.seed;
        const double s = speaker.tract_scale;
        spec.formants = {{tok.f1, 70.0},
                         {tok.f2, 90.0},
                         {std::max(tok.f2 + 600.0, 2900.0 * s), 140.0},
                         {3900.0 * s, 180.0},
                         {4750.0 * s, 220.0}};
        clips[i] = synthesize_vowel(spec);
    });

    const std::size_t gap_samples =
        static_cast<std::size_t>(std::lround(recipe.gap_s * recipe.sample_rate_hz));
    AudioClip session_clip;
    session_clip.sample_rate = recipe.sample_rate_hz;
    std::string csv_text = "start_s,end_s,phoneme,word,stressed\n";
    for (std::size_t i = 0; i < plan.size(); ++i) {
        session_clip.samples.insert(session_clip.samples.end(), gap_samples, 0.0);
        const double start =
            static_cast<double>(session_clip.samples.size()) / recipe.sample_rate_hz;
        session_clip.samples.insert(session_clip.samples.end(), clips[i].samples.begin(),
                                    clips[i].samples.end());
        const double end =
            static_cast<double>(session_clip.samples.size()) / recipe.sample_rate_hz;
        csv_text += strprintf("%.6f,%.6f,%s,syn_%s,1\n", start, end, label(plan[i].phoneme),
                              label(plan[i].phoneme));
    }
    session_clip.samples.insert(session_clip.samples.end(), gap_samples, 0.0);

    *wav_bytes = encode_wav_pcm16(session_clip);
    *seg_csv = std::move(csv_text);

    nlohmann::json manifest = {
        {"speaker_id", speaker.id},
        {"group", label(group)},
        {"sex", label(speaker.sex)},
        {"age_years", speaker.age},
        {"metadata", {{"origin", "synthetic"}}},
        {"entries", {{{"audio", stem + ".wav"}, {"segmentation", stem + ".csv"}}}},
    };
    *manifest_json = manifest.dump(2) + "\n";
    (void)out_dir;
}

}  // namespace

GeneratedCorpus generate_corpus(const CorpusRecipe& recipe,
                                const std::filesystem::path& out_dir) {
    for (Group g : kGroups)
        if (!recipe.targets.count(g))
            throw_input(std::string("recipe lacks targets for group ") + label(g));
    std::filesystem::create_directories(out_dir);

    struct SessionPlan {
        SpeakerTraits speaker;
        Group group;
        std::string stem;
    };
    std::vector<SessionPlan> sessions;
    for (int i = 0; i < recipe.typical_speakers; ++i) {
        const SpeakerTraits t = make_speaker(strprintf("TD%02d", i + 1), i, recipe.seed);
        sessions.push_back({t, Group::typical, t.id + "_typical"});
    }
    for (int i = 0; i < recipe.patient_speakers; ++i) {
        const SpeakerTraits t =
            make_speaker(strprintf("OC%02d", i + 1), i + recipe.typical_speakers, recipe.seed);
        sessions.push_back({t, Group::pre_surgery, t.id + "_pre_surgery"});
        sessions.push_back({t, Group::post_surgery, t.id + "_post_surgery"});
    }
    if (sessions.empty()) throw_input("recipe produces no sessions");

    GeneratedCorpus result;
    std::vector<std::filesystem::path> manifests(sessions.size());
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        const SessionPlan& plan = sessions[i];
        std::vector<unsigned char> wav_bytes;
        std::string seg_csv, manifest_json;
        write_session(recipe, plan.speaker, plan.group, recipe.targets.at(plan.group), out_dir,
                      &wav_bytes, &seg_csv, &manifest_json, plan.stem);
        const auto wav_path = out_dir / (plan.stem + ".wav");
        const auto csv_path = out_dir / (plan.stem + ".csv");
        const auto manifest_path = out_dir / (plan.stem + ".manifest.json");
        csv::write_file(wav_path, std::string(wav_bytes.begin(), wav_bytes.end()));
        csv::write_file(csv_path, seg_csv);
        csv::write_file(manifest_path, manifest_json);
        manifests[i] = manifest_path;
    }
    result.manifests = std::move(manifests);

    nlohmann::json index = nlohmann::json::array();
    for (const auto& m : result.manifests) index.push_back(m.filename().string());
    result.index = out_dir / "corpus_index.json";
    csv::write_file(result.index, index.dump(2) + "\n");
    return result;
}

}  // namespace vm
