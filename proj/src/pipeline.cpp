#include "pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "reports.hpp"
#include "resample.hpp"
#include "svgplot.hpp"
#include "util.hpp"

namespace vm {

using nlohmann::json;

std::string RunOutcome::joined() const {
    std::string out;
    for (const auto& m : messages) {
        out += m;
        out += '\n';
    }
    return out;
}

// --- extraction ---------------------------------------------------------------

std::vector<SessionExtraction> extract_corpus(const Corpus& corpus,
                                              const ExtractionConfig& config,
                                              std::vector<std::string>* warnings) {
    config.validate();
    const std::vector<int>& ceilings = config.ceilings_hz;

    std::vector<SessionExtraction> out;
    out.reserve(corpus.sessions.size());
    for (const Session& session : corpus.sessions) {
        SessionExtraction ex;
        ex.speaker = session.manifest.speaker_id;
        ex.group = session.manifest.group;
        ex.tokens_in = static_cast<int>(session.tokens.size());

        // Ceilings must stay below the Nyquist of every clip in the session.
        for (const AudioClip& clip : session.clips)
            if (2 * ceilings.back() > clip.sample_rate)
                throw_input(ex.speaker + ": ceiling " + std::to_string(ceilings.back()) +
                            " Hz is at or above Nyquist of a " +
                            std::to_string(clip.sample_rate) + " Hz clip");

        // One preprocessed clip per (clip, ceiling).
        const std::size_t n_clips = session.clips.size();
        std::vector<AudioClip> prepared(n_clips * ceilings.size());
        parallel_for(prepared.size(), [&](std::size_t j) {
            const std::size_t clip_index = j / ceilings.size();
            const int ceiling = ceilings[j % ceilings.size()];
            prepared[j] = preprocess(session.clips[clip_index], ceiling,
                                     config.pre_emphasis_from_hz);
        });

        // Token measurements across the ceiling sweep.
        const std::size_t n_tokens = session.tokens.size();
        std::vector<std::optional<FormantMeasurement>> measured(n_tokens * ceilings.size());
        std::vector<TokenDrop> drops(n_tokens * ceilings.size(), TokenDrop::silent);
        parallel_for(measured.size(), [&](std::size_t j) {
            const std::size_t t = j / ceilings.size();
            const std::size_t ci = j % ceilings.size();
            const VowelToken& token = session.tokens[t];
            const AudioClip& clip =
                prepared[static_cast<std::size_t>(token.clip_index) * ceilings.size() + ci];
            TokenDrop why = TokenDrop::silent;
            measured[j] = measure_token(clip, token.token_id, token.interval.start_s,
                                        token.interval.end_s, config, ceilings[ci], &why);
            drops[j] = why;
        });

        // Per-phoneme ceiling selection on the sweep, then mistrack flagging
        // on the winning cell.
        for (Vowel phoneme : kVowels) {
            std::vector<std::size_t> token_indices;
            for (std::size_t t = 0; t < n_tokens; ++t)
                if (session.tokens[t].phoneme == phoneme) token_indices.push_back(t);
            if (token_indices.empty()) continue;

            std::map<int, std::vector<FormantMeasurement>> per_ceiling;
            for (std::size_t ci = 0; ci < ceilings.size(); ++ci) {
                auto& cell = per_ceiling[ceilings[ci]];
                for (std::size_t t : token_indices) {
                    const auto& m = measured[t * ceilings.size() + ci];
                    if (m) cell.push_back(*m);
                }
            }

            int chosen;
            try {
                chosen = select_ceiling(per_ceiling);
            } catch (const Error&) {
                for (std::size_t t : token_indices) {
                    const std::size_t j = t * ceilings.size();
                    ex.dropped_tokens.push_back(strprintf(
                        "token %d (%s): %s", session.tokens[t].token_id, label(phoneme),
                        drop_reason(drops[j])));
                }
                ex.dropped += static_cast<int>(token_indices.size());
                if (warnings)
                    warnings->push_back(strprintf("%s/%s: no ceiling measured any /%s/ token",
                                                  ex.speaker.c_str(), label(ex.group),
                                                  label(phoneme)));
                continue;
            }
            ex.ceiling_by_phoneme[phoneme] = chosen;

            const std::size_t chosen_index = static_cast<std::size_t>(
                std::find(ceilings.begin(), ceilings.end(), chosen) - ceilings.begin());
            std::vector<FormantMeasurement> cell = per_ceiling[chosen];
            flag_mistracks(cell);
            std::map<int, const FormantMeasurement*> by_token;
            for (const auto& m : cell) by_token[m.token_id] = &m;

            for (std::size_t t : token_indices) {
                const VowelToken& token = session.tokens[t];
                const auto it = by_token.find(token.token_id);
                if (it == by_token.end()) {
                    ++ex.dropped;
                    ex.dropped_tokens.push_back(strprintf(
                        "token %d (%s): %s", token.token_id, label(phoneme),
                        drop_reason(drops[t * ceilings.size() + chosen_index])));
                    continue;
                }
                const FormantMeasurement& m = *it->second;
                MeasurementRow row;
                row.token_id = m.token_id;
                row.speaker = ex.speaker;
                row.group = ex.group;
                row.phoneme = phoneme;
                row.word = token.word;
                row.f1_hz = m.f1_hz;
                row.f2_hz = m.f2_hz;
                row.b1_hz = m.b1_hz;
                row.b2_hz = m.b2_hz;
                row.ceiling_hz = m.ceiling_hz;
                row.n_frames = m.n_frames;
                row.flagged = m.flagged;
                ex.rows.push_back(std::move(row));
                if (m.flagged) ++ex.flagged;
                else ++ex.measured;
            }
        }
        out.push_back(std::move(ex));
    }
    return out;
}

// --- metrics -------------------------------------------------------------------

MetricsBundle compute_metrics(std::span<const MeasurementRow> rows, NormScope scope,
                              CornerStat vai_stat) {
    MetricsBundle bundle;
    if (rows.empty()) throw_input("no measurements to analyse");

    using SessionKey = std::pair<std::string, Group>;
    std::map<SessionKey, std::vector<MeasurementRow>> sessions;
    for (const auto& r : rows) sessions[{r.speaker, r.group}].push_back(r);

    // Normalization scopes: one per session, or one per speaker when pooling.
    std::map<std::string, std::vector<MeasurementRow>> scopes;
    for (const auto& [key, session_rows] : sessions) {
        const std::string scope_key =
            scope == NormScope::speaker ? key.first
                                        : key.first + "\x1f" + label(key.second);
        auto& bucket = scopes[scope_key];
        bucket.insert(bucket.end(), session_rows.begin(), session_rows.end());
    }

    for (const auto& [scope_key, scope_rows] : scopes) {
        std::string display = scope_key;
        const std::size_t sep = display.find('\x1f');
        if (sep != std::string::npos) display[sep] = '/';
        try {
            const auto points = lobanov_normalize(scope_rows);
            const auto centers = phoneme_centers(points);
            auto vfd = compute_vfd(points, centers);
            bundle.points.insert(bundle.points.end(), points.begin(), points.end());
            bundle.vfd.insert(bundle.vfd.end(), vfd.begin(), vfd.end());
        } catch (const Error& e) {
            bundle.diagnostics.push_back(display + ": " + e.what() + "; scope skipped");
        }
    }

    for (const auto& [key, session_rows] : sessions) {
        const std::string display = key.first + "/" + label(key.second);
        try {
            ClarityScore score;
            score.speaker = key.first;
            score.group = key.second;
            score.vai = compute_vai(session_rows, vai_stat);
            score.vsa_hz2 = compute_vsa(session_rows);
            if (score.vsa_hz2 == 0.0)
                bundle.diagnostics.push_back(display + ": degenerate vowel space, VSA is 0");
            for (Vowel corner : kCornerVowels) {
                std::vector<double> f1s, f2s;
                for (const auto& r : session_rows) {
                    if (r.flagged || r.phoneme != corner) continue;
                    f1s.push_back(r.f1_hz);
                    f2s.push_back(r.f2_hz);
                }
                if (!f1s.empty()) {
                    if (vai_stat == CornerStat::mean)
                        score.corner_hz[corner] = {mean(f1s), mean(f2s)};
                    else
                        score.corner_hz[corner] = {median(f1s), median(f2s)};
                }
            }
            bundle.clarity.push_back(std::move(score));
        } catch (const Error& e) {
            bundle.diagnostics.push_back(display + ": " + e.what() + "; clarity row omitted");
        }
    }
    return bundle;
}

// --- file-level runners ---------------------------------------------------------

namespace {

json stats_node(const std::vector<double>& values) {
    return {{"n", values.size()},
            {"mean", values.empty() ? 0.0 : mean(values)},
            {"sd", sample_sd(values)}};
}

std::vector<std::filesystem::path> expand_manifest_args(
    const std::vector<std::filesystem::path>& args) {
    std::vector<std::filesystem::path> out;
    for (const auto& arg : args) {
        json doc;
        try {
            doc = json::parse(csv::read_text_file(arg));
        } catch (const json::exception& e) {
            throw_input(arg.string() + ": invalid JSON (" + e.what() + ")");
        }
        if (doc.is_array()) {
            for (const auto& entry : doc)
                out.push_back(arg.parent_path() / entry.get<std::string>());
        } else {
            out.push_back(arg);
        }
    }
    return out;
}

template <typename Fn>
RunOutcome guarded(Fn&& fn) {
    RunOutcome outcome;
    try {
        fn(outcome);
        if (outcome.status == kOk && !outcome.messages.empty()) outcome.status = kPartial;
    } catch (const Error& e) {
        outcome.status = e.kind() == ErrorKind::input ? kInputError : kInternalError;
        outcome.messages.push_back(e.what());
    } catch (const std::exception& e) {
        outcome.status = kInternalError;
        outcome.messages.push_back(std::string("internal error: ") + e.what());
    }
    return outcome;
}

}  // namespace

RunOutcome run_extract(const std::vector<std::filesystem::path>& manifest_args,
                       const std::filesystem::path& out_dir, const RunOptions& options) {
    return guarded([&](RunOutcome& outcome) {
        const auto manifest_paths = expand_manifest_args(manifest_args);
        if (manifest_paths.empty()) throw_input("no manifests given");
        std::vector<SessionManifest> manifests;
        manifests.reserve(manifest_paths.size());
        for (const auto& p : manifest_paths) manifests.push_back(read_manifest(p));

        const Corpus corpus = build_corpus(manifests, options.tier);
        outcome.messages.insert(outcome.messages.end(), corpus.warnings.begin(),
                                corpus.warnings.end());

        std::vector<std::string> warnings;
        const auto sessions = extract_corpus(corpus, options.extraction, &warnings);
        outcome.messages.insert(outcome.messages.end(), warnings.begin(), warnings.end());

        std::vector<MeasurementRow> all_rows;
        json diag_sessions = json::array();
        for (const auto& s : sessions) {
            all_rows.insert(all_rows.end(), s.rows.begin(), s.rows.end());
            json ceilings = json::object();
            for (const auto& [v, c] : s.ceiling_by_phoneme) ceilings[label(v)] = c;
            diag_sessions.push_back({{"speaker", s.speaker},
                                     {"group", label(s.group)},
                                     {"tokens_in", s.tokens_in},
                                     {"measured", s.measured},
                                     {"dropped", s.dropped},
                                     {"flagged", s.flagged},
                                     {"ceilings", ceilings},
                                     {"dropped_tokens", s.dropped_tokens}});
            for (const auto& d : s.dropped_tokens)
                outcome.messages.push_back(s.speaker + "/" + label(s.group) + ": dropped " + d);
        }

        std::filesystem::create_directories(out_dir);
        if (options.emit_csv) write_measurements_csv(out_dir / "measurements.csv", all_rows);
        if (options.emit_json) {
            const json diagnostics = {{"sessions", diag_sessions},
                                      {"warnings", outcome.messages}};
            csv::write_file(out_dir / "extract_diagnostics.json", diagnostics.dump(2) + "\n");
        }
    });
}

RunOutcome run_metrics(const std::filesystem::path& measurements_csv,
                       const std::filesystem::path& out_dir, const RunOptions& options) {
    return guarded([&](RunOutcome& outcome) {
        const auto rows = read_measurements_csv(measurements_csv);
        MetricsBundle bundle = compute_metrics(rows, options.norm_scope, options.vai_stat);
        outcome.messages.insert(outcome.messages.end(), bundle.diagnostics.begin(),
                                bundle.diagnostics.end());

        std::filesystem::create_directories(out_dir);
        if (options.emit_csv) {
            write_clarity_csv(out_dir / "clarity.csv", bundle.clarity);
            write_variability_csv(out_dir / "variability.csv", bundle.vfd);
            write_points_csv(out_dir / "points.csv", bundle.points);
        }
        if (options.emit_json) {
            json vai = json::object(), vfd = json::object(), log_vfd = json::object();
            for (Group g : kGroups) {
                std::vector<double> vais;
                for (const auto& c : bundle.clarity)
                    if (c.group == g) vais.push_back(c.vai);
                if (!vais.empty()) vai[label(g)] = stats_node(vais);

                json vfd_group = json::object(), log_group = json::object();
                for (Vowel v : kVowels) {
                    std::vector<double> ds, logs;
                    for (const auto& d : bundle.vfd) {
                        if (d.group != g || d.phoneme != v) continue;
                        ds.push_back(d.vfd);
                        logs.push_back(d.log_vfd);
                    }
                    if (!ds.empty()) {
                        vfd_group[label(v)] = stats_node(ds);
                        log_group[label(v)] = stats_node(logs);
                    }
                }
                if (!vfd_group.empty()) {
                    vfd[label(g)] = vfd_group;
                    log_vfd[label(g)] = log_group;
                }
            }
            json sessions = json::array();
            for (const auto& c : bundle.clarity) {
                json corners = json::object();
                for (const auto& [v, hz] : c.corner_hz)
                    corners[label(v)] = {{"f1_hz", hz.first}, {"f2_hz", hz.second}};
                sessions.push_back({{"speaker", c.speaker},
                                    {"group", label(c.group)},
                                    {"vai", c.vai},
                                    {"vsa_hz2", c.vsa_hz2},
                                    {"corner_hz", corners}});
            }
            const json summary = {{"vai", vai},
                                  {"vfd", vfd},
                                  {"log_vfd", log_vfd},
                                  {"sessions", sessions},
                                  {"diagnostics", bundle.diagnostics}};
            csv::write_file(out_dir / "metrics_summary.json", summary.dump(2) + "\n");
        }
    });
}

RunOutcome run_compare(const std::filesystem::path& clarity_csv,
                       const std::filesystem::path& variability_csv,
                       const std::filesystem::path& out_dir, const RunOptions& options) {
    return guarded([&](RunOutcome& outcome) {
        const auto clarity = read_clarity_csv(clarity_csv);
        const auto vfd = read_variability_csv(variability_csv);
        const AnalysisReport report = run_analysis(clarity, vfd);
        outcome.messages.insert(outcome.messages.end(), report.gaps.begin(),
                                report.gaps.end());

        std::filesystem::create_directories(out_dir);
        if (options.emit_csv) {
            write_results_csv(out_dir / "results.csv", report.results);
            write_descriptives_csv(out_dir / "descriptives.csv", report.descriptives);
        }
        if (options.emit_json) {
            json results = json::array();
            for (const auto& r : report.results)
                results.push_back({{"contrast", r.contrast},
                                   {"response", r.response},
                                   {"phoneme", r.phoneme ? label(*r.phoneme) : ""},
                                   {"estimate", r.estimate},
                                   {"statistic", r.statistic},
                                   {"df", r.df},
                                   {"p_raw", r.p_raw},
                                   {"p_adj", r.p_adj},
                                   {"paired", r.paired},
                                   {"n_A", r.n_a},
                                   {"n_B", r.n_b}});
            const json summary = {
                {"results", results},
                {"trim",
                 {{"n_removed", report.trim.n_removed},
                  {"n_total", report.trim.n_total},
                  {"fraction", report.trim.fraction},
                  {"removed_token_ids", report.trim.removed_ids}}},
                {"alpha", 0.05},
                {"gaps", report.gaps}};
            csv::write_file(out_dir / "compare_summary.json", summary.dump(2) + "\n");
        }
    });
}

RunOutcome run_plot(const std::filesystem::path& clarity_csv,
                    const std::filesystem::path& variability_csv,
                    const std::filesystem::path& points_csv,
                    const std::filesystem::path& out_dir, const RunOptions& options) {
    return guarded([&](RunOutcome& outcome) {
        if (!options.emit_svg) throw_input("plot requested with svg output disabled");
        const auto clarity = read_clarity_csv(clarity_csv);
        const auto vfd = read_variability_csv(variability_csv);
        const auto points = read_points_csv(points_csv);
        if (points.empty()) throw_input("empty input: no normalized points to plot");

        std::filesystem::create_directories(out_dir);
        for (Group g : kGroups) {
            std::vector<NormalizedPoint> group_points;
            for (const auto& p : points)
                if (p.group == g) group_points.push_back(p);
            if (group_points.empty()) {
                outcome.messages.push_back(std::string("no tokens for group ") + label(g) +
                                           "; panel skipped");
                continue;
            }
            csv::write_file(out_dir / (std::string("vowel_space_") + label(g) + ".svg"),
                            vowel_space_svg(g, group_points));
        }
        csv::write_file(out_dir / "vai_dumbbell.svg", vai_dumbbell_svg(clarity));
        csv::write_file(out_dir / "change_panels.svg", change_panels_svg(clarity, vfd));
    });
}

RunOutcome run_synth_demo(const std::optional<std::filesystem::path>& recipe_json,
                          const std::filesystem::path& out_dir, const RunOptions& options) {
    return guarded([&](RunOutcome& outcome) {
        CorpusRecipe recipe =
            recipe_json ? recipe_from_json_file(*recipe_json) : default_recipe();
        if (options.seed) recipe.seed = *options.seed;
        generate_corpus(recipe, out_dir);
        (void)outcome;
    });
}

}  // namespace vm
