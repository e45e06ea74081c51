// vowelmetrics command-line front end. Talks to the shared library strictly
// through the C API in vowelmetrics/vowelmetrics.h.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vowelmetrics/vowelmetrics.h"

namespace {

struct PipelineDeleter {
    void operator()(vm_pipeline* p) const { vm_pipeline_free(p); }
};
using PipelineHandle = std::unique_ptr<vm_pipeline, PipelineDeleter>;

int report(vm_pipeline* pipeline, vm_status status) {
    const char* message = vm_pipeline_message(pipeline);
    if (message && *message) std::fputs(message, stderr);
    return static_cast<int>(status);
}

int set_or_die(vm_pipeline* pipeline, const char* key, const std::string& value) {
    const vm_status status = vm_pipeline_set_option(pipeline, key, value.c_str());
    if (status != VM_OK) {
        std::fprintf(stderr, "bad --%s: %s", key, vm_pipeline_message(pipeline));
        return static_cast<int>(status);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vowelmetrics: vowel formant extraction, articulation metrics and "
                 "group statistics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vm_version()));

    std::string out_dir;
    std::string ceilings, tier, norm_scope, vai_stat, formats;
    std::string seed;

    auto add_common = [&](CLI::App* cmd, bool with_extraction) {
        cmd->add_option("--out", out_dir, "output directory")->required();
        cmd->add_option("--format", formats, "outputs to emit: subset of csv,json,svg");
        if (with_extraction) {
            cmd->add_option("--ceilings", ceilings,
                            "formant ceiling sweep in Hz, comma separated");
            cmd->add_option("--tier", tier, "TextGrid tier with the vowel intervals");
        }
    };

    // extract
    std::vector<std::string> manifest_args;
    CLI::App* extract = app.add_subcommand(
        "extract", "measure F1/F2 per token with per-vowel ceiling selection");
    extract->add_option("--manifest", manifest_args,
                        "session manifest (or JSON array of manifests); repeatable")
        ->required();
    add_common(extract, true);

    // metrics
    std::string measurements_csv;
    CLI::App* metrics = app.add_subcommand(
        "metrics", "Lobanov normalization, VAI/VSA and per-token VFD");
    metrics->add_option("--measurements", measurements_csv, "measurements.csv from extract")
        ->required();
    metrics->add_option("--norm-scope", norm_scope,
                        "normalization scope: session (default) or speaker");
    metrics->add_option("--vai-stat", vai_stat, "per-corner statistic: mean or median");
    add_common(metrics, false);

    // compare
    std::string clarity_csv, variability_csv, points_csv;
    CLI::App* compare = app.add_subcommand(
        "compare", "trimmed group contrasts on VAI and log-VFD with FDR correction");
    compare->add_option("--clarity", clarity_csv, "clarity.csv from metrics")->required();
    compare->add_option("--variability", variability_csv, "variability.csv from metrics")
        ->required();
    add_common(compare, false);

    // plot
    CLI::App* plot = app.add_subcommand("plot", "vowel-space, dumbbell and change SVGs");
    plot->add_option("--clarity", clarity_csv, "clarity.csv from metrics")->required();
    plot->add_option("--variability", variability_csv, "variability.csv from metrics")
        ->required();
    plot->add_option("--points", points_csv, "points.csv from metrics")->required();
    add_common(plot, false);

    // synth-demo
    std::string recipe_path;
    CLI::App* synth = app.add_subcommand(
        "synth-demo", "generate a synthetic demonstration corpus");
    synth->add_option("--recipe", recipe_path, "corpus recipe JSON (built-in when omitted)");
    synth->add_option("--seed", seed, "override the recipe seed");
    add_common(synth, false);

    CLI11_PARSE(app, argc, argv);

    PipelineHandle pipeline(vm_pipeline_new());
    if (!pipeline) {
        std::fprintf(stderr, "out of memory\n");
        return 3;
    }
    vm_pipeline* p = pipeline.get();

    if (!ceilings.empty())
        if (int rc = set_or_die(p, "ceilings", ceilings)) return rc;
    if (!tier.empty())
        if (int rc = set_or_die(p, "tier", tier)) return rc;
    if (!norm_scope.empty())
        if (int rc = set_or_die(p, "norm-scope", norm_scope)) return rc;
    if (!vai_stat.empty())
        if (int rc = set_or_die(p, "vai-stat", vai_stat)) return rc;
    if (!formats.empty())
        if (int rc = set_or_die(p, "formats", formats)) return rc;
    if (!seed.empty())
        if (int rc = set_or_die(p, "seed", seed)) return rc;

    if (extract->parsed()) {
        std::vector<const char*> paths;
        paths.reserve(manifest_args.size());
        for (const auto& m : manifest_args) paths.push_back(m.c_str());
        return report(p, vm_pipeline_extract(p, paths.data(), paths.size(), out_dir.c_str()));
    }
    if (metrics->parsed())
        return report(p, vm_pipeline_metrics(p, measurements_csv.c_str(), out_dir.c_str()));
    if (compare->parsed())
        return report(p, vm_pipeline_compare(p, clarity_csv.c_str(), variability_csv.c_str(),
                                             out_dir.c_str()));
    if (plot->parsed())
        return report(p, vm_pipeline_plot(p, clarity_csv.c_str(), variability_csv.c_str(),
                                          points_csv.c_str(), out_dir.c_str()));
    if (synth->parsed())
        return report(p, vm_pipeline_synth_demo(
                             p, recipe_path.empty() ? nullptr : recipe_path.c_str(),
                             out_dir.c_str()));
    return 2;
}
