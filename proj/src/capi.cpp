#include "vowelmetrics/vowelmetrics.h"

#include <string>
#include <vector>

#include "pipeline.hpp"
#include "util.hpp"

struct vm_pipeline {
    vm::RunOptions options;
    std::string message;
};

namespace {

vm_status finish(vm_pipeline* p, const vm::RunOutcome& outcome) {
    p->message = outcome.joined();
    return static_cast<vm_status>(outcome.status);
}

vm_status fail_input(vm_pipeline* p, const std::string& msg) {
    if (p) p->message = msg + "\n";
    return VM_ERR_INPUT;
}

bool parse_ceilings(const std::string& value, std::vector<int>* out) {
    std::vector<int> ceilings;
    for (const std::string& part : vm::split(value, ',')) {
        try {
            ceilings.push_back(static_cast<int>(vm::parse_long(part, "ceiling")));
        } catch (const vm::Error&) {
            return false;
        }
    }
    if (ceilings.empty()) return false;
    *out = std::move(ceilings);
    return true;
}

}  // namespace

extern "C" {

vm_pipeline* vm_pipeline_new(void) { return new (std::nothrow) vm_pipeline(); }

void vm_pipeline_free(vm_pipeline* pipeline) { delete pipeline; }

vm_status vm_pipeline_set_option(vm_pipeline* pipeline, const char* key, const char* value) {
    if (!pipeline || !key || !value) return fail_input(pipeline, "null option argument");
    const std::string k = vm::lower(vm::trim(key));
    const std::string v = vm::trim(value);
    vm::RunOptions& opt = pipeline->options;
    try {
        if (k == "ceilings") {
            std::vector<int> ceilings;
            if (!parse_ceilings(v, &ceilings))
                return fail_input(pipeline, "ceilings must be a comma-separated Hz list");
            opt.extraction.ceilings_hz = ceilings;
            opt.extraction.validate();
        } else if (k == "tier") {
            if (v.empty()) return fail_input(pipeline, "tier name must be nonempty");
            opt.tier = v;
        } else if (k == "norm-scope" || k == "norm_scope") {
            if (v == "session") opt.norm_scope = vm::NormScope::session;
            else if (v == "speaker") opt.norm_scope = vm::NormScope::speaker;
            else return fail_input(pipeline, "norm-scope must be 'session' or 'speaker'");
        } else if (k == "vai-stat" || k == "vai_stat") {
            if (v == "mean") opt.vai_stat = vm::CornerStat::mean;
            else if (v == "median") opt.vai_stat = vm::CornerStat::median;
            else return fail_input(pipeline, "vai-stat must be 'mean' or 'median'");
        } else if (k == "seed") {
            opt.seed = static_cast<uint64_t>(vm::parse_long(v, "seed"));
        } else if (k == "formats") {
            bool csv = false, json = false, svg = false;
            for (const std::string& part : vm::split(v, ',')) {
                const std::string f = vm::lower(vm::trim(part));
                if (f == "csv") csv = true;
                else if (f == "json") json = true;
                else if (f == "svg") svg = true;
                else return fail_input(pipeline, "unknown format '" + f + "'");
            }
            opt.emit_csv = csv;
            opt.emit_json = json;
            opt.emit_svg = svg;
        } else {
            return fail_input(pipeline, "unknown option '" + k + "'");
        }
    } catch (const vm::Error& e) {
        return fail_input(pipeline, e.what());
    }
    pipeline->message.clear();
    return VM_OK;
}

const char* vm_pipeline_message(const vm_pipeline* pipeline) {
    return pipeline ? pipeline->message.c_str() : "";
}

vm_status vm_pipeline_extract(vm_pipeline* pipeline, const char* const* manifest_paths,
                              size_t n_manifests, const char* out_dir) {
    if (!pipeline || !manifest_paths || !out_dir || n_manifests == 0)
        return fail_input(pipeline, "extract requires manifests and an output directory");
    std::vector<std::filesystem::path> manifests;
    manifests.reserve(n_manifests);
    for (size_t i = 0; i < n_manifests; ++i) {
        if (!manifest_paths[i]) return fail_input(pipeline, "null manifest path");
        manifests.emplace_back(manifest_paths[i]);
    }
    return finish(pipeline, vm::run_extract(manifests, out_dir, pipeline->options));
}

vm_status vm_pipeline_metrics(vm_pipeline* pipeline, const char* measurements_csv,
                              const char* out_dir) {
    if (!pipeline || !measurements_csv || !out_dir)
        return fail_input(pipeline, "metrics requires a measurements CSV and an output directory");
    return finish(pipeline,
                  vm::run_metrics(measurements_csv, out_dir, pipeline->options));
}

vm_status vm_pipeline_compare(vm_pipeline* pipeline, const char* clarity_csv,
                              const char* variability_csv, const char* out_dir) {
    if (!pipeline || !clarity_csv || !variability_csv || !out_dir)
        return fail_input(pipeline, "compare requires clarity and variability CSVs");
    return finish(pipeline, vm::run_compare(clarity_csv, variability_csv, out_dir,
                                            pipeline->options));
}

vm_status vm_pipeline_plot(vm_pipeline* pipeline, const char* clarity_csv,
                           const char* variability_csv, const char* points_csv,
                           const char* out_dir) {
    if (!pipeline || !clarity_csv || !variability_csv || !points_csv || !out_dir)
        return fail_input(pipeline, "plot requires clarity, variability and points CSVs");
    return finish(pipeline, vm::run_plot(clarity_csv, variability_csv, points_csv, out_dir,
                                         pipeline->options));
}

vm_status vm_pipeline_synth_demo(vm_pipeline* pipeline, const char* recipe_json,
                                 const char* out_dir) {
    if (!pipeline || !out_dir)
        return fail_input(pipeline, "synth-demo requires an output directory");
    std::optional<std::filesystem::path> recipe;
    if (recipe_json) recipe = std::filesystem::path(recipe_json);
    return finish(pipeline, vm::run_synth_demo(recipe, out_dir, pipeline->options));
}

const char* vm_version(void) { return "0.1.0"; }

}  // extern "C"
