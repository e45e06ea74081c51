/* vowelmetrics C API: vowel formant extraction, articulation metrics and
 * group statistics behind an opaque pipeline handle.
 *
 * Every run function returns a vm_status; 0 means success. Diagnostics and
 * error text for the most recent call are available via
 * vm_pipeline_message() until the next call on the same handle. Handles are
 * not thread-safe; use one handle per thread.
 */
#ifndef VOWELMETRICS_H
#define VOWELMETRICS_H

#include <stddef.h>

#if defined(_WIN32)
#define VM_API __declspec(dllexport)
#else
#define VM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the CLI exit codes. */
typedef enum vm_status {
    VM_OK = 0,       /* success */
    VM_PARTIAL = 1,  /* completed with warnings; see vm_pipeline_message */
    VM_ERR_INPUT = 2,
    VM_ERR_INTERNAL = 3
} vm_status;

typedef struct vm_pipeline vm_pipeline;

VM_API vm_pipeline* vm_pipeline_new(void);
VM_API void vm_pipeline_free(vm_pipeline* pipeline);

/* Options (all values are strings):
 *   "ceilings"   comma-separated sweep in Hz, e.g. "4000,4500,5000,5500,6000"
 *   "tier"       TextGrid tier name holding the vowel intervals
 *   "norm-scope" "session" (default) or "speaker"
 *   "vai-stat"   "mean" (default) or "median" per-corner statistic
 *   "seed"       overrides the synth-demo recipe seed
 *   "formats"    subset of "csv,json,svg" to emit
 */
VM_API vm_status vm_pipeline_set_option(vm_pipeline* pipeline, const char* key,
                                        const char* value);

/* Newline-separated diagnostics of the most recent call; owned by the handle. */
VM_API const char* vm_pipeline_message(const vm_pipeline* pipeline);

/* Formant extraction over a corpus. Each manifest path may name a session
 * manifest or a JSON array of manifest paths. Writes measurements.csv and
 * extract_diagnostics.json into out_dir. */
VM_API vm_status vm_pipeline_extract(vm_pipeline* pipeline,
                                     const char* const* manifest_paths, size_t n_manifests,
                                     const char* out_dir);

/* Lobanov normalization, VAI/VSA and VFD. Writes clarity.csv,
 * variability.csv, points.csv and metrics_summary.json. */
VM_API vm_status vm_pipeline_metrics(vm_pipeline* pipeline, const char* measurements_csv,
                                     const char* out_dir);

/* Group contrasts with trimming and FDR correction. Writes results.csv,
 * descriptives.csv and compare_summary.json. */
VM_API vm_status vm_pipeline_compare(vm_pipeline* pipeline, const char* clarity_csv,
                                     const char* variability_csv, const char* out_dir);

/* Vowel-space, VAI dumbbell and change-panel SVGs. */
VM_API vm_status vm_pipeline_plot(vm_pipeline* pipeline, const char* clarity_csv,
                                  const char* variability_csv, const char* points_csv,
                                  const char* out_dir);

/* Synthesizes a demonstration corpus (recipe_json may be NULL for the
 * built-in recipe); writes WAV + CSV segmentation + manifests + index. */
VM_API vm_status vm_pipeline_synth_demo(vm_pipeline* pipeline, const char* recipe_json,
                                        const char* out_dir);

VM_API const char* vm_version(void);

#ifdef __cplusplus
}
#endif

#endif /* VOWELMETRICS_H */
