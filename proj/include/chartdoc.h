/* C interface to the chart-document generation library.
 *
 * All functions return CDQ_OK (0) on success, CDQ_ERR_INVALID (1) for
 * invalid inputs, or CDQ_ERR_RUNTIME (2) for runtime failures; the
 * thread-local message from cdq_last_error() describes the failure.
 * Strings returned through `char**` out-parameters are heap-allocated and
 * must be released with cdq_free().
 */
#ifndef CHARTDOC_H
#define CHARTDOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Exported despite the library's hidden default visibility. */
#ifndef CDQ_API
#if defined(CDQ_BUILDING_SHARED) && (defined(__GNUC__) || defined(__clang__))
#define CDQ_API __attribute__((visibility("default")))
#else
#define CDQ_API
#endif
#endif

#define CDQ_OK 0
#define CDQ_ERR_INVALID 1
#define CDQ_ERR_RUNTIME 2

/* Message for the most recent failure on this thread; empty on success. */
CDQ_API const char* cdq_last_error(void);

CDQ_API void cdq_free(char* p);

/* ----- entity hierarchy ----- */

typedef struct cdq_hierarchy cdq_hierarchy;

/* Builds the pruned taxonomy tree from an edge-list file
 * (`child<TAB>parent[,parent...]` per line). */
CDQ_API int cdq_hierarchy_build(const char* edge_file, cdq_hierarchy** out);
CDQ_API int cdq_hierarchy_size(const cdq_hierarchy* h, size_t* out);
CDQ_API int cdq_hierarchy_serialize(const cdq_hierarchy* h, char** text_out);
CDQ_API int cdq_hierarchy_write(const cdq_hierarchy* h, const char* out_path);
CDQ_API void cdq_hierarchy_free(cdq_hierarchy* h);

/* ----- dataset pipeline ----- */

/* Generates a dataset into out_dir. `seed` overrides the config's
 * master_seed. Returns the manifest's corpus digest. */
CDQ_API int cdq_generate(const char* config_json_path, uint64_t seed,
                 const char* out_dir, int jobs, char** digest_out);

/* Re-balances yes/no answers of an existing dataset in place; returns the
 * balance report text. */
CDQ_API int cdq_debias(const char* dataset_dir, char** report_out);

/* Corpus statistics, recomputed from the files after digest verification. */
CDQ_API int cdq_stats(const char* dataset_dir, char** text_out);

/* Renders a chart spec JSON file to an SVG file. */
CDQ_API int cdq_render_chart(const char* spec_json_path, const char* out_svg_path);

/* Scores a `question_id<TAB>answer` prediction file against the dataset;
 * writes the JSON report to report_path and returns the text report. */
CDQ_API int cdq_evaluate(const char* dataset_dir, const char* preds_path,
                 const char* report_path, char** text_out);

#ifdef __cplusplus
}
#endif

#endif /* CHARTDOC_H */
