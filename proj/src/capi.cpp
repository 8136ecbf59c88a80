#include "chartdoc.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "chartdoc/errors.hpp"
#include "chartdoc/evaluate.hpp"
#include "chartdoc/hierarchy.hpp"
#include "chartdoc/pipeline.hpp"
#include "chartdoc/render.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CDQ_OK;
  } catch (const chartdoc::InvalidInput& e) {
    g_last_error = e.what();
    return CDQ_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CDQ_ERR_RUNTIME;
  }
}

std::string read_file_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw chartdoc::InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_or_throw(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw chartdoc::RuntimeFailure("cannot write " + path);
  out << bytes;
}

int require(bool ok, const char* what) {
  if (ok) return CDQ_OK;
  g_last_error = std::string("null argument: ") + what;
  return CDQ_ERR_INVALID;
}

}  // namespace

struct cdq_hierarchy {
  chartdoc::EntityHierarchy impl;
};

extern "C" {

const char* cdq_last_error(void) { return g_last_error.c_str(); }

void cdq_free(char* p) { delete[] p; }

int cdq_hierarchy_build(const char* edge_file, cdq_hierarchy** out) {
  if (int rc = require(edge_file && out, "edge_file/out")) return rc;
  return guarded([&] {
    auto* h = new cdq_hierarchy{
        chartdoc::EntityHierarchy::build_from_edge_file(edge_file)};
    *out = h;
  });
}

int cdq_hierarchy_size(const cdq_hierarchy* h, size_t* out) {
  if (int rc = require(h && out, "hierarchy/out")) return rc;
  *out = h->impl.size();
  g_last_error.clear();
  return CDQ_OK;
}

int cdq_hierarchy_serialize(const cdq_hierarchy* h, char** text_out) {
  if (int rc = require(h && text_out, "hierarchy/text_out")) return rc;
  return guarded([&] { *text_out = dup_string(h->impl.serialize()); });
}

int cdq_hierarchy_write(const cdq_hierarchy* h, const char* out_path) {
  if (int rc = require(h && out_path, "hierarchy/out_path")) return rc;
  return guarded([&] { write_file_or_throw(out_path, h->impl.serialize()); });
}

void cdq_hierarchy_free(cdq_hierarchy* h) { delete h; }

int cdq_generate(const char* config_json_path, uint64_t seed,
                 const char* out_dir, int jobs, char** digest_out) {
  if (int rc = require(config_json_path && out_dir, "config/out_dir")) return rc;
  return guarded([&] {
    chartdoc::GenConfig config =
        chartdoc::GenConfig::from_json_file(config_json_path);
    config.master_seed = seed;
    chartdoc::DatasetManifest manifest =
        chartdoc::generate(config, out_dir, jobs);
    if (digest_out) *digest_out = dup_string(manifest.corpus_digest);
  });
}

int cdq_debias(const char* dataset_dir, char** report_out) {
  if (int rc = require(dataset_dir, "dataset_dir")) return rc;
  return guarded([&] {
    chartdoc::BiasReport report = chartdoc::debias_dataset(dataset_dir);
    if (report_out) *report_out = dup_string(report.to_text());
  });
}

int cdq_stats(const char* dataset_dir, char** text_out) {
  if (int rc = require(dataset_dir && text_out, "dataset_dir/text_out")) return rc;
  return guarded([&] {
    *text_out = dup_string(chartdoc::stats(dataset_dir).to_text());
  });
}

int cdq_render_chart(const char* spec_json_path, const char* out_svg_path) {
  if (int rc = require(spec_json_path && out_svg_path, "spec/out")) return rc;
  return guarded([&] {
    chartdoc::ChartSpec spec =
        chartdoc::ChartSpec::from_json(read_file_or_throw(spec_json_path));
    write_file_or_throw(out_svg_path, chartdoc::render(spec).to_xml());
  });
}

int cdq_evaluate(const char* dataset_dir, const char* preds_path,
                 const char* report_path, char** text_out) {
  if (int rc = require(dataset_dir && preds_path, "dataset_dir/preds_path"))
    return rc;
  return guarded([&] {
    auto preds = chartdoc::load_predictions(preds_path);
    auto corpus = chartdoc::load_corpus(dataset_dir);
    if (corpus.empty())
      throw chartdoc::InvalidInput("no questions found in " +
                                   std::string(dataset_dir));
    chartdoc::EvalReport report = chartdoc::evaluate(preds, corpus);
    if (report_path) write_file_or_throw(report_path, report.to_json());
    if (text_out) *text_out = dup_string(report.to_text());
  });
}

}  // extern "C"
