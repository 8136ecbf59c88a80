#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chartdoc/chart.hpp"
#include "chartdoc/debias.hpp"
#include "chartdoc/question.hpp"
#include "chartdoc/table.hpp"

namespace chartdoc {

struct GenConfig {
  std::size_t doc_count = 1;
  std::uint64_t master_seed = 0;
  double train_ratio = 0.8002;
  double val_ratio = 0.0996;
  double test_ratio = 0.1002;
  int questions_lo = 12;  // per-chart draw, clamped by applicability
  int questions_hi = 16;
  TableShapeConfig shape;
  Timestamp base_time{2023, 4, 8, 18, 48, 12};
  std::string colors_path;
  std::string hierarchy_path;   // edge-list file
  std::string registry_path;
  std::string image_pool_dir;
  std::string table_pool_dir;   // real-world CSVs; may be empty

  void validate() const;
  std::string to_json() const;
  static GenConfig from_json(const std::string& text);
  static GenConfig from_json_file(const std::string& path);
};

struct DatasetManifest {
  std::string config_json;
  std::size_t chart_count = 0;
  std::size_t doc_count = 0;
  std::size_t question_count = 0;
  std::map<std::string, std::size_t> questions_per_split;
  std::vector<std::pair<std::string, std::string>> files;  // path -> digest
  std::string corpus_digest;  // digest over the per-file digests

  std::string to_json() const;
  static DatasetManifest from_json_file(const std::string& path);
};

struct StatsReport {
  std::map<std::string, std::map<std::string, std::size_t>> family_by_split;
  std::map<std::string, std::size_t> question_types;
  std::map<std::string, std::size_t> answer_types;
  std::map<std::string, std::size_t> difficulties;
  std::size_t chart_total = 0;
  std::size_t question_total = 0;

  std::string to_json() const;
  std::string to_text() const;
};

// Deterministic hash bucketing over the doc id.
std::string assign_split(const std::string& doc_id, double train_ratio,
                         double val_ratio, std::uint64_t master_seed);

// End-to-end generation into out_dir (charts/, docs/, annotations/, qa/,
// manifest.json, stats.json, debias_report.txt, registry.txt). Output is
// independent of `jobs`.
DatasetManifest generate(const GenConfig& config, const std::string& out_dir,
                         int jobs = 1);

// Re-balances an existing dataset in place and rewrites qa files,
// annotations, and the manifest.
BiasReport debias_dataset(const std::string& dataset_dir, int max_attempts = 50);

// Recomputed from corpus files; verifies manifest digests first.
StatsReport stats(const std::string& dataset_dir);

// All questions in the dataset, doc order within each split file.
std::vector<QuestionInfo> load_corpus(const std::string& dataset_dir);

}  // namespace chartdoc
