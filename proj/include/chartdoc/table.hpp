#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chartdoc/hierarchy.hpp"
#include "chartdoc/rng.hpp"

namespace chartdoc {

enum class SourceKind { random, real_world };

struct DataTable {
  std::string table_id;
  std::vector<std::string> entity_names;   // columns
  std::vector<std::string> legend_labels;  // rows
  std::vector<std::vector<double>> values; // legend-major: values[row][col]
  SourceKind source_kind = SourceKind::random;
  std::optional<EntitySample> sample;
  std::string title_hint;  // corner cell of ingested CSVs, empty otherwise

  std::size_t rows() const { return legend_labels.size(); }
  std::size_t cols() const { return entity_names.size(); }

  void validate() const;      // dimension + distinctness invariants
  std::string to_csv() const; // header row + one row per legend
};

struct TableShapeConfig {
  int min_entities = 3;
  int max_entities = 10;
  int min_legends = 1;
  int max_legends = 4;
  double random_prob = 0.20;
};

// Values uniform on [1, 200], rounded half-up to 2 decimals. Labels come from
// the sample: first `cols` names become entities, the next `rows` legend
// labels (single-row tables label the series with the sample's grandparent).
DataTable random_table(int rows, int cols, const EntitySample& sample, Rng& rng);

DataTable ingest_csv(const std::string& content);
DataTable ingest_csv_file(const std::string& path);

// 20% random / 80% drawn uniformly from the pool; an empty pool forces random.
DataTable pick_table(const std::vector<DataTable>& real_pool,
                     const EntityHierarchy& hierarchy, Rng& rng,
                     const TableShapeConfig& cfg = {});

// Contiguous random sub-block of a real-world table with the given shape.
DataTable trim_table(const DataTable& t, int rows, int cols, Rng& rng);

std::string mint_table_id(const DataTable& t);

}  // namespace chartdoc
