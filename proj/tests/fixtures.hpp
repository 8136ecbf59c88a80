#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>

#include "chartdoc/chart.hpp"
#include "chartdoc/pipeline.hpp"

namespace chartdoc_test {

inline std::string data_path(const std::string& rel) {
  return std::string(CHARTDOC_DATA_DIR) + "/" + rel;
}

inline chartdoc::GenConfig test_config(std::size_t doc_count,
                                       std::uint64_t seed) {
  chartdoc::GenConfig c;
  c.doc_count = doc_count;
  c.master_seed = seed;
  c.colors_path = data_path("colors.csv");
  c.hierarchy_path = data_path("hypernyms.txt");
  c.registry_path = data_path("templates.txt");
  c.image_pool_dir = data_path("image_pool");
  c.table_pool_dir = data_path("table_pool");
  return c;
}

// Fresh scratch directory under the system temp dir; removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("chartdoc_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

// Hand-built single-series bar chart used by answer-engine tests: three
// categories with known interval values.
inline chartdoc::ChartInfo worked_example_chart() {
  chartdoc::ChartInfo info;
  info.chart_id = "T_2023_04_08_18_48_12_3_Vbar";
  info.chart_type = "Vertical Bar";
  info.title = "Values of accessory";
  info.entity_names = {"mouse", "keyboard", "sunglass"};
  info.legend_labels = {"accessory"};
  info.data = {{85.6, 100.01, 101.1}};
  info.colors = {{"teal", "#008080"}};
  info.entity_parents = {"rodent", "peripheral", "accessory"};
  info.entity_grandparent = "artifact";
  info.x_title = "Entity";
  info.y_title = "Value";
  info.table_id = "T_fixture01";
  return info;
}

}  // namespace chartdoc_test
