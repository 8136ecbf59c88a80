#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chartdoc/rng.hpp"
#include "chartdoc/table.hpp"

namespace chartdoc {

enum class ChartFamily { bar, line, pie, scatter, box, combination };

struct ChartSubtype {
  ChartFamily family;
  std::string name;  // e.g. "Group Horizontal Bar"
  std::string code;  // ID abbreviation, e.g. "GHbar"
};

// The fixed 30-entry catalog: 11 bar, 7 line, 4 pie, 4 scatter, 3 box, 1 comb.
const std::vector<ChartSubtype>& subtype_catalog();
const ChartSubtype& subtype_by_name(const std::string& name);
const char* family_name(ChartFamily f);
std::vector<std::string> subtypes_of_family(ChartFamily f);

// Family probabilities 0.3667/0.2333/0.1333/0.1333/0.1000/0.0333,
// subtype uniform within the family.
ChartSubtype sample_subtype(Rng& rng);

struct NamedColor {
  std::string name;
  std::string hex;  // "#rrggbb"
};

class ColorCatalog {
 public:
  static ColorCatalog load_file(const std::string& path);  // name,hex CSV
  std::size_t size() const { return colors_.size(); }
  const NamedColor& at(std::size_t i) const { return colors_[i]; }
  std::vector<NamedColor> sample_distinct(Rng& rng, std::size_t n) const;

 private:
  std::vector<NamedColor> colors_;
};

enum class Background { light, dark };

struct ChartStyle {
  Background background = Background::light;
  std::vector<NamedColor> palette;  // one entry per series, distinct
};

struct Timestamp {
  int year, month, day, hour, minute, second;
  Timestamp plus_seconds(long s) const;
};

// `<M>_<YYYY>_<MM>_<DD>_<HH>_<mm>_<ss>_<r>_<SubtypeCode>`
std::string make_chart_id(const Timestamp& clock, Rng& rng,
                          const ChartSubtype& subtype, char machine);

struct ChartSpec {
  std::string chart_id;
  ChartSubtype subtype;
  ChartStyle style;
  DataTable table;
  std::string title;
  std::string x_title;
  std::string y_title;
  std::map<std::string, std::string> extras;

  std::string to_json() const;
  static ChartSpec from_json(const std::string& json);
};

struct ChartInfo {
  std::string chart_id;
  std::string chart_type;  // subtype name
  std::string title;
  std::vector<std::string> entity_names;
  std::vector<std::string> legend_labels;
  std::vector<std::vector<double>> data;
  std::vector<NamedColor> colors;  // one per series
  std::vector<std::string> entity_parents;
  std::string entity_grandparent;
  std::vector<std::string> legend_parents;
  std::string legend_grandparent;
  std::string x_title;
  std::string y_title;
  std::string table_id;
  std::map<std::string, std::string> dsc;

  std::string to_json() const;
  static ChartInfo from_json(const std::string& json);
};

// Legend-row bounds a subtype accepts; box subtypes additionally need >= 5
// rows of observations per entity.
struct SubtypeShape {
  int min_legends;
  int max_legends;  // 0 = unbounded
  int min_rows;     // raw observation rows (box family)
};
SubtypeShape subtype_shape(const ChartSubtype& st);

// True when the chart colors each entity (pie, box) rather than one colored
// series per legend row.
bool colors_per_entity(const ChartSubtype& st);

struct BuiltChart {
  ChartSpec spec;
  ChartInfo info;
};

BuiltChart build_chart(const DataTable& table, const ChartSubtype& subtype,
                       const ColorCatalog& colors, Rng& rng,
                       const std::string& chart_id);

// Value-axis orientation; "none" for pie charts.
std::string subtype_orientation(const std::string& subtype_name);

}  // namespace chartdoc
