#include "chartdoc/chart.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"
#include "json.hpp"

namespace chartdoc {

const std::vector<ChartSubtype>& subtype_catalog() {
  static const std::vector<ChartSubtype> catalog = {
      {ChartFamily::bar, "Vertical Bar", "Vbar"},
      {ChartFamily::bar, "Horizontal Bar", "Hbar"},
      {ChartFamily::bar, "Stack Vertical Bar", "S-Vbar"},
      {ChartFamily::bar, "Stack Horizontal Bar", "S-Hbar"},
      {ChartFamily::bar, "Group Vertical Bar", "GVbar"},
      {ChartFamily::bar, "Group Horizontal Bar", "GHbar"},
      {ChartFamily::bar, "Polar Coordinates Vertical Bar", "P-Vbar"},
      {ChartFamily::bar, "Polar Coordinates Horizontal Bar", "P-Hbar"},
      {ChartFamily::bar, "Polar Coordinates Stack Vertical Bar", "PS-Vbar"},
      {ChartFamily::bar, "Polar Coordinates Stack Horizontal Bar", "PS-Hbar"},
      {ChartFamily::bar, "Waterfall Bar", "Wbar"},
      {ChartFamily::line, "Single Line", "Sline"},
      {ChartFamily::line, "Smooth Single Line", "SMline"},
      {ChartFamily::line, "MultiLine", "Mline"},
      {ChartFamily::line, "Marker Single Line", "MKline"},
      {ChartFamily::line, "Best Value Single Line", "BVSline"},
      {ChartFamily::line, "Best Value MultiLine", "BVMline"},
      {ChartFamily::line, "Interval Highlight Single Line", "IHline"},
      {ChartFamily::pie, "Simple Pie", "Spie"},
      {ChartFamily::pie, "Ring Pie", "Rpie"},
      {ChartFamily::pie, "Rose Pie", "ROpie"},
      {ChartFamily::pie, "Nesting Pie", "Npie"},
      {ChartFamily::scatter, "Simple Scatter", "Sscatter"},
      {ChartFamily::scatter, "Multi Scatter", "Mscatter"},
      {ChartFamily::scatter, "Bubble Scatter", "Bscatter"},
      {ChartFamily::scatter, "Check Bubble Scatter", "CBscatter"},
      {ChartFamily::box, "Vertical Boxplot", "Vbox"},
      {ChartFamily::box, "Horizontal Boxplot", "Hbox"},
      {ChartFamily::box, "Multi Boxplot", "Mbox"},
      {ChartFamily::combination, "Line Bar", "LineBar"},
  };
  return catalog;
}

const ChartSubtype& subtype_by_name(const std::string& name) {
  for (const auto& st : subtype_catalog())
    if (st.name == name) return st;
  throw InvalidInput("unknown chart subtype '" + name + "'");
}

const char* family_name(ChartFamily f) {
  switch (f) {
    case ChartFamily::bar: return "bar";
    case ChartFamily::line: return "line";
    case ChartFamily::pie: return "pie";
    case ChartFamily::scatter: return "scatter";
    case ChartFamily::box: return "box";
    case ChartFamily::combination: return "combination";
  }
  return "?";
}

std::vector<std::string> subtypes_of_family(ChartFamily f) {
  std::vector<std::string> out;
  for (const auto& st : subtype_catalog())
    if (st.family == f) out.push_back(st.name);
  return out;
}

ChartSubtype sample_subtype(Rng& rng) {
  // Family shares from the corpus totals 18337/11669/6668/6668/5001/1667.
  static const std::pair<ChartFamily, double> probs[] = {
      {ChartFamily::bar, 0.3667},     {ChartFamily::line, 0.2333},
      {ChartFamily::pie, 0.1333},     {ChartFamily::scatter, 0.1333},
      {ChartFamily::box, 0.1000},     {ChartFamily::combination, 0.0334},
  };
  double u = rng.uniform01();
  ChartFamily fam = ChartFamily::combination;
  double acc = 0;
  for (const auto& [f, p] : probs) {
    acc += p;
    if (u < acc) {
      fam = f;
      break;
    }
  }
  auto names = subtypes_of_family(fam);
  return subtype_by_name(names[rng.below(names.size())]);
}

ColorCatalog ColorCatalog::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open color catalog: " + path);
  ColorCatalog cat;
  std::string line;
  std::size_t lineno = 0;
  auto hex_ok = [](const std::string& h) {
    if (h.size() != 7 || h[0] != '#') return false;
    for (std::size_t i = 1; i < 7; ++i)
      if (!std::isxdigit(static_cast<unsigned char>(h[i]))) return false;
    return true;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto comma = t.rfind(',');
    if (comma == std::string::npos)
      throw ParseError(lineno, 1, "expected `name,hex`");
    NamedColor c{trim(t.substr(0, comma)), trim(t.substr(comma + 1))};
    if (!hex_ok(c.hex))
      throw ParseError(lineno, 2, "bad hex value '" + c.hex + "'");
    cat.colors_.push_back(std::move(c));
  }
  return cat;
}

std::vector<NamedColor> ColorCatalog::sample_distinct(Rng& rng, std::size_t n) const {
  if (n > colors_.size())
    throw InvalidInput("palette request exceeds catalog size");
  std::vector<NamedColor> out;
  for (auto i : rng.sample_indices(colors_.size(), n)) out.push_back(colors_[i]);
  return out;
}

namespace {
// days-from-civil / civil-from-days (Howard Hinnant's algorithms).
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}
void civil_from_days(long z, int& y, int& m, int& d) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long yy = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}
}  // namespace

Timestamp Timestamp::plus_seconds(long s) const {
  long total = (static_cast<long>(hour) * 60 + minute) * 60 + second + s;
  long day_shift = total / 86400;
  long rem = total % 86400;
  if (rem < 0) {
    rem += 86400;
    --day_shift;
  }
  Timestamp out;
  civil_from_days(days_from_civil(year, month, day) + day_shift, out.year,
                  out.month, out.day);
  out.hour = static_cast<int>(rem / 3600);
  out.minute = static_cast<int>((rem / 60) % 60);
  out.second = static_cast<int>(rem % 60);
  return out;
}

std::string make_chart_id(const Timestamp& clock, Rng& rng,
                          const ChartSubtype& subtype, char machine) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%c_%04d_%02d_%02d_%02d_%02d_%02d_%d_",
                machine, clock.year, clock.month, clock.day, clock.hour,
                clock.minute, clock.second, static_cast<int>(rng.below(10)));
  return std::string(buf) + subtype.code;
}

SubtypeShape subtype_shape(const ChartSubtype& st) {
  const std::string& n = st.name;
  if (st.family == ChartFamily::box) return {5, 0, 5};
  if (st.family == ChartFamily::pie) return {1, 1, 1};
  if (st.family == ChartFamily::combination) return {2, 2, 1};
  if (n == "MultiLine" || n == "Best Value MultiLine" || n == "Multi Scatter")
    return {2, 0, 1};
  if (n.find("Stack") != std::string::npos || n.find("Group") != std::string::npos)
    return {2, 0, 1};
  // single-series bar/line/scatter variants
  return {1, 1, 1};
}

bool colors_per_entity(const ChartSubtype& st) {
  return st.family == ChartFamily::pie || st.family == ChartFamily::box;
}

std::string subtype_orientation(const std::string& name) {
  const ChartSubtype& st = subtype_by_name(name);
  if (st.family == ChartFamily::pie) return "none";
  if (name.find("Horizontal") != std::string::npos) return "horizontal";
  return "vertical";
}

namespace {

void box_stats(std::vector<double> v, double out[5]) {
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    double h = (static_cast<double>(v.size()) - 1.0) * p;
    std::size_t lo = static_cast<std::size_t>(h);
    double frac = h - static_cast<double>(lo);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + frac * (v[lo + 1] - v[lo]);
  };
  out[0] = v.front();
  out[1] = q(0.25);
  out[2] = q(0.50);
  out[3] = q(0.75);
  out[4] = v.back();
}

}  // namespace

BuiltChart build_chart(const DataTable& table, const ChartSubtype& subtype,
                       const ColorCatalog& colors, Rng& rng,
                       const std::string& chart_id) {
  table.validate();
  SubtypeShape shape = subtype_shape(subtype);
  int legends = static_cast<int>(table.rows());
  auto bad = [&](const std::string& why) {
    throw IncompatibleShape(subtype.name + " incompatible with " +
                            std::to_string(table.rows()) + "x" +
                            std::to_string(table.cols()) + " table: " + why);
  };
  if (legends < shape.min_legends) bad("too few legend rows");
  if (shape.max_legends && legends > shape.max_legends) bad("too many legend rows");
  if (subtype.family == ChartFamily::box && legends < shape.min_rows)
    bad("box plots need >= 5 observations per entity");
  if (subtype.name == "Multi Boxplot" && table.cols() < 2)
    bad("Multi Boxplot needs >= 2 entities");

  BuiltChart out;
  ChartSpec& spec = out.spec;
  spec.chart_id = chart_id;
  spec.subtype = subtype;
  spec.table = table;
  spec.style.background = rng.chance(0.5) ? Background::dark : Background::light;
  std::size_t series =
      colors_per_entity(subtype) ? table.cols() : table.rows();
  spec.style.palette = colors.sample_distinct(rng, series);

  if (!table.title_hint.empty()) {
    spec.title = table.title_hint;
  } else if (table.sample) {
    spec.title = "Values of " + table.sample->grandparent;
  } else {
    spec.title = "Table " + table.table_id;
  }
  std::string orient = subtype_orientation(subtype.name);
  if (orient == "horizontal") {
    spec.x_title = "Value";
    spec.y_title = "Entity";
  } else if (orient == "vertical") {
    spec.x_title = "Entity";
    spec.y_title = "Value";
  }

  // Subtype extras.
  double vmin = table.values[0][0], vmax = vmin;
  for (const auto& row : table.values)
    for (double v : row) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  if (subtype.name == "Marker Single Line") {
    spec.extras["marker_value"] = format_fixed(round2(rng.uniform(vmin, vmax)), 2);
  } else if (subtype.name == "Interval Highlight Single Line") {
    double a = round2(rng.uniform(vmin, vmax));
    double b = round2(rng.uniform(vmin, vmax));
    if (a > b) std::swap(a, b);
    spec.extras["interval_low"] = format_fixed(a, 2);
    spec.extras["interval_high"] = format_fixed(b, 2);
  } else if (subtype.name.rfind("Best Value", 0) == 0) {
    spec.extras["best_value"] = format_fixed(vmax, 2);
  } else if (subtype.family == ChartFamily::box) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      std::vector<double> col;
      for (const auto& row : table.values) col.push_back(row[c]);
      double s[5];
      box_stats(col, s);
      std::string v;
      for (int i = 0; i < 5; ++i) v += (i ? "," : "") + format_fixed(s[i], 2);
      spec.extras["box_" + table.entity_names[c]] = v;
    }
  } else if (subtype.family == ChartFamily::combination) {
    spec.extras["bar_series"] = table.legend_labels[0];
    spec.extras["line_series"] = table.legend_labels[1];
  }

  ChartInfo& info = out.info;
  info.chart_id = chart_id;
  info.chart_type = subtype.name;
  info.title = spec.title;
  info.entity_names = table.entity_names;
  info.legend_labels = table.legend_labels;
  info.data = table.values;
  info.colors = spec.style.palette;
  info.x_title = spec.x_title;
  info.y_title = spec.y_title;
  info.table_id = table.table_id;
  info.dsc = spec.extras;
  if (table.sample) {
    const EntitySample& s = *table.sample;
    for (const auto& e : table.entity_names) {
      auto it = s.classes.find(e);
      info.entity_parents.push_back(it == s.classes.end() ? "" : it->second.first);
    }
    info.entity_grandparent = s.grandparent;
    bool legend_from_sample = table.rows() > 1;
    for (const auto& l : table.legend_labels)
      if (!s.classes.count(l)) legend_from_sample = false;
    if (legend_from_sample) {
      for (const auto& l : table.legend_labels) {
        auto it = s.classes.find(l);
        info.legend_parents.push_back(it == s.classes.end() ? "" : it->second.first);
      }
      info.legend_grandparent = s.grandparent;
    }
  }
  return out;
}

std::string ChartSpec::to_json() const {
  nlohmann::ordered_json j;
  j["chart_id"] = chart_id;
  j["subtype"] = subtype.name;
  j["background"] = style.background == Background::dark ? "dark" : "light";
  nlohmann::ordered_json palette = nlohmann::ordered_json::array();
  for (const auto& c : style.palette) palette.push_back({c.name, c.hex});
  j["palette"] = palette;
  j["title"] = title;
  j["x_title"] = x_title;
  j["y_title"] = y_title;
  j["table"] = {{"table_id", table.table_id},
                {"entity_names", table.entity_names},
                {"legend_labels", table.legend_labels},
                {"values", table.values},
                {"source_kind",
                 table.source_kind == SourceKind::random ? "random" : "real_world"},
                {"title_hint", table.title_hint}};
  j["extras"] = extras;
  return j.dump(2) + "\n";
}

ChartSpec ChartSpec::from_json(const std::string& json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("bad chart spec: ") + e.what());
  }
  ChartSpec spec;
  spec.chart_id = j.at("chart_id");
  spec.subtype = subtype_by_name(j.at("subtype"));
  spec.style.background =
      j.at("background") == "dark" ? Background::dark : Background::light;
  for (const auto& c : j.at("palette"))
    spec.style.palette.push_back({c.at(0), c.at(1)});
  spec.title = j.at("title");
  spec.x_title = j.at("x_title");
  spec.y_title = j.at("y_title");
  const auto& t = j.at("table");
  spec.table.table_id = t.at("table_id");
  spec.table.entity_names = t.at("entity_names").get<std::vector<std::string>>();
  spec.table.legend_labels = t.at("legend_labels").get<std::vector<std::string>>();
  spec.table.values = t.at("values").get<std::vector<std::vector<double>>>();
  spec.table.source_kind = t.at("source_kind") == "random" ? SourceKind::random
                                                           : SourceKind::real_world;
  spec.table.title_hint = t.at("title_hint");
  spec.table.validate();
  spec.extras = j.at("extras").get<std::map<std::string, std::string>>();
  return spec;
}

std::string ChartInfo::to_json() const {
  nlohmann::ordered_json j;
  j["chart_id"] = chart_id;
  j["chart_type"] = chart_type;
  j["title"] = title;
  j["entity_names"] = entity_names;
  j["legend_labels"] = legend_labels;
  j["data"] = data;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : colors) cols.push_back({c.name, c.hex});
  j["colors"] = cols;
  j["entity_parents"] = entity_parents;
  j["entity_grandparent"] = entity_grandparent;
  j["legend_parents"] = legend_parents;
  j["legend_grandparent"] = legend_grandparent;
  j["x_title"] = x_title;
  j["y_title"] = y_title;
  j["table_id"] = table_id;
  j["dsc"] = dsc;
  return j.dump();
}

ChartInfo ChartInfo::from_json(const std::string& json) {
  auto j = nlohmann::json::parse(json);
  ChartInfo info;
  info.chart_id = j.at("chart_id");
  info.chart_type = j.at("chart_type");
  info.title = j.at("title");
  info.entity_names = j.at("entity_names").get<std::vector<std::string>>();
  info.legend_labels = j.at("legend_labels").get<std::vector<std::string>>();
  info.data = j.at("data").get<std::vector<std::vector<double>>>();
  for (const auto& c : j.at("colors"))
    info.colors.push_back({c.at(0), c.at(1)});
  info.entity_parents = j.at("entity_parents").get<std::vector<std::string>>();
  info.entity_grandparent = j.at("entity_grandparent");
  info.legend_parents = j.at("legend_parents").get<std::vector<std::string>>();
  info.legend_grandparent = j.at("legend_grandparent");
  info.x_title = j.at("x_title");
  info.y_title = j.at("y_title");
  info.table_id = j.at("table_id");
  info.dsc = j.at("dsc").get<std::map<std::string, std::string>>();
  return info;
}

}  // namespace chartdoc
