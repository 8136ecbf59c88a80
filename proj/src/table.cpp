#include "chartdoc/table.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"

namespace chartdoc {

void DataTable::validate() const {
  if (values.size() != rows())
    throw InvalidShape("row count mismatch in table " + table_id);
  for (const auto& row : values)
    if (row.size() != cols())
      throw InvalidShape("column count mismatch in table " + table_id);
  std::set<std::string> seen;
  for (const auto& e : entity_names)
    if (!seen.insert(e).second) throw DuplicateLabel("duplicate entity '" + e + "'");
  seen.clear();
  for (const auto& l : legend_labels)
    if (!seen.insert(l).second) throw DuplicateLabel("duplicate legend '" + l + "'");
}

std::string DataTable::to_csv() const {
  std::ostringstream out;
  out << (title_hint.empty() ? "label" : title_hint);
  for (const auto& e : entity_names) out << ',' << e;
  out << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    out << legend_labels[r];
    for (double v : values[r]) out << ',' << format_fixed(v, 2);
    out << '\n';
  }
  return out.str();
}

std::string mint_table_id(const DataTable& t) {
  return "T_" + hex8(fnv1a64(t.to_csv()));
}

DataTable random_table(int rows, int cols, const EntitySample& sample, Rng& rng) {
  if (rows < 1 || cols < 1) throw InvalidShape("table shape must be >= 1x1");
  std::size_t need = static_cast<std::size_t>(cols) + (rows > 1 ? rows : 0);
  if (sample.entities.size() < need)
    throw InsufficientEntities("sample supplies " +
                               std::to_string(sample.entities.size()) +
                               " names, need " + std::to_string(need));
  DataTable t;
  t.source_kind = SourceKind::random;
  t.sample = sample;
  t.entity_names.assign(sample.entities.begin(), sample.entities.begin() + cols);
  if (rows == 1) {
    t.legend_labels = {sample.grandparent};
  } else {
    t.legend_labels.assign(sample.entities.begin() + cols,
                           sample.entities.begin() + cols + rows);
  }
  t.values.resize(rows);
  for (auto& row : t.values) {
    row.resize(cols);
    for (auto& v : row) v = round2(rng.uniform(1.0, 200.0));
  }
  t.table_id = mint_table_id(t);
  t.validate();
  return t;
}

DataTable ingest_csv(const std::string& content) {
  DataTable t;
  t.source_kind = SourceKind::real_world;
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    if (t.entity_names.empty() && lineno == 1) {
      if (cells.size() < 2) throw ParseError(1, 1, "header needs at least one entity");
      t.title_hint = trim(cells[0]);
      for (std::size_t i = 1; i < cells.size(); ++i) {
        std::string name = trim(cells[i]);
        if (name.empty()) throw ParseError(1, i + 1, "empty entity name");
        t.entity_names.push_back(std::move(name));
      }
      continue;
    }
    if (cells.size() != t.entity_names.size() + 1)
      throw ParseError(lineno, cells.size(), "ragged row");
    t.legend_labels.push_back(trim(cells[0]));
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      auto v = parse_number(cells[i]);
      if (!v) throw ParseError(lineno, i + 1, "non-numeric cell '" + trim(cells[i]) + "'");
      row.push_back(*v);
    }
    t.values.push_back(std::move(row));
  }
  if (t.entity_names.empty() || t.values.empty())
    throw ParseError(lineno, 1, "empty table");
  t.table_id = mint_table_id(t);
  t.validate();
  return t;
}

DataTable ingest_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open CSV: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ingest_csv(buf.str());
}

DataTable trim_table(const DataTable& t, int rows, int cols, Rng& rng) {
  if (rows > static_cast<int>(t.rows()) || cols > static_cast<int>(t.cols()))
    throw InvalidShape("sub-block larger than table " + t.table_id);
  int r0 = rng.range_int(0, static_cast<int>(t.rows()) - rows);
  int c0 = rng.range_int(0, static_cast<int>(t.cols()) - cols);
  DataTable out;
  out.source_kind = t.source_kind;
  out.title_hint = t.title_hint;
  out.entity_names.assign(t.entity_names.begin() + c0,
                          t.entity_names.begin() + c0 + cols);
  out.legend_labels.assign(t.legend_labels.begin() + r0,
                           t.legend_labels.begin() + r0 + rows);
  for (int r = 0; r < rows; ++r)
    out.values.emplace_back(t.values[r0 + r].begin() + c0,
                            t.values[r0 + r].begin() + c0 + cols);
  out.table_id = mint_table_id(out);
  out.validate();
  return out;
}

DataTable pick_table(const std::vector<DataTable>& real_pool,
                     const EntityHierarchy& hierarchy, Rng& rng,
                     const TableShapeConfig& cfg) {
  bool go_random = real_pool.empty() || rng.chance(cfg.random_prob);
  if (!go_random) {
    const DataTable& base = real_pool[rng.below(real_pool.size())];
    if (static_cast<int>(base.rows()) >= cfg.min_legends &&
        static_cast<int>(base.cols()) >= cfg.min_entities) {
      int rows = rng.range_int(cfg.min_legends,
                               std::min<int>(cfg.max_legends, static_cast<int>(base.rows())));
      int cols = rng.range_int(cfg.min_entities,
                               std::min<int>(cfg.max_entities, static_cast<int>(base.cols())));
      return trim_table(base, rows, cols, rng);
    }
    // pool table too small for the configured shape; fall through to random
  }
  int rows = rng.range_int(cfg.min_legends, cfg.max_legends);
  int cols = rng.range_int(cfg.min_entities, cfg.max_entities);
  // Grow the sample until it can label the table.
  std::size_t need = static_cast<std::size_t>(cols) + (rows > 1 ? rows : 0);
  for (int kp = 2; kp <= 8; ++kp) {
    for (int kc = 2; kc <= 8; ++kc) {
      if (static_cast<std::size_t>(kp) * kc < need) continue;
      try {
        EntitySample s = hierarchy.sample_entities(rng, kp, kc);
        return random_table(rows, cols, s, rng);
      } catch (const InsufficientEntities&) {
        // try a larger shape
      }
    }
  }
  throw InsufficientEntities("hierarchy cannot label a " + std::to_string(rows) +
                             "x" + std::to_string(cols) + " table");
}

}  // namespace chartdoc
