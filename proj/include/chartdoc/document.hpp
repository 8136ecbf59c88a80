#pragma once

#include <string>
#include <vector>

#include "chartdoc/chart.hpp"
#include "chartdoc/rng.hpp"
#include "chartdoc/svg.hpp"

namespace chartdoc {

enum class ElementKind {
  chart_image,
  picture,
  text,
  list,
  caption,
  page_header,
  page_footer,
  page_number
};

const char* element_kind_name(ElementKind k);
ElementKind parse_element_kind(const std::string& s);

struct BBox {
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  int w() const { return x2 - x1; }
  int h() const { return y2 - y1; }
  bool overlaps(const BBox& o) const {
    return x1 < o.x2 && o.x1 < x2 && y1 < o.y2 && o.y1 < y2;
  }
};

struct DocElement {
  ElementKind kind = ElementKind::text;
  BBox bbox;
  std::string content;  // empty for non-textual kinds
  std::string payload;  // image-pool path for pictures; chart id for charts
};

struct QaPair {
  std::string question_id;
  std::string question;
  std::string answer;
};

struct DocumentRecord {
  std::string doc_id;
  int page_width = 794;   // A4 at 96 dpi
  int page_height = 1123;
  int column_count = 1;
  std::vector<DocElement> elements;
  std::string chart_id;
  std::string table_id;
  std::vector<std::string> question_ids;
  std::string table_csv;
  std::vector<QaPair> qa;
};

// Throws InvariantViolation when a DocumentRecord invariant fails (one
// chart, adjacent caption below it, boxes in bounds, per-column
// non-overlap).
void validate_record(const DocumentRecord& rec);

struct Placement {
  ElementKind kind;
  BBox bbox;
};

// Fills [y0, y1) of a column at x0 with randomly sized elements top-down.
// When place_chart is true the chart (plus its caption) is guaranteed a
// slot; chart_h excludes the caption. Residual gaps below the minimum
// element height stay whitespace.
std::vector<Placement> fill_column(int x0, int col_w, int y0, int y1,
                                   bool place_chart, int chart_h, Rng& rng);

struct ComposeResult {
  DocumentRecord record;
  SvgDoc page;
};

// Lays the chart, filler text/pictures/lists, caption, header, footer, and
// page number onto a 1-3 column page; every element's box is recorded.
ComposeResult compose_page(const std::string& doc_id, const ChartInfo& info,
                           const SvgDoc& chart, const std::string& table_csv,
                           const std::vector<QaPair>& qa,
                           const std::vector<std::string>& image_pool,
                           Rng& rng);

// Canonical, byte-stable annotation XML; parse() is its exact inverse.
std::string write_annotation(const DocumentRecord& doc);
DocumentRecord parse_annotation(const std::string& xml);

// Structural validation against the shipped schema; throws InvalidInput
// with the first violation.
void validate_annotation(const std::string& xml);

// Deterministic filler prose that weaves in the chart's labels.
std::string filler_paragraph(Rng& rng, const std::vector<std::string>& labels);
std::string filler_list(Rng& rng, const std::vector<std::string>& labels);

}  // namespace chartdoc
