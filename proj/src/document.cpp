#include "chartdoc/document.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"

namespace chartdoc {

namespace {

constexpr int kMarginX = 36;
constexpr int kContentTop = 64;
constexpr int kContentBottom = 1059;
constexpr int kGutter = 16;
constexpr int kMinElementH = 40;
constexpr int kElementGap = 10;
constexpr int kCaptionH = 34;
constexpr int kCaptionGap = 4;

const std::array<const char*, 8>& kind_names() {
  static const std::array<const char*, 8> names = {
      "chart_image", "picture", "text", "list",
      "caption",     "page_header", "page_footer", "page_number"};
  return names;
}

}  // namespace

const char* element_kind_name(ElementKind k) {
  return kind_names()[static_cast<std::size_t>(k)];
}

ElementKind parse_element_kind(const std::string& s) {
  for (std::size_t i = 0; i < kind_names().size(); ++i)
    if (s == kind_names()[i]) return static_cast<ElementKind>(i);
  throw InvalidInput("unknown element kind '" + s + "'");
}

void validate_record(const DocumentRecord& rec) {
  auto bad = [&](const std::string& why) {
    throw InvariantViolation("document " + rec.doc_id + ": " + why);
  };
  const DocElement* chart = nullptr;
  const DocElement* caption = nullptr;
  int headers = 0, footers = 0, numbers = 0;
  for (const auto& e : rec.elements) {
    if (e.bbox.x1 >= e.bbox.x2 || e.bbox.y1 >= e.bbox.y2)
      bad("degenerate bounding box");
    if (e.bbox.x1 < 0 || e.bbox.y1 < 0 || e.bbox.x2 > rec.page_width ||
        e.bbox.y2 > rec.page_height)
      bad("bounding box outside page");
    switch (e.kind) {
      case ElementKind::chart_image:
        if (chart) bad("more than one chart");
        chart = &e;
        break;
      case ElementKind::caption:
        if (caption) bad("more than one caption");
        caption = &e;
        break;
      case ElementKind::page_header: ++headers; break;
      case ElementKind::page_footer: ++footers; break;
      case ElementKind::page_number: ++numbers; break;
      default: break;
    }
  }
  if (!chart) bad("no chart");
  if (!caption) bad("no caption");
  if (headers > 1 || footers > 1 || numbers > 1)
    bad("duplicate page furniture");
  if (caption->bbox.x1 != chart->bbox.x1 || caption->bbox.y1 < chart->bbox.y2 ||
      caption->bbox.y1 - chart->bbox.y2 > 2 * kCaptionGap)
    bad("caption is not directly below the chart");
  for (std::size_t i = 0; i < rec.elements.size(); ++i)
    for (std::size_t j = i + 1; j < rec.elements.size(); ++j)
      if (rec.elements[i].bbox.overlaps(rec.elements[j].bbox))
        bad("overlapping elements");
}

std::vector<Placement> fill_column(int x0, int col_w, int y0, int y1,
                                   bool place_chart, int chart_h, Rng& rng) {
  std::vector<Placement> out;
  const int chart_total = chart_h + kCaptionGap + kCaptionH;
  if (place_chart && y1 - y0 < chart_total)
    throw DoesNotFit("chart does not fit a " + std::to_string(y1 - y0) +
                     "px column");
  bool chart_placed = !place_chart;
  int y = y0;
  while (y1 - y >= kMinElementH) {
    int remaining = y1 - y;
    if (!chart_placed) {
      bool must = remaining < chart_total + kElementGap + kMinElementH;
      if (must || rng.chance(0.45)) {
        out.push_back({ElementKind::chart_image,
                       {x0, y, x0 + col_w, y + chart_h}});
        int cy = y + chart_h + kCaptionGap;
        out.push_back({ElementKind::caption, {x0, cy, x0 + col_w, cy + kCaptionH}});
        y = cy + kCaptionH + kElementGap;
        chart_placed = true;
        continue;
      }
    }
    int budget = remaining;
    if (!chart_placed) budget = remaining - chart_total - kElementGap;
    double u = rng.uniform01();
    ElementKind kind;
    int h;
    if (u < 0.60) {
      kind = ElementKind::text;
      h = 60 + static_cast<int>(rng.below(101));
    } else if (u < 0.80) {
      kind = ElementKind::picture;
      h = 80 + static_cast<int>(rng.below(81));
    } else {
      kind = ElementKind::list;
      h = 56 + static_cast<int>(rng.below(85));
    }
    h = std::min(h, budget);
    if (h < kMinElementH) break;
    out.push_back({kind, {x0, y, x0 + col_w, y + h}});
    y += h + kElementGap;
  }
  if (!chart_placed)
    throw DoesNotFit("no slot left for the chart");
  return out;
}

namespace {

const std::vector<std::string>& header_bank() {
  static const std::vector<std::string> v = {
      "Field Survey Bulletin",  "Quarterly Measurement Digest",
      "Annual Data Review",     "Regional Observation Report",
      "Applied Statistics Notes", "Comparative Figures Journal"};
  return v;
}

const std::vector<std::string>& footer_bank() {
  static const std::vector<std::string> v = {
      "Internal circulation only", "Compiled from archived records",
      "All totals subject to revision", "Source: survey archive",
      "Figures rounded to two decimals"};
  return v;
}

std::string pick_label(Rng& rng, const std::vector<std::string>& labels) {
  if (labels.empty()) return "the series";
  return rng.pick(labels);
}

}  // namespace

std::string filler_paragraph(Rng& rng, const std::vector<std::string>& labels) {
  static const std::vector<std::string> openers = {
      "The records collected this period cover several categories.",
      "Field staff compiled the measurements over consecutive sessions.",
      "The tabulated results were checked against the source ledgers.",
      "Observers logged every reading at the stated intervals.",
      "The summary below reflects the most recent consolidation."};
  static const std::vector<std::string> middles = {
      "Totals for % remained close to earlier estimates.",
      "The entry for % drew particular attention during review.",
      "Readings associated with % were verified twice.",
      "Analysts compared % against the running average.",
      "No correction was required for the % figures."};
  static const std::vector<std::string> closers = {
      "Further detail appears in the accompanying figure.",
      "The chart nearby presents the same data graphically.",
      "Interpretation notes are kept with the archive copy.",
      "A follow-up collection round is scheduled.",
      "Any discrepancies should be reported to the compiler."};
  std::string mid = rng.pick(middles);
  std::string label = pick_label(rng, labels);
  mid.replace(mid.find('%'), 1, label);
  return rng.pick(openers) + " " + mid + " " + rng.pick(closers);
}

std::string filler_list(Rng& rng, const std::vector<std::string>& labels) {
  static const std::vector<std::string> stems = {
      "Review the entry for ", "Re-check the total for ",
      "Archive the sheet for ", "Confirm the units for ",
      "Flag the outlier near "};
  int n = 3 + static_cast<int>(rng.below(3));
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += "\n";
    out += "- " + rng.pick(stems) + pick_label(rng, labels) + ".";
  }
  return out;
}

namespace {

SvgElement page_text(double x, double y, const std::string& s, double fs,
                     const std::string& anchor, const std::string& fill) {
  SvgElement t("text");
  t.attr("x", x)
      .attr("y", y)
      .attr("font-family", "sans-serif")
      .attr("font-size", fs)
      .attr("text-anchor", anchor)
      .attr("fill", fill);
  t.text = s;
  return t;
}

std::vector<std::string> wrap_text(const std::string& content, int width_px,
                                   double font_size) {
  std::size_t max_chars =
      std::max<std::size_t>(8, static_cast<std::size_t>(width_px / (0.6 * font_size)));
  std::vector<std::string> lines;
  for (const auto& para : split(content, '\n')) {
    std::string line;
    std::istringstream words(para);
    std::string w;
    while (words >> w) {
      if (!line.empty() && line.size() + 1 + w.size() > max_chars) {
        lines.push_back(line);
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += w;
    }
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void draw_element(SvgDoc& page, const DocElement& e, const SvgDoc& chart) {
  const std::string ink = "#333333";
  switch (e.kind) {
    case ElementKind::chart_image: {
      SvgElement nested("svg");
      nested.attr("x", static_cast<double>(e.bbox.x1))
          .attr("y", static_cast<double>(e.bbox.y1))
          .attr("width", static_cast<double>(e.bbox.w()))
          .attr("height", static_cast<double>(e.bbox.h()))
          .attr("viewBox", "0 0 " + fmt_px(chart.width) + " " + fmt_px(chart.height))
          .attr("preserveAspectRatio", "none");
      SvgElement bg("rect");
      bg.attr("class", "background")
          .attr("x", 0.0)
          .attr("y", 0.0)
          .attr("width", chart.width)
          .attr("height", chart.height)
          .attr("fill", chart.background);
      nested.child(bg);
      for (const auto& c : chart.elements) nested.child(c);
      page.elements.push_back(nested);
      break;
    }
    case ElementKind::picture: {
      SvgElement frame("rect");
      frame.attr("x", static_cast<double>(e.bbox.x1))
          .attr("y", static_cast<double>(e.bbox.y1))
          .attr("width", static_cast<double>(e.bbox.w()))
          .attr("height", static_cast<double>(e.bbox.h()))
          .attr("fill", "#f2f2f2")
          .attr("stroke", "#bbbbbb");
      page.elements.push_back(frame);
      SvgElement img("image");
      img.attr("x", static_cast<double>(e.bbox.x1 + 2))
          .attr("y", static_cast<double>(e.bbox.y1 + 2))
          .attr("width", static_cast<double>(e.bbox.w() - 4))
          .attr("height", static_cast<double>(e.bbox.h() - 4))
          .attr("href", e.payload);
      page.elements.push_back(img);
      break;
    }
    case ElementKind::caption: {
      auto lines = wrap_text(e.content, e.bbox.w(), 10);
      double y = e.bbox.y1 + 13;
      double cx = (e.bbox.x1 + e.bbox.x2) / 2.0;
      for (const auto& l : lines) {
        if (y > e.bbox.y2 - 2) break;
        SvgElement t = page_text(cx, y, l, 10, "middle", "#555555");
        t.attr("font-style", "italic");
        page.elements.push_back(t);
        y += 13;
      }
      break;
    }
    case ElementKind::page_header:
    case ElementKind::page_footer:
    case ElementKind::page_number: {
      double y = (e.bbox.y1 + e.bbox.y2) / 2.0 + 4;
      std::string anchor = e.kind == ElementKind::page_number ? "end" : "start";
      double x = e.kind == ElementKind::page_number
                     ? static_cast<double>(e.bbox.x2)
                     : static_cast<double>(e.bbox.x1);
      page.elements.push_back(page_text(x, y, e.content, 11, anchor, "#444444"));
      break;
    }
    case ElementKind::text:
    case ElementKind::list: {
      auto lines = wrap_text(e.content, e.bbox.w(), 10);
      double y = e.bbox.y1 + 13;
      for (const auto& l : lines) {
        if (y > e.bbox.y2 - 2) break;
        page.elements.push_back(
            page_text(static_cast<double>(e.bbox.x1), y, l, 10, "start", ink));
        y += 14;
      }
      break;
    }
  }
}

}  // namespace

ComposeResult compose_page(const std::string& doc_id, const ChartInfo& info,
                           const SvgDoc& chart, const std::string& table_csv,
                           const std::vector<QaPair>& qa,
                           const std::vector<std::string>& image_pool,
                           Rng& rng) {
  if (image_pool.empty()) throw InvalidInput("image pool is empty");

  DocumentRecord rec;
  rec.doc_id = doc_id;
  rec.chart_id = info.chart_id;
  rec.table_id = info.table_id;
  rec.table_csv = table_csv;
  rec.qa = qa;
  for (const auto& p : qa) rec.question_ids.push_back(p.question_id);

  const int content_w = rec.page_width - 2 * kMarginX;
  std::vector<std::vector<Placement>> columns;
  int cols = 1, col_w = content_w;
  for (int attempt = 0;; ++attempt) {
    cols = 1 + static_cast<int>(rng.below(3));
    col_w = (content_w - kGutter * (cols - 1)) / cols;
    int chart_h = static_cast<int>(col_w * chart.height / chart.width + 0.5);
    int chart_col = static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)));
    columns.clear();
    try {
      for (int c = 0; c < cols; ++c) {
        int x0 = kMarginX + c * (col_w + kGutter);
        columns.push_back(fill_column(x0, col_w, kContentTop, kContentBottom,
                                      c == chart_col, chart_h, rng));
      }
      break;
    } catch (const DoesNotFit&) {
      if (attempt >= 7) throw;
    }
  }
  rec.column_count = cols;

  std::vector<std::string> labels = info.entity_names;

  DocElement header;
  header.kind = ElementKind::page_header;
  header.bbox = {kMarginX, 18, rec.page_width - kMarginX, 42};
  header.content = rng.pick(header_bank());
  rec.elements.push_back(header);

  for (const auto& col : columns) {
    for (const auto& p : col) {
      DocElement e;
      e.kind = p.kind;
      e.bbox = p.bbox;
      switch (p.kind) {
        case ElementKind::chart_image: e.payload = info.chart_id; break;
        case ElementKind::caption:
          e.content = "Figure 1. " + info.title + ".";
          break;
        case ElementKind::picture:
          e.payload = image_pool[rng.below(image_pool.size())];
          break;
        case ElementKind::text: e.content = filler_paragraph(rng, labels); break;
        case ElementKind::list: e.content = filler_list(rng, labels); break;
        default: break;
      }
      rec.elements.push_back(e);
    }
  }

  DocElement footer;
  footer.kind = ElementKind::page_footer;
  footer.bbox = {kMarginX, 1086, rec.page_width - kMarginX - 90, 1108};
  footer.content = rng.pick(footer_bank());
  rec.elements.push_back(footer);

  DocElement number;
  number.kind = ElementKind::page_number;
  number.bbox = {rec.page_width - kMarginX - 80, 1086, rec.page_width - kMarginX,
                 1108};
  number.content = std::to_string(1 + rng.below(48));
  rec.elements.push_back(number);

  validate_record(rec);

  SvgDoc page;
  page.width = rec.page_width;
  page.height = rec.page_height;
  page.background = "#ffffff";
  for (const auto& e : rec.elements) draw_element(page, e, chart);
  SvgElement rule("line");
  rule.attr("x1", static_cast<double>(kMarginX))
      .attr("y1", 46.0)
      .attr("x2", static_cast<double>(rec.page_width - kMarginX))
      .attr("y2", 46.0)
      .attr("stroke", "#999999");
  page.elements.push_back(rule);

  return {std::move(rec), std::move(page)};
}

// ---------------------------------------------------------------------------
// annotation XML

namespace {

void tag_line(std::string& out, int indent, const std::string& tag,
              const std::string& value) {
  out.append(indent, ' ');
  out += "<" + tag + ">" + xml_escape(value) + "</" + tag + ">\n";
}

struct XmlCursor {
  const std::string* xml;
  std::size_t pos = 0;

  // Inner text of the next <tag>...</tag>; advances past it.
  std::string take(const std::string& tag) {
    std::string open = "<" + tag + ">", close = "</" + tag + ">";
    std::size_t a = xml->find(open, pos);
    if (a == std::string::npos)
      throw InvalidInput("annotation: missing <" + tag + ">");
    a += open.size();
    std::size_t b = xml->find(close, a);
    if (b == std::string::npos)
      throw InvalidInput("annotation: unterminated <" + tag + ">");
    pos = b + close.size();
    return xml_unescape(xml->substr(a, b - a));
  }
  bool peek(const std::string& tag, std::size_t before) {
    std::size_t a = xml->find("<" + tag + ">", pos);
    return a != std::string::npos && a < before;
  }
  std::size_t find(const std::string& tag) {
    std::size_t a = xml->find("<" + tag, pos);
    if (a == std::string::npos)
      throw InvalidInput("annotation: missing <" + tag + ">");
    return a;
  }
};

}  // namespace

std::string write_annotation(const DocumentRecord& doc) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<document>\n";
  tag_line(out, 2, "doc_id", doc.doc_id);
  tag_line(out, 2, "page_width", std::to_string(doc.page_width));
  tag_line(out, 2, "page_height", std::to_string(doc.page_height));
  tag_line(out, 2, "column_count", std::to_string(doc.column_count));
  tag_line(out, 2, "chart_id", doc.chart_id);
  tag_line(out, 2, "table_id", doc.table_id);
  tag_line(out, 2, "table", doc.table_csv);
  out += "  <qa>\n";
  for (const auto& p : doc.qa) {
    out += "    <pair>\n";
    tag_line(out, 6, "question_id", p.question_id);
    tag_line(out, 6, "question", p.question);
    tag_line(out, 6, "answer", p.answer);
    out += "    </pair>\n";
  }
  out += "  </qa>\n";
  out += "  <objects>\n";
  for (const auto& e : doc.elements) {
    out += "    <object>\n";
    tag_line(out, 6, "name", element_kind_name(e.kind));
    tag_line(out, 6, "boundingbox",
             std::to_string(e.bbox.x1) + " " + std::to_string(e.bbox.y1) + " " +
                 std::to_string(e.bbox.x2) + " " + std::to_string(e.bbox.y2));
    tag_line(out, 6, "content", e.content);
    tag_line(out, 6, "payload", e.payload);
    out += "    </object>\n";
  }
  out += "  </objects>\n";
  out += "</document>\n";
  return out;
}

DocumentRecord parse_annotation(const std::string& xml) {
  DocumentRecord doc;
  XmlCursor c{&xml};
  if (xml.rfind("<?xml", 0) != 0)
    throw InvalidInput("annotation: missing XML declaration");
  c.find("document");
  doc.doc_id = c.take("doc_id");
  doc.page_width = std::stoi(c.take("page_width"));
  doc.page_height = std::stoi(c.take("page_height"));
  doc.column_count = std::stoi(c.take("column_count"));
  doc.chart_id = c.take("chart_id");
  doc.table_id = c.take("table_id");
  doc.table_csv = c.take("table");
  std::size_t qa_end = c.find("/qa");
  while (c.peek("pair", qa_end)) {
    QaPair p;
    p.question_id = c.take("question_id");
    p.question = c.take("question");
    p.answer = c.take("answer");
    doc.qa.push_back(p);
    doc.question_ids.push_back(p.question_id);
  }
  c.pos = qa_end;
  std::size_t objects_end = xml.find("</objects>", c.pos);
  if (objects_end == std::string::npos)
    throw InvalidInput("annotation: missing </objects>");
  while (c.peek("object", objects_end)) {
    DocElement e;
    e.kind = parse_element_kind(c.take("name"));
    std::istringstream box(c.take("boundingbox"));
    if (!(box >> e.bbox.x1 >> e.bbox.y1 >> e.bbox.x2 >> e.bbox.y2))
      throw InvalidInput("annotation: boundingbox needs four integers");
    e.content = c.take("content");
    e.payload = c.take("payload");
    doc.elements.push_back(std::move(e));
  }
  return doc;
}

void validate_annotation(const std::string& xml) {
  DocumentRecord doc = parse_annotation(xml);
  if (doc.doc_id.empty()) throw InvalidInput("annotation: empty doc_id");
  if (doc.column_count < 1 || doc.column_count > 3)
    throw InvalidInput("annotation: column_count out of range");
  for (const auto& e : doc.elements) {
    if ((e.kind == ElementKind::picture || e.kind == ElementKind::chart_image) &&
        !e.content.empty())
      throw InvalidInput("annotation: graphical element with content");
  }
  try {
    validate_record(doc);
  } catch (const InvariantViolation& e) {
    throw InvalidInput(std::string("annotation: ") + e.what());
  }
}

}  // namespace chartdoc
