#include "chartdoc/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"

namespace chartdoc {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Monospace-width approximation; avoids font-metric nondeterminism.
double text_w(const std::string& s, double font_size) {
  return 0.6 * font_size * static_cast<double>(s.size());
}

struct Theme {
  std::string text;
  std::string axis;
  std::string bg;
  std::string band;
};

Theme theme_for(Background b) {
  if (b == Background::dark) return {"#e8e8e8", "#c0c0c0", "#1e1e1e", "#3a3a5a"};
  return {"#333333", "#555555", "#ffffff", "#dce8f5"};
}

bool is_polar(const std::string& n) {
  return n.rfind("Polar", 0) == 0;
}
bool is_stacked(const std::string& n) {
  return n.find("Stack") != std::string::npos;
}
bool is_grouped(const std::string& n) {
  return n.find("Group") != std::string::npos;
}

bool has_legend_box(const ChartSpec& spec) {
  return spec.table.rows() >= 2 && spec.subtype.family != ChartFamily::box;
}

RenderOptions effective(const ChartSpec& spec, const RenderOptions& opts) {
  // One deterministic auto-grow when category labels cannot fit.
  auto fits = [&](const RenderOptions& o) {
    if (spec.subtype.family == ChartFamily::pie || is_polar(spec.subtype.name))
      return true;
    double plot_w = o.width - 100 - 25;
    double plot_h = o.height - 120;
    std::size_t n = spec.table.cols();
    double max_lab = 0;
    for (const auto& e : spec.table.entity_names)
      max_lab = std::max(max_lab, text_w(e, 10));
    if (subtype_orientation(spec.subtype.name) == "horizontal")
      return plot_h / static_cast<double>(n) >= 14.0;
    return plot_w / static_cast<double>(n) >= max_lab + 6.0;
  };
  if (fits(opts)) return opts;
  RenderOptions grown = opts;
  grown.width *= 1.75;
  grown.height *= 1.3;
  if (fits(grown)) return grown;
  throw RenderOverflow("labels do not fit a " + std::to_string(grown.width) +
                       "px canvas for chart " + spec.chart_id);
}

}  // namespace

PlotRect plot_rect(const ChartSpec& spec, const RenderOptions& opts_in) {
  RenderOptions opts = effective(spec, opts_in);
  double top = has_legend_box(spec) ? 72 : 52;
  PlotRect pr{100, top, opts.width - 25, opts.height - 60};
  if (spec.subtype.family == ChartFamily::pie || is_polar(spec.subtype.name)) {
    // centered square region
    double side = std::min(pr.w(), pr.h());
    double cx = (pr.x0 + pr.x1) / 2, cy = (pr.y0 + pr.y1) / 2;
    pr = {cx - side / 2, cy - side / 2, cx + side / 2, cy + side / 2};
  }
  return pr;
}

std::vector<double> nice_ticks(double lo, double hi) {
  if (hi <= lo) hi = lo + 1;
  double range = hi - lo;
  double step = 1e-6;
  static const double mults[] = {1, 2, 5};
  for (int e = -6; e <= 12; ++e) {
    for (double m : mults) {
      double s = m * std::pow(10.0, e);
      double lo_al = std::floor(lo / s) * s;
      double hi_al = std::ceil(hi / s) * s;
      long count = std::lround((hi_al - lo_al) / s) + 1;
      if (count <= 8) {
        step = s;
        goto done;
      }
    }
  }
done:
  double lo_al = std::floor(lo / step) * step;
  double hi_al = std::ceil(hi / step) * step;
  std::vector<double> ticks;
  long n = std::lround((hi_al - lo_al) / step);
  for (long i = 0; i <= n; ++i) ticks.push_back(lo_al + step * static_cast<double>(i));
  return ticks;
}

std::pair<double, double> value_domain(const ChartSpec& spec) {
  const auto& vals = spec.table.values;
  double vmin = vals[0][0], vmax = vals[0][0];
  const std::string& n = spec.subtype.name;
  if (is_stacked(n)) {
    vmin = 0;
    vmax = 0;
    for (std::size_t c = 0; c < spec.table.cols(); ++c) {
      double s = 0;
      for (const auto& row : vals) s += row[c];
      vmax = std::max(vmax, s);
    }
  } else if (n == "Waterfall Bar") {
    double cum = 0;
    vmin = 0;
    vmax = 0;
    for (double v : vals[0]) {
      cum += v;
      vmax = std::max(vmax, cum);
      vmin = std::min(vmin, cum);
    }
  } else {
    for (const auto& row : vals)
      for (double v : row) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
  }
  vmin = std::min(0.0, vmin);
  auto ticks = nice_ticks(vmin, vmax);
  return {ticks.front(), ticks.back()};
}

AxisScale value_scale(const ChartSpec& spec, const RenderOptions& opts) {
  PlotRect pr = plot_rect(spec, opts);
  auto [lo, hi] = value_domain(spec);
  AxisScale s;
  s.dmin = lo;
  s.dmax = hi;
  if (is_polar(spec.subtype.name)) {
    double R = std::min(pr.w(), pr.h()) / 2 - 14;
    s.plo = 22;  // inner radius
    s.phi = R;
  } else if (subtype_orientation(spec.subtype.name) == "horizontal") {
    s.plo = pr.x0;
    s.phi = pr.x1;
  } else {
    s.plo = pr.y1;
    s.phi = pr.y0;
  }
  return s;
}

namespace {

struct Ctx {
  const ChartSpec& spec;
  RenderOptions opts;
  PlotRect pr;
  Theme th;
  SvgDoc* doc;

  const DataTable& table() const { return spec.table; }
  std::size_t n() const { return spec.table.cols(); }
  std::size_t rows() const { return spec.table.rows(); }
  bool horizontal() const {
    return subtype_orientation(spec.subtype.name) == "horizontal";
  }
  double band() const {
    double extent = horizontal() ? pr.h() : pr.w();
    return extent / static_cast<double>(n());
  }
  double center(std::size_t i) const {
    double b = band();
    return (horizontal() ? pr.y0 : pr.x0) + (static_cast<double>(i) + 0.5) * b;
  }
  const std::string& series_color(std::size_t s) const {
    return spec.style.palette[s % spec.style.palette.size()].hex;
  }
};

SvgElement text_el(double x, double y, const std::string& s, double fs,
                   const std::string& anchor, const std::string& fill,
                   const std::string& cls) {
  SvgElement t("text");
  t.attr("class", cls)
      .attr("x", x)
      .attr("y", y)
      .attr("font-family", "sans-serif")
      .attr("font-size", fs)
      .attr("text-anchor", anchor)
      .attr("fill", fill);
  t.text = s;
  return t;
}

SvgElement line_el(double x1, double y1, double x2, double y2,
                   const std::string& stroke, const std::string& cls) {
  SvgElement l("line");
  l.attr("class", cls)
      .attr("x1", x1)
      .attr("y1", y1)
      .attr("x2", x2)
      .attr("y2", y2)
      .attr("stroke", stroke);
  return l;
}

void draw_value_axis(Ctx& c, const AxisScale& s) {
  auto ticks = nice_ticks(s.dmin, s.dmax);
  if (c.horizontal()) {
    c.doc->elements.push_back(
        line_el(c.pr.x0, c.pr.y1, c.pr.x1, c.pr.y1, c.th.axis, "axis"));
    for (double t : ticks) {
      double x = s.to_px(t);
      c.doc->elements.push_back(line_el(x, c.pr.y1, x, c.pr.y1 + 5, c.th.axis, "tick"));
      c.doc->elements.push_back(
          text_el(x, c.pr.y1 + 17, format_number(t), 11, "middle", c.th.text, "tick-label"));
    }
  } else {
    c.doc->elements.push_back(
        line_el(c.pr.x0, c.pr.y0, c.pr.x0, c.pr.y1, c.th.axis, "axis"));
    for (double t : ticks) {
      double y = s.to_px(t);
      c.doc->elements.push_back(line_el(c.pr.x0 - 5, y, c.pr.x0, y, c.th.axis, "tick"));
      c.doc->elements.push_back(
          text_el(c.pr.x0 - 8, y + 4, format_number(t), 11, "end", c.th.text, "tick-label"));
    }
  }
}

void draw_category_axis(Ctx& c) {
  if (c.horizontal()) {
    c.doc->elements.push_back(
        line_el(c.pr.x0, c.pr.y0, c.pr.x0, c.pr.y1, c.th.axis, "axis"));
    for (std::size_t i = 0; i < c.n(); ++i)
      c.doc->elements.push_back(text_el(c.pr.x0 - 8, c.center(i) + 4,
                                        c.table().entity_names[i], 10, "end",
                                        c.th.text, "cat-label"));
  } else {
    c.doc->elements.push_back(
        line_el(c.pr.x0, c.pr.y1, c.pr.x1, c.pr.y1, c.th.axis, "axis"));
    for (std::size_t i = 0; i < c.n(); ++i)
      c.doc->elements.push_back(text_el(c.center(i), c.pr.y1 + 16,
                                        c.table().entity_names[i], 10, "middle",
                                        c.th.text, "cat-label"));
  }
}

void draw_axis_titles(Ctx& c) {
  if (!c.spec.x_title.empty())
    c.doc->elements.push_back(text_el((c.pr.x0 + c.pr.x1) / 2, c.opts.height - 14,
                                      c.spec.x_title, 12, "middle", c.th.text,
                                      "axis-title"));
  if (!c.spec.y_title.empty()) {
    SvgElement t = text_el(0, 0, c.spec.y_title, 12, "middle", c.th.text, "axis-title");
    double x = 22, y = (c.pr.y0 + c.pr.y1) / 2;
    t.attr("transform", "rotate(-90 " + fmt_px(x) + " " + fmt_px(y) + ")");
    // reposition via x/y attrs after transform anchor
    t.attrs[1].second = fmt_px(x);
    t.attrs[2].second = fmt_px(y);
    c.doc->elements.push_back(t);
  }
}

void draw_legend(Ctx& c) {
  if (!has_legend_box(c.spec)) return;
  const auto& labels = c.table().legend_labels;
  double total = 0;
  for (const auto& l : labels) total += text_w(l, 11) + 26;
  double x = c.spec.style.background == Background::dark
                 ? c.pr.x0
                 : c.opts.width - 25 - total;
  double y = 44;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    SvgElement sw("rect");
    sw.attr("class", "legend-swatch")
        .attr("x", x)
        .attr("y", y)
        .attr("width", 11.0)
        .attr("height", 11.0)
        .attr("fill", c.series_color(s));
    c.doc->elements.push_back(sw);
    c.doc->elements.push_back(
        text_el(x + 15, y + 10, labels[s], 11, "start", c.th.text, "legend-label"));
    x += text_w(labels[s], 11) + 26;
  }
}

SvgElement bar_rect(double x, double y, double w, double h,
                    const std::string& fill) {
  SvgElement r("rect");
  r.attr("class", "mark bar")
      .attr("x", x)
      .attr("y", y)
      .attr("width", w)
      .attr("height", h)
      .attr("fill", fill);
  return r;
}

void value_label(Ctx& c, double x, double y, double v,
                 const std::string& anchor = "middle") {
  c.doc->elements.push_back(
      text_el(x, y, format_fixed(v, 2), 10, anchor, c.th.text, "vlabel"));
}

void render_cartesian_bar(Ctx& c, const AxisScale& s) {
  const auto& vals = c.table().values;
  const std::string& name = c.spec.subtype.name;
  double band = c.band();
  if (name == "Waterfall Bar") {
    double cum = 0;
    for (std::size_t i = 0; i < c.n(); ++i) {
      double v = vals[0][i];
      double len = s.span_px(v);
      double w = band * 0.6;
      double x = c.center(i) - w / 2;
      double y = s.to_px(cum + v);
      c.doc->elements.push_back(bar_rect(x, y, w, len, c.series_color(0)));
      value_label(c, c.center(i), y - 4, v);
      cum += v;
    }
    return;
  }
  if (is_stacked(name)) {
    for (std::size_t i = 0; i < c.n(); ++i) {
      double cum = 0;
      for (std::size_t r = 0; r < c.rows(); ++r) {
        double v = vals[r][i];
        double len = s.span_px(v);
        if (c.horizontal()) {
          double x = s.to_px(cum);
          double y = c.center(i) - band * 0.3;
          c.doc->elements.push_back(
              bar_rect(x, y, len, band * 0.6, c.series_color(r)));
          value_label(c, x + len / 2, c.center(i) + 3, v);
        } else {
          double y = s.to_px(cum + v);
          double x = c.center(i) - band * 0.3;
          c.doc->elements.push_back(
              bar_rect(x, y, band * 0.6, len, c.series_color(r)));
          value_label(c, c.center(i), y + std::min(len / 2 + 3, len - 1), v);
        }
        cum += v;
      }
    }
    return;
  }
  std::size_t groups = is_grouped(name) ? c.rows() : 1;
  double slot = band * 0.7 / static_cast<double>(groups);
  for (std::size_t i = 0; i < c.n(); ++i) {
    for (std::size_t r = 0; r < c.rows(); ++r) {
      double v = vals[r][i];
      double len = s.span_px(v);
      double off = (static_cast<double>(r) - static_cast<double>(c.rows() - 1) / 2.0) *
                   (groups > 1 ? slot : 0);
      if (c.horizontal()) {
        double y = c.center(i) + off - slot / 2;
        c.doc->elements.push_back(
            bar_rect(s.to_px(0), y, len, slot, c.series_color(r)));
        value_label(c, s.to_px(0) + len + 4, y + slot / 2 + 3, v, "start");
      } else {
        double x = c.center(i) + off - slot / 2;
        c.doc->elements.push_back(
            bar_rect(x, s.to_px(v), slot, len, c.series_color(r)));
        value_label(c, x + slot / 2, s.to_px(v) - 4, v);
      }
    }
  }
}

void render_polar_bar(Ctx& c, const AxisScale& s) {
  const auto& vals = c.table().values;
  const std::string& name = c.spec.subtype.name;
  double cx = (c.pr.x0 + c.pr.x1) / 2;
  double cy = (c.pr.y0 + c.pr.y1) / 2;
  bool half = name.find("Horizontal") != std::string::npos;
  double span = half ? 180.0 : 360.0;
  double bw = 14;
  // radial axis with tick labels, drawn upward from the center
  c.doc->elements.push_back(line_el(cx, cy - s.plo, cx, cy - s.phi, c.th.axis, "axis"));
  for (double t : nice_ticks(s.dmin, s.dmax)) {
    double r = s.to_px(t);
    c.doc->elements.push_back(line_el(cx - 3, cy - r, cx + 3, cy - r, c.th.axis, "tick"));
    c.doc->elements.push_back(
        text_el(cx - 6, cy - r + 3, format_number(t), 9, "end", c.th.text, "tick-label"));
  }
  for (std::size_t i = 0; i < c.n(); ++i) {
    double frac = c.n() > 1 ? static_cast<double>(i) / (half ? c.n() - 1 : c.n()) : 0;
    double angle = span * frac + (half ? -90.0 : 0.0);
    std::string rot = "rotate(" + fmt_px(angle) + " " + fmt_px(cx) + " " +
                      fmt_px(cy) + ")";
    double cum = 0;
    for (std::size_t r = 0; r < (is_stacked(name) ? c.rows() : 1); ++r) {
      double v = vals[r][i];
      double len = s.span_px(v);
      double inner = s.plo + s.span_px(cum);
      SvgElement rect = bar_rect(cx - bw / 2, cy - inner - len, bw, len,
                                 c.series_color(r));
      rect.attr("transform", rot);
      c.doc->elements.push_back(rect);
      cum += v;
    }
    SvgElement lab = text_el(cx, cy - s.phi - 6, c.table().entity_names[i], 9,
                             "middle", c.th.text, "cat-label");
    lab.attr("transform", rot);
    c.doc->elements.push_back(lab);
  }
}

void render_line(Ctx& c, const AxisScale& s) {
  const auto& vals = c.table().values;
  const std::string& name = c.spec.subtype.name;
  bool smooth = name == "Smooth Single Line";

  if (name == "Interval Highlight Single Line") {
    double lo = *parse_number(c.spec.extras.at("interval_low"));
    double hi = *parse_number(c.spec.extras.at("interval_high"));
    SvgElement band("rect");
    band.attr("class", "annot interval-band")
        .attr("x", c.pr.x0)
        .attr("y", s.to_px(hi))
        .attr("width", c.pr.w())
        .attr("height", s.to_px(lo) - s.to_px(hi))
        .attr("fill", c.th.band)
        .attr("opacity", "0.5");
    c.doc->elements.push_back(band);
  }

  for (std::size_t r = 0; r < c.rows(); ++r) {
    std::ostringstream d;
    for (std::size_t i = 0; i < c.n(); ++i) {
      double x = c.center(i), y = s.to_px(vals[r][i]);
      if (i == 0) {
        d << "M " << fmt_px(x) << ' ' << fmt_px(y);
      } else if (smooth) {
        double px = c.center(i - 1), py = s.to_px(vals[r][i - 1]);
        double mx = (px + x) / 2;
        d << " Q " << fmt_px(mx) << ' ' << fmt_px(py) << ' ' << fmt_px((mx + x) / 2)
          << ' ' << fmt_px((py + y) / 2) << " T " << fmt_px(x) << ' ' << fmt_px(y);
      } else {
        d << " L " << fmt_px(x) << ' ' << fmt_px(y);
      }
    }
    SvgElement path("path");
    path.attr("class", "mark line-series")
        .attr("d", d.str())
        .attr("fill", "none")
        .attr("stroke", c.series_color(r))
        .attr("stroke-width", "2");
    c.doc->elements.push_back(path);
    for (std::size_t i = 0; i < c.n(); ++i)
      value_label(c, c.center(i), s.to_px(vals[r][i]) - 6, vals[r][i]);
  }

  if (name == "Marker Single Line") {
    double mv = *parse_number(c.spec.extras.at("marker_value"));
    double y = s.to_px(mv);
    SvgElement ml = line_el(c.pr.x0, y, c.pr.x1, y, c.th.axis, "annot marker-line");
    ml.attr("stroke-dasharray", "6 4");
    c.doc->elements.push_back(ml);
    c.doc->elements.push_back(
        text_el(c.pr.x1 - 4, y - 5, format_fixed(mv, 2), 10, "end", c.th.text, "annot-label"));
  }
  if (name.rfind("Best Value", 0) == 0) {
    double best = *parse_number(c.spec.extras.at("best_value"));
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t i = 0; i < c.n(); ++i)
        if (vals[r][i] == best) {
          SvgElement ring("circle");
          ring.attr("class", "annot best-ring")
              .attr("cx", c.center(i))
              .attr("cy", s.to_px(best))
              .attr("r", 8.0)
              .attr("fill", "none")
              .attr("stroke", c.series_color(r))
              .attr("stroke-width", "2");
          c.doc->elements.push_back(ring);
        }
  }
}

void render_scatter(Ctx& c, const AxisScale& s) {
  const auto& vals = c.table().values;
  const std::string& name = c.spec.subtype.name;
  bool bubble = name == "Bubble Scatter" || name == "Check Bubble Scatter";
  double vmax = vals[0][0];
  for (const auto& row : vals)
    for (double v : row) vmax = std::max(vmax, v);
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t i = 0; i < c.n(); ++i) {
      double v = vals[r][i];
      double radius = bubble ? 4 + 12 * v / vmax : 4;
      SvgElement dot("circle");
      dot.attr("class", "mark point")
          .attr("cx", c.center(i))
          .attr("cy", s.to_px(v))
          .attr("r", radius)
          .attr("fill", c.series_color(r));
      if (name == "Check Bubble Scatter") {
        dot.attr("fill", "none").attr("stroke", c.series_color(r)).attr("stroke-width", "2");
      }
      c.doc->elements.push_back(dot);
      value_label(c, c.center(i), s.to_px(v) - radius - 4, v);
    }
  }
}

void render_box(Ctx& c, const AxisScale& s) {
  double band = c.band();
  double bw = std::min(40.0, band * 0.5);
  for (std::size_t i = 0; i < c.n(); ++i) {
    auto it = c.spec.extras.find("box_" + c.table().entity_names[i]);
    if (it == c.spec.extras.end()) continue;
    auto parts = split(it->second, ',');
    double st[5];
    for (int k = 0; k < 5; ++k) st[k] = *parse_number(parts[k]);
    double mid = c.center(i);
    SvgElement g("g");
    g.attr("class", "mark box");
    const std::string& col = c.series_color(i);
    if (c.horizontal()) {
      g.child(line_el(s.to_px(st[0]), mid, s.to_px(st[4]), mid, c.th.axis, "whisker"));
      SvgElement box("rect");
      box.attr("class", "iqr")
          .attr("x", s.to_px(st[1]))
          .attr("y", mid - bw / 2)
          .attr("width", s.to_px(st[3]) - s.to_px(st[1]))
          .attr("height", bw)
          .attr("fill", col)
          .attr("stroke", c.th.axis);
      g.child(box);
      g.child(line_el(s.to_px(st[2]), mid - bw / 2, s.to_px(st[2]), mid + bw / 2,
                      c.th.text, "median"));
    } else {
      g.child(line_el(mid, s.to_px(st[0]), mid, s.to_px(st[4]), c.th.axis, "whisker"));
      SvgElement box("rect");
      box.attr("class", "iqr")
          .attr("x", mid - bw / 2)
          .attr("y", s.to_px(st[3]))
          .attr("width", bw)
          .attr("height", s.to_px(st[1]) - s.to_px(st[3]))
          .attr("fill", col)
          .attr("stroke", c.th.axis);
      g.child(box);
      g.child(line_el(mid - bw / 2, s.to_px(st[2]), mid + bw / 2, s.to_px(st[2]),
                      c.th.text, "median"));
    }
    c.doc->elements.push_back(g);
    if (c.horizontal())
      value_label(c, s.to_px(st[4]) + 6, mid + 3, st[2], "start");
    else
      value_label(c, mid, s.to_px(st[4]) - 6, st[2]);
  }
}

void render_pie(Ctx& c) {
  const auto& vals = c.table().values[0];
  const std::string& name = c.spec.subtype.name;
  double cx = (c.pr.x0 + c.pr.x1) / 2;
  double cy = (c.pr.y0 + c.pr.y1) / 2;
  double R = std::min(c.pr.w(), c.pr.h()) / 2 - 30;
  double inner = name == "Ring Pie" ? R * 0.55 : 0.0;
  double vmax = *std::max_element(vals.begin(), vals.end());

  struct Ring {
    std::vector<std::size_t> idx;
    double r_in, r_out;
  };
  std::vector<Ring> rings;
  if (name == "Nesting Pie") {
    std::size_t half = (vals.size() + 1) / 2;
    Ring in_ring, out_ring;
    for (std::size_t i = 0; i < half; ++i) in_ring.idx.push_back(i);
    for (std::size_t i = half; i < vals.size(); ++i) out_ring.idx.push_back(i);
    in_ring.r_in = 0;
    in_ring.r_out = R * 0.55;
    out_ring.r_in = R * 0.65;
    out_ring.r_out = R;
    rings = {in_ring, out_ring};
    if (out_ring.idx.empty()) rings.pop_back();
  } else {
    Ring ring;
    for (std::size_t i = 0; i < vals.size(); ++i) ring.idx.push_back(i);
    ring.r_in = inner;
    ring.r_out = R;
    rings = {ring};
  }

  for (std::size_t ri = 0; ri < rings.size(); ++ri) {
    const Ring& ring = rings[ri];
    double total = 0;
    for (auto i : ring.idx) total += vals[i];
    double start = -90;
    bool rose = name == "Rose Pie";
    // The serialized angles are rounded to 6 decimals; the last wedge absorbs
    // the accumulated rounding so the ring's attributes sum to exactly 360.
    double emitted = 0;
    std::size_t left = ring.idx.size();
    for (auto i : ring.idx) {
      double angle = rose ? 360.0 / static_cast<double>(ring.idx.size())
                          : 360.0 * vals[i] / total;
      double shown = --left == 0 ? 360.0 - emitted
                                 : std::round(angle * 1e6) / 1e6;
      emitted += shown;
      double r_out = rose ? ring.r_in + (ring.r_out - ring.r_in) * vals[i] / vmax
                          : ring.r_out;
      double a0 = start * kPi / 180, a1 = (start + angle) * kPi / 180;
      double x0 = cx + r_out * std::cos(a0), y0 = cy + r_out * std::sin(a0);
      double x1 = cx + r_out * std::cos(a1), y1 = cy + r_out * std::sin(a1);
      int large = angle > 180 ? 1 : 0;
      std::ostringstream d;
      if (ring.r_in > 0) {
        double xi0 = cx + ring.r_in * std::cos(a0), yi0 = cy + ring.r_in * std::sin(a0);
        double xi1 = cx + ring.r_in * std::cos(a1), yi1 = cy + ring.r_in * std::sin(a1);
        d << "M " << fmt_px(xi0) << ' ' << fmt_px(yi0) << " L " << fmt_px(x0)
          << ' ' << fmt_px(y0) << " A " << fmt_px(r_out) << ' ' << fmt_px(r_out)
          << " 0 " << large << " 1 " << fmt_px(x1) << ' ' << fmt_px(y1) << " L "
          << fmt_px(xi1) << ' ' << fmt_px(yi1) << " A " << fmt_px(ring.r_in)
          << ' ' << fmt_px(ring.r_in) << " 0 " << large << " 0 " << fmt_px(xi0)
          << ' ' << fmt_px(yi0) << " Z";
      } else {
        d << "M " << fmt_px(cx) << ' ' << fmt_px(cy) << " L " << fmt_px(x0)
          << ' ' << fmt_px(y0) << " A " << fmt_px(r_out) << ' ' << fmt_px(r_out)
          << " 0 " << large << " 1 " << fmt_px(x1) << ' ' << fmt_px(y1) << " Z";
      }
      SvgElement wedge("path");
      wedge.attr("class", "mark wedge")
          .attr("d", d.str())
          .attr("fill", c.series_color(i))
          .attr("data-ring", std::to_string(ri))
          .attr("data-angle", format_fixed(shown, 6));
      c.doc->elements.push_back(wedge);

      double mid = (start + angle / 2) * kPi / 180;
      double lr = ring.r_out + 14;
      double lx = cx + lr * std::cos(mid), ly = cy + lr * std::sin(mid);
      std::string anchor = std::cos(mid) >= 0 ? "start" : "end";
      c.doc->elements.push_back(text_el(lx, ly, c.table().entity_names[i], 10,
                                        anchor, c.th.text, "slice-label"));
      c.doc->elements.push_back(text_el(lx, ly + 11, format_fixed(vals[i], 2), 9,
                                        anchor, c.th.text, "vlabel"));
      start += angle;
    }
  }
}

void render_combination(Ctx& c, const AxisScale& s) {
  const auto& vals = c.table().values;
  double band = c.band();
  for (std::size_t i = 0; i < c.n(); ++i) {
    double v = vals[0][i];
    double len = s.span_px(v);
    double x = c.center(i) - band * 0.3;
    c.doc->elements.push_back(
        bar_rect(x, s.to_px(v), band * 0.6, len, c.series_color(0)));
    value_label(c, c.center(i), s.to_px(v) - 4, v);
  }
  std::ostringstream d;
  for (std::size_t i = 0; i < c.n(); ++i) {
    d << (i == 0 ? "M " : " L ") << fmt_px(c.center(i)) << ' '
      << fmt_px(s.to_px(vals[1][i]));
  }
  SvgElement path("path");
  path.attr("class", "mark line-series")
      .attr("d", d.str())
      .attr("fill", "none")
      .attr("stroke", c.series_color(1))
      .attr("stroke-width", "2");
  c.doc->elements.push_back(path);
  for (std::size_t i = 0; i < c.n(); ++i)
    value_label(c, c.center(i), s.to_px(vals[1][i]) - 6, vals[1][i]);
}

}  // namespace

SvgDoc render(const ChartSpec& spec, const RenderOptions& opts_in) {
  RenderOptions opts = effective(spec, opts_in);
  Theme th = theme_for(spec.style.background);
  SvgDoc doc;
  doc.width = opts.width;
  doc.height = opts.height;
  doc.background = th.bg;

  Ctx c{spec, opts, plot_rect(spec, opts_in), th, &doc};
  doc.elements.push_back(
      text_el(opts.width / 2, 28, spec.title, 16, "middle", th.text, "title"));
  draw_legend(c);

  ChartFamily fam = spec.subtype.family;
  if (fam == ChartFamily::pie) {
    render_pie(c);
    return doc;
  }
  AxisScale s = value_scale(spec, opts_in);
  if (is_polar(spec.subtype.name)) {
    render_polar_bar(c, s);
    return doc;
  }
  draw_value_axis(c, s);
  draw_category_axis(c);
  draw_axis_titles(c);
  switch (fam) {
    case ChartFamily::bar: render_cartesian_bar(c, s); break;
    case ChartFamily::line: render_line(c, s); break;
    case ChartFamily::scatter: render_scatter(c, s); break;
    case ChartFamily::box: render_box(c, s); break;
    case ChartFamily::combination: render_combination(c, s); break;
    default: break;
  }
  return doc;
}

}  // namespace chartdoc
