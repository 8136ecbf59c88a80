#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chartdoc {

struct SvgElement {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;
  std::vector<SvgElement> children;

  SvgElement() = default;
  explicit SvgElement(std::string t) : tag(std::move(t)) {}

  SvgElement& attr(std::string k, std::string v) {
    attrs.emplace_back(std::move(k), std::move(v));
    return *this;
  }
  SvgElement& attr(std::string k, double v);
  SvgElement& child(SvgElement e) {
    children.push_back(std::move(e));
    return *this;
  }
  void write(std::string& out, int indent) const;
};

struct SvgDoc {
  double width = 800;
  double height = 600;
  std::string background = "#ffffff";
  std::vector<SvgElement> elements;

  std::string to_xml() const;
};

// Affine data->pixel map. Vertical scales pass a descending pixel range so
// larger values sit higher on the page.
struct AxisScale {
  double dmin = 0;
  double dmax = 1;
  double plo = 0;
  double phi = 1;

  double to_px(double v) const {
    return plo + (v - dmin) / (dmax - dmin) * (phi - plo);
  }
  double to_data(double px) const {
    return dmin + (px - plo) / (phi - plo) * (dmax - dmin);
  }
  // Pixel length of a span of |v| data units from the origin.
  double span_px(double v) const {
    return v / (dmax - dmin) * (phi > plo ? phi - plo : plo - phi);
  }
  double px_per_unit() const {
    return (phi > plo ? phi - plo : plo - phi) / (dmax - dmin);
  }
};

std::string fmt_px(double v);  // fixed 2-decimal coordinate formatting

}  // namespace chartdoc
