#include "chartdoc/svg.hpp"

#include <cstdio>

#include "chartdoc/text.hpp"

namespace chartdoc {

std::string fmt_px(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

SvgElement& SvgElement::attr(std::string k, double v) {
  return attr(std::move(k), fmt_px(v));
}

void SvgElement::write(std::string& out, int indent) const {
  out.append(indent, ' ');
  out += '<';
  out += tag;
  for (const auto& [k, v] : attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += xml_escape(v);
    out += '"';
  }
  if (text.empty() && children.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (!text.empty()) out += xml_escape(text);
  if (!children.empty()) {
    out += '\n';
    for (const auto& c : children) c.write(out, indent + 2);
    out.append(indent, ' ');
  }
  out += "</";
  out += tag;
  out += ">\n";
}

std::string SvgDoc::to_xml() const {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_px(width) +
         "\" height=\"" + fmt_px(height) + "\" viewBox=\"0 0 " + fmt_px(width) +
         " " + fmt_px(height) + "\">\n";
  SvgElement bg("rect");
  bg.attr("class", "background")
      .attr("x", 0.0)
      .attr("y", 0.0)
      .attr("width", width)
      .attr("height", height)
      .attr("fill", background);
  bg.write(out, 2);
  for (const auto& e : elements) e.write(out, 2);
  out += "</svg>\n";
  return out;
}

}  // namespace chartdoc
