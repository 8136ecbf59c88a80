#include "oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

using chartdoc::ChartInfo;
using chartdoc::QuestionInfo;

namespace chartdoc_test {
namespace {

// Independent rounding/formatting: half-up to 2 decimals, integers printed
// without a decimal part.
double r2(double v) {
  double r = std::floor(std::abs(v) * 100.0 + 0.5) / 100.0;
  return v < 0 ? -r : r;
}

std::string fmt(double v) {
  v = r2(v);
  char buf[64];
  if (std::abs(v - std::round(v)) < 1e-9)
    std::snprintf(buf, sizeof(buf), "%.0f", std::round(v));
  else
    std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string yn(bool b) { return b ? "Yes" : "No"; }

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string low(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_box(const ChartInfo& info) {
  return info.chart_type.find("Boxplot") != std::string::npos;
}

bool is_pie(const ChartInfo& info) {
  return info.chart_type.find("Pie") != std::string::npos;
}

std::string orientation(const ChartInfo& info) {
  if (is_pie(info)) return "none";
  if (info.chart_type.find("Horizontal") != std::string::npos) return "horizontal";
  return "vertical";
}

std::size_t col_index(const ChartInfo& info, const std::string& name) {
  for (std::size_t c = 0; c < info.entity_names.size(); ++c)
    if (info.entity_names[c] == name) return c;
  return info.entity_names.size();
}

std::size_t row_index(const ChartInfo& info, const std::string& name) {
  for (std::size_t r = 0; r < info.legend_labels.size(); ++r)
    if (info.legend_labels[r] == name) return r;
  return info.legend_labels.size();
}

// The values one entity contributes: box charts expose the rendered
// five-number summary from dsc, everything else the raw column.
std::vector<double> column(const ChartInfo& info, std::size_t c) {
  std::vector<double> out;
  if (is_box(info)) {
    auto it = info.dsc.find("box_" + info.entity_names[c]);
    if (it == info.dsc.end()) return out;
    const std::string& s = it->second;
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t comma = s.find(',', start);
      if (comma == std::string::npos) comma = s.size();
      out.push_back(num(s.substr(start, comma - start)));
      start = comma + 1;
    }
    return out;
  }
  for (const auto& row : info.data) out.push_back(row[c]);
  return out;
}

// Entity-major traversal, matching the axis order of getAllValues.
void all_values(const ChartInfo& info, std::vector<double>& vals,
                std::vector<std::string>& labels) {
  for (std::size_t c = 0; c < info.entity_names.size(); ++c)
    for (double v : column(info, c)) {
      vals.push_back(v);
      labels.push_back(info.entity_names[c]);
    }
}

// Values of the entities whose taxonomy parent is `parent`, axis order.
void member_values(const ChartInfo& info, const std::string& parent,
                   std::vector<double>& vals, std::vector<std::string>& labels) {
  for (std::size_t c = 0; c < info.entity_names.size(); ++c) {
    if (c >= info.entity_parents.size() || info.entity_parents[c] != parent)
      continue;
    for (double v : column(info, c)) {
      vals.push_back(v);
      labels.push_back(info.entity_names[c]);
    }
  }
}

// Values of the legend rows whose taxonomy parent is `parent`; row-major
// with entity labels, matching getValueByLegend.
void legend_member_values(const ChartInfo& info, const std::string& parent,
                          std::vector<double>& vals,
                          std::vector<std::string>& labels) {
  for (std::size_t r = 0; r < info.legend_labels.size(); ++r) {
    if (r >= info.legend_parents.size() || info.legend_parents[r] != parent)
      continue;
    for (std::size_t c = 0; c < info.entity_names.size(); ++c) {
      vals.push_back(info.data[r][c]);
      labels.push_back(info.entity_names[c]);
    }
  }
}

double vmax(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double vmin(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double vsum(const std::vector<double>& v) {
  double t = 0;
  for (double x : v) t += x;
  return t;
}
double vavg(const std::vector<double>& v) { return vsum(v) / static_cast<double>(v.size()); }
double vmed(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// First occurrence wins on ties.
std::string varg(const std::vector<double>& v, const std::vector<std::string>& l,
                 bool want_max) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (want_max ? v[i] > v[best] : v[i] < v[best]) best = i;
  return l[best];
}

// Scalar value of a single entity on a single-series or pie chart.
double scalar(const ChartInfo& info, const std::string& entity) {
  return info.data[0][col_index(info, entity)];
}

}  // namespace

std::optional<std::string> brute_force_oracle(const QuestionInfo& q,
                                              const ChartInfo& info) {
  const auto& f = q.fills;
  std::vector<double> all;
  std::vector<std::string> all_l;
  all_values(info, all, all_l);

  switch (q.template_id) {
    case 1:
      return fmt(scalar(info, f[0]));
    case 2:
      return fmt(static_cast<double>(info.entity_names.size()));
    case 3: {
      int ord = std::atoi(f[0].c_str());
      return info.entity_names[ord - 1];
    }
    case 4:
      return info.colors[row_index(info, f[0])].name;
    case 5:
      return info.colors[col_index(info, f[0])].name;
    case 6:
      return yn(low(orientation(info)) == low(f[0]));
    case 7:
      return yn(scalar(info, f[0]) > num(f[1]));
    case 8:
      return yn(scalar(info, f[0]) < num(f[1]));
    case 9:
      return info.entity_names.front();
    case 10:
      return fmt(std::abs(scalar(info, f[0]) - scalar(info, f[1])));
    case 11:
      return fmt(scalar(info, f[0]) / scalar(info, f[1]));
    case 12:
      return fmt(vsum(all));
    case 13:
      return fmt(vavg(all));
    case 14:
      return fmt(vmax(all));
    case 15:
      return fmt(vmin(all));
    case 16:
      return fmt(vmed(all));
    case 17:
      return varg(all, all_l, true);
    case 18:
      return varg(all, all_l, false);
    case 19:
      return fmt(vsum(column(info, col_index(info, f[0]))));
    case 20:
      return fmt(vmax(column(info, col_index(info, f[0]))));
    case 21:
      return fmt(vmin(column(info, col_index(info, f[0]))));
    case 22:
      return fmt(vmed(column(info, col_index(info, f[0]))));
    case 23:
      return fmt(vavg(column(info, col_index(info, f[0]))));
    case 24:
      return fmt(std::abs(scalar(info, f[0]) - num(f[1])));
    case 25:
    case 26:
    case 27: {
      std::size_t a = col_index(info, f[0]);
      std::size_t b = col_index(info, f[1]);
      if (a > b) std::swap(a, b);
      std::vector<double> seg(info.data[0].begin() + a,
                              info.data[0].begin() + b + 1);
      if (q.template_id == 25) return fmt(vavg(seg));
      if (q.template_id == 26) return fmt(vsum(seg));
      return fmt(vmax(seg));
    }
    case 28: {
      double t = num(f[0]);
      return fmt(static_cast<double>(
          std::count_if(all.begin(), all.end(), [&](double v) { return v > t; })));
    }
    case 29: {
      double t = num(f[0]);
      return fmt(static_cast<double>(
          std::count_if(all.begin(), all.end(), [&](double v) { return v < t; })));
    }
    case 30: {
      const auto& row = info.data[row_index(info, f[0])];
      double t = num(f[1]);
      return fmt(static_cast<double>(
          std::count_if(row.begin(), row.end(), [&](double v) { return v > t; })));
    }
    case 31:
      return fmt(vsum(info.data[row_index(info, f[0])]));
    case 32:
      return fmt(vavg(info.data[row_index(info, f[0])]));
    case 33:
      return fmt(vmax(info.data[row_index(info, f[0])]));
    case 34:
      return varg(info.data[row_index(info, f[0])], info.entity_names, true);
    case 35:
      return varg(info.data[row_index(info, f[0])], info.entity_names, false);
    case 36:
      return fmt(vmed(info.data[row_index(info, f[0])]));
    case 37: {
      double t = num(f[0]);
      std::vector<double> keep;
      for (double v : all)
        if (v > t) keep.push_back(v);
      if (keep.empty()) return std::nullopt;
      return fmt(vavg(keep));
    }
    case 38: {
      double t = num(f[0]);
      std::vector<double> keep;
      for (double v : all)
        if (v < t) keep.push_back(v);
      if (keep.empty()) return std::nullopt;
      return fmt(vsum(keep));
    }
    case 39:
      return fmt(vmax(all) - vmin(all));
    case 40:
      return fmt(vmax(all) / vmin(all));
    case 41:
      return yn(vavg(all) > num(f[0]));
    case 42:
      return yn(vmed(all) < num(f[0]));
    case 43:
      return yn(std::abs(scalar(info, f[0]) - scalar(info, f[1])) > num(f[2]));
    case 44:
      return fmt(std::abs(vavg(info.data[row_index(info, f[0])]) -
                          vavg(info.data[row_index(info, f[1])])));
    case 45: {
      double t = vavg(all);
      return fmt(static_cast<double>(
          std::count_if(all.begin(), all.end(), [&](double v) { return v > t; })));
    }
    case 46:
      return yn(scalar(info, f[0]) > vavg(all));
    case 47: {
      std::vector<double> vals;
      std::vector<std::string> labels;
      member_values(info, f[0], vals, labels);
      return fmt(static_cast<double>(
          std::count_if(vals.begin(), vals.end(), [](double v) { return v > 0; })));
    }
    case 48:
    case 49:
    case 50:
    case 51:
    case 52:
    case 53: {
      std::vector<double> vals;
      std::vector<std::string> labels;
      member_values(info, f[0], vals, labels);
      if (vals.empty()) return std::nullopt;
      switch (q.template_id) {
        case 48: return fmt(vsum(vals));
        case 49: return fmt(vavg(vals));
        case 50: return varg(vals, labels, true);
        case 51: return varg(vals, labels, false);
        case 52: return fmt(vmax(vals));
        default: return fmt(vmin(vals));
      }
    }
    case 54:
    case 55:
    case 56:
    case 57: {
      std::vector<double> vals;
      std::vector<std::string> labels;
      member_values(info, f[0], vals, labels);
      if (vals.empty()) return std::nullopt;
      double t = num(f[1]);
      switch (q.template_id) {
        case 54: return yn(vmin(vals) > t);
        case 55: return yn(vavg(vals) < t);
        case 56:
          return fmt(static_cast<double>(std::count_if(
              vals.begin(), vals.end(), [&](double v) { return v > t; })));
        default: return yn(vmax(vals) > t);
      }
    }
    case 58:
    case 59:
    case 60:
    case 62: {
      std::vector<double> vals;
      std::vector<std::string> labels;
      legend_member_values(info, f[0], vals, labels);
      if (vals.empty()) return std::nullopt;
      switch (q.template_id) {
        case 58: return fmt(vsum(vals));
        case 59: return fmt(vavg(vals));
        case 60: return yn(vavg(vals) > num(f[1]));
        default: return varg(vals, labels, true);
      }
    }
    case 61: {
      std::vector<double> vals;
      std::vector<std::string> labels;
      member_values(info, f[0], vals, labels);
      if (vals.empty()) return std::nullopt;
      return yn(low(varg(all, all_l, true)) == low(varg(vals, labels, true)));
    }
    default:
      return std::nullopt;
  }
}

}  // namespace chartdoc_test
