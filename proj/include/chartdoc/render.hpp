#pragma once

#include <vector>

#include "chartdoc/chart.hpp"
#include "chartdoc/svg.hpp"

namespace chartdoc {

struct RenderOptions {
  double width = 800;
  double height = 600;
  double margin = 60;
};

struct PlotRect {
  double x0, y0, x1, y1;  // y0 = top
  double w() const { return x1 - x0; }
  double h() const { return y1 - y0; }
};

// Plot rectangle for the given canvas; shared by the renderer and by
// geometry checks that invert rendered marks.
PlotRect plot_rect(const ChartSpec& spec, const RenderOptions& opts);

// Value-axis domain [lo, hi] for a spec: stacked subtypes use column sums,
// waterfall the running total, everything else the raw extrema. hi is
// rounded up to the tick step.
std::pair<double, double> value_domain(const ChartSpec& spec);

// 5-8 "nice" ticks (1/2/5 x 10^k steps) covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi);

// The data->pixel scale the renderer uses for the value axis (radial range
// for polar subtypes).
AxisScale value_scale(const ChartSpec& spec, const RenderOptions& opts);

SvgDoc render(const ChartSpec& spec, const RenderOptions& opts = {});

}  // namespace chartdoc
