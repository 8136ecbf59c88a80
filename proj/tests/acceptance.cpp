// Acceptance suite: ten end-to-end criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chartdoc/answer.hpp"
#include "chartdoc/chart.hpp"
#include "chartdoc/debias.hpp"
#include "chartdoc/document.hpp"
#include "chartdoc/errors.hpp"
#include "chartdoc/evaluate.hpp"
#include "chartdoc/hierarchy.hpp"
#include "chartdoc/pipeline.hpp"
#include "chartdoc/question.hpp"
#include "chartdoc/render.hpp"
#include "chartdoc/table.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace chartdoc;

namespace {

std::string data_path(const std::string& rel) {
  return std::string(CHARTDOC_DATA_DIR) + "/" + rel;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + p.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

GenConfig base_config(std::size_t docs, std::uint64_t seed) {
  GenConfig c;
  c.doc_count = docs;
  c.master_seed = seed;
  c.colors_path = data_path("colors.csv");
  c.hierarchy_path = data_path("hypernyms.txt");
  c.registry_path = data_path("templates.txt");
  c.image_pool_dir = data_path("image_pool");
  c.table_pool_dir = data_path("table_pool");
  return c;
}

ChartInfo worked_example() {
  ChartInfo info;
  info.chart_id = "T_2023_04_08_18_48_12_3_Vbar";
  info.chart_type = "Vertical Bar";
  info.title = "Values of accessory";
  info.entity_names = {"mouse", "keyboard", "sunglass"};
  info.legend_labels = {"accessory"};
  info.data = {{85.6, 100.01, 101.1}};
  info.colors = {{"teal", "#008080"}};
  info.entity_parents = {"rodent", "peripheral", "accessory"};
  info.entity_grandparent = "artifact";
  info.x_title = "Entity";
  info.y_title = "Value";
  info.table_id = "T_fixture01";
  return info;
}

struct Scratch {
  fs::path root;
  Scratch() {
    root = fs::temp_directory_path() /
           ("chartdoc_accept_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
};

int g_failures = 0;

void report(int n, const char* title, const std::function<std::string()>& run) {
  std::string detail;
  bool ok = false;
  try {
    detail = run();  // empty string means pass
    ok = detail.empty();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (ok) {
    std::printf("criterion %2d [%s]: PASS\n", n, title);
  } else {
    std::printf("criterion %2d [%s]: FAIL (%s)\n", n, title, detail.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

std::map<std::string, ChartInfo> load_chart_infos(const fs::path& dataset) {
  std::map<std::string, ChartInfo> out;
  for (const auto& e : fs::directory_iterator(dataset / "charts")) {
    std::string name = e.path().filename().string();
    if (e.path().extension() != ".json") continue;
    if (name.size() > 10 && name.substr(name.size() - 10) == ".spec.json")
      continue;
    ChartInfo info = ChartInfo::from_json(slurp(e.path()));
    out[info.chart_id] = info;
  }
  return out;
}

}  // namespace

int main() {
  Scratch scratch;
  const int jobs = std::max(2u, std::thread::hardware_concurrency());

  // The large corpus shared by criteria 2, 3, 4, and 6.
  const fs::path big_dir = scratch.root / "big";
  GenConfig big_cfg = base_config(5001, 4242);
  DatasetManifest big_manifest;
  std::vector<QuestionInfo> big_corpus;
  std::map<std::string, ChartInfo> big_charts;
  bool big_ready = false;
  std::string big_error;
  try {
    big_manifest = generate(big_cfg, big_dir.string(), jobs);
    big_corpus = load_corpus(big_dir.string());
    big_charts = load_chart_infos(big_dir);
    big_ready = true;
  } catch (const std::exception& e) {
    big_error = e.what();
  }

  report(1, "worked example", [&]() -> std::string {
    auto registry = load_registry_file(data_path("templates.txt"));
    const QuestionTemplate* interval_avg = nullptr;
    for (const auto& t : registry)
      if (t.template_id == 25) interval_avg = &t;
    if (!interval_avg) return "interval-average template missing";
    Value v = solve(interval_avg->program, {"mouse", "sunglass"},
                    worked_example());
    std::string s = value_to_string(v);
    if (s != "95.57") return "got " + s + ", want 95.57";
    return "";
  });

  report(2, "oracle equivalence", [&]() -> std::string {
    if (!big_ready) return "generation failed: " + big_error;
    const std::size_t want = 1000;
    std::size_t stride = std::max<std::size_t>(1, big_corpus.size() / want);
    std::size_t compared = 0, agreed = 0;
    std::set<ChartFamily> families;
    for (std::size_t i = 0; i < big_corpus.size() && compared < want;
         i += stride) {
      const QuestionInfo& q = big_corpus[i];
      auto chart = big_charts.find(q.chart_id);
      if (chart == big_charts.end())
        return "question " + q.question_id + " has no chart";
      auto expected = chartdoc_test::brute_force_oracle(q, chart->second);
      if (!expected)
        return "oracle cannot answer template " +
               std::to_string(q.template_id);
      ++compared;
      families.insert(subtype_by_name(chart->second.chart_type).family);
      if (*expected == q.answer) {
        ++agreed;
      } else {
        return q.question_id + ": dataset says '" + q.answer +
               "', oracle says '" + *expected + "'";
      }
    }
    if (compared < want)
      return "only " + std::to_string(compared) + " questions compared";
    if (families.size() < 6) return "not all chart families sampled";
    return "";
  });

  report(3, "yes/no balance", [&]() -> std::string {
    if (!big_ready) return "generation failed: " + big_error;
    auto counts = tally(big_corpus);
    std::size_t yes = 0, total = 0;
    for (const auto& [id, t] : counts) {
      if (t.gap() > 1)
        return "template " + std::to_string(id) + " gap " +
               std::to_string(t.gap());
      yes += t.yes;
      total += t.yes + t.no;
    }
    if (total < 5000)
      return "only " + std::to_string(total) + " yes/no questions";
    double share = static_cast<double>(yes) / static_cast<double>(total);
    if (share < 0.49 || share > 0.51)
      return "yes share " + std::to_string(share);
    return "";
  });

  report(4, "distribution conformance", [&]() -> std::string {
    if (!big_ready) return "generation failed: " + big_error;
    if (big_manifest.doc_count != 5001) return "doc count off";
    std::map<ChartFamily, std::size_t> fam_counts;
    for (const auto& [id, info] : big_charts)
      fam_counts[subtype_by_name(info.chart_type).family]++;
    const std::pair<ChartFamily, double> targets[] = {
        {ChartFamily::bar, 0.3667},     {ChartFamily::line, 0.2333},
        {ChartFamily::pie, 0.1333},     {ChartFamily::scatter, 0.1333},
        {ChartFamily::box, 0.1000},     {ChartFamily::combination, 0.0333}};
    for (const auto& [fam, want] : targets) {
      double got = fam_counts[fam] / 5001.0;
      if (std::abs(got - want) > 0.01)
        return std::string(family_name(fam)) + " share " +
               std::to_string(got) + " vs " + std::to_string(want);
    }
    // split fractions over documents (all of a chart's questions share one)
    std::map<std::string, std::set<std::string>> charts_by_split;
    for (const auto& q : big_corpus) charts_by_split[q.split].insert(q.chart_id);
    double n = 0;
    for (const auto& [s, ids] : charts_by_split) n += ids.size();
    const std::pair<const char*, double> splits[] = {
        {"train", 0.80}, {"val", 0.10}, {"test", 0.10}};
    for (const auto& [name, want] : splits) {
      double got = charts_by_split[name].size() / n;
      if (std::abs(got - want) > 0.005)
        return std::string(name) + " fraction " + std::to_string(got);
    }
    return "";
  });

  report(5, "determinism across jobs", [&]() -> std::string {
    GenConfig cfg = base_config(30, 20260826);
    fs::path d1 = scratch.root / "det1", d2 = scratch.root / "det2";
    DatasetManifest m1 = generate(cfg, d1.string(), 1);
    DatasetManifest m2 = generate(cfg, d2.string(), 4);
    if (m1.corpus_digest != m2.corpus_digest) return "corpus digests differ";
    std::vector<std::string> rel1, rel2;
    for (const auto& e : fs::recursive_directory_iterator(d1))
      if (e.is_regular_file())
        rel1.push_back(fs::relative(e.path(), d1).string());
    for (const auto& e : fs::recursive_directory_iterator(d2))
      if (e.is_regular_file())
        rel2.push_back(fs::relative(e.path(), d2).string());
    std::sort(rel1.begin(), rel1.end());
    std::sort(rel2.begin(), rel2.end());
    if (rel1 != rel2) return "file lists differ";
    for (const auto& rel : rel1)
      if (slurp(d1 / rel) != slurp(d2 / rel)) return rel + " differs";
    return "";
  });

  report(6, "annotation validity", [&]() -> std::string {
    if (!big_ready) return "generation failed: " + big_error;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(big_dir / "annotations"))
      files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.size() < 1000)
      return "only " + std::to_string(files.size()) + " annotations";
    for (std::size_t i = 0; i < 1000; ++i) {
      try {
        validate_annotation(slurp(files[i]));
      } catch (const std::exception& e) {
        return files[i].filename().string() + ": " + e.what();
      }
    }
    return "";
  });

  report(7, "renderer faithfulness", [&]() -> std::string {
    ColorCatalog colors = ColorCatalog::load_file(data_path("colors.csv"));
    EntityHierarchy h =
        EntityHierarchy::build_from_edge_file(data_path("hypernyms.txt"));
    Rng rng(20250707);
    auto bar_names = subtypes_of_family(ChartFamily::bar);
    RenderOptions opts;

    auto find_attr = [](const SvgElement& e, const char* key) -> const std::string* {
      for (const auto& [k, v] : e.attrs)
        if (k == key) return &v;
      return nullptr;
    };
    auto has_class = [&](const SvgElement& e, const std::string& cls) {
      const std::string* c = find_attr(e, "class");
      return c && (" " + *c + " ").find(" " + cls + " ") != std::string::npos;
    };

    for (int iter = 0; iter < 200; ++iter) {
      const ChartSubtype& st =
          subtype_by_name(bar_names[rng.below(bar_names.size())]);
      SubtypeShape shape = subtype_shape(st);
      int rows = shape.min_legends;
      if (shape.max_legends != 1) rows = 2 + static_cast<int>(rng.below(3));
      int cols = 3 + static_cast<int>(rng.below(4));
      EntitySample sample = h.sample_entities(rng, 4, 4);
      DataTable table =
          random_table(rows, cols, sample, rng);
      BuiltChart b = build_chart(table, st, colors, rng,
                                 "T_accept_" + std::to_string(iter));
      AxisScale scale = value_scale(b.spec, opts);
      SvgDoc doc = render(b.spec, opts);

      std::vector<double> expected;
      if (st.name == "Waterfall Bar") {
        for (double v : table.values[0]) expected.push_back(scale.span_px(v));
      } else {
        for (const auto& row : table.values)
          for (double v : row) expected.push_back(scale.span_px(v));
      }
      bool horiz = subtype_orientation(st.name) == "horizontal" &&
                   st.name.rfind("Polar", 0) != 0;
      std::vector<double> got;
      for (const auto& e : doc.elements) {
        if (e.tag != "rect" || !has_class(e, "bar")) continue;
        const std::string* len = find_attr(e, horiz ? "width" : "height");
        if (!len) return st.name + ": bar without extent";
        got.push_back(std::strtod(len->c_str(), nullptr));
      }
      if (got.size() != expected.size())
        return st.name + ": " + std::to_string(got.size()) + " bars vs " +
               std::to_string(expected.size()) + " values";
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(got[i] - expected[i]) > 0.5)
          return st.name + ": extent off by " +
                 std::to_string(std::abs(got[i] - expected[i])) + " px";
    }

    // pie wedges: each ring's angles sum to a full turn
    auto pie_names = subtypes_of_family(ChartFamily::pie);
    for (int iter = 0; iter < 50; ++iter) {
      const ChartSubtype& st =
          subtype_by_name(pie_names[rng.below(pie_names.size())]);
      int cols = 3 + static_cast<int>(rng.below(6));
      EntitySample sample = h.sample_entities(rng, 3, 3);
      DataTable table = random_table(1, cols, sample, rng);
      BuiltChart b = build_chart(table, st, colors, rng,
                                 "T_accept_pie_" + std::to_string(iter));
      SvgDoc doc = render(b.spec, opts);
      std::map<std::string, double> ring_sum;
      for (const auto& e : doc.elements) {
        if (!has_class(e, "wedge")) continue;
        const std::string* ring = find_attr(e, "data-ring");
        const std::string* angle = find_attr(e, "data-angle");
        if (!ring || !angle) return st.name + ": wedge without angle";
        ring_sum[*ring] += std::strtod(angle->c_str(), nullptr);
      }
      if (ring_sum.empty()) return st.name + ": no wedges";
      for (const auto& [ring, sum] : ring_sum)
        if (std::abs(sum - 360.0) > 1e-6)
          return st.name + ": ring " + ring + " sums to " +
                 std::to_string(sum);
    }
    return "";
  });

  report(8, "judge boundary suite", [&]() -> std::string {
    struct Case {
      const char* pred;
      const char* truth;
      bool want;
    };
    const Case cases[20] = {
        {"105.52", "100.50", true},   {"105.53", "100.50", false},
        {"95.48", "100.50", true},    {"95.47", "100.50", false},
        {"0", "0", true},             {"0.0000000001", "0", true},
        {"0.01", "0", false},         {"14", "14", true},
        {"14.00", "14", true},        {"14.01", "14", false},
        {"13.99", "14", false},       {"-10.49", "-10.10", true},
        {"-10.72", "-10.10", false},  {"mouse", "Mouse", true},
        {"  YES ", "Yes", true},      {"no", "Yes", false},
        {"rat", "mouse", false},      {"12.00", "12", true},
        {"twelve", "12", false},      {"Vertical", "vertical", true},
    };
    for (const Case& c : cases)
      if (judge(c.pred, c.truth) != c.want)
        return std::string("judge('") + c.pred + "', '" + c.truth + "') != " +
               (c.want ? "correct" : "incorrect");
    return "";
  });

  report(9, "difficulty classifier", [&]() -> std::string {
    auto registry = load_registry_file(data_path("templates.txt"));
    if (registry.size() < 48)
      return "registry has only " + std::to_string(registry.size()) +
             " templates";
    std::set<Difficulty> seen;
    for (const auto& t : registry) {
      Difficulty got = classify_difficulty(t);
      if (got != t.difficulty)
        return "template " + std::to_string(t.template_id) + ": labeled " +
               difficulty_name(t.difficulty) + ", classified " +
               difficulty_name(got);
      seen.insert(got);
    }
    if (seen.size() != 5) return "not all five rule branches exercised";
    return "";
  });

  report(10, "hierarchy construction", [&]() -> std::string {
    EntityHierarchy h =
        EntityHierarchy::build_from_edge_file(data_path("hypernyms.txt"));
    if (h.size() < 500)
      return "only " + std::to_string(h.size()) + " nodes";
    for (const auto& [name, node] : h.nodes()) {
      if (node.children.size() == 1)
        return name + " is a single-child internal node";
      if (node.parent) {
        const auto& sibs = h.node(*node.parent).children;
        if (std::find(sibs.begin(), sibs.end(), name) == sibs.end())
          return name + " missing from its parent's child list";
      }
      // acyclic: walking up must reach a root within |nodes| steps
      std::size_t steps = 0;
      const std::string* cur = &name;
      while (h.node(*cur).parent) {
        cur = &*h.node(*cur).parent;
        if (++steps > h.size()) return "cycle reached from " + name;
      }
    }
    std::string text = h.serialize();
    EntityHierarchy reparsed = EntityHierarchy::parse(text);
    if (reparsed.serialize() != text) return "re-serialization not stable";
    EntityHierarchy again =
        EntityHierarchy::build_from_edge_file(data_path("hypernyms.txt"));
    if (again.serialize() != text) return "rebuild not reproducible";
    // multi-parent resolution: peanut lists {legume, nut}; the
    // lexicographically smaller parent must win every time
    if (!again.contains("peanut") || again.node("peanut").parent != "legume")
      return "multi-parent tie-break not reproducible";
    return "";
  });

  if (g_failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
