#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "chartdoc.h"

namespace fs = std::filesystem;

namespace {

bool verbose() {
  const char* v = std::getenv("CHARTDOC_FORGE_LOG");
  return v && *v;
}

void log_step(const std::string& msg) {
  if (verbose()) std::cerr << "[chartdoc] " << msg << "\n";
}

int fail(int rc) {
  std::cerr << "error: " << cdq_last_error() << "\n";
  return rc;
}

struct Freed {
  char* p = nullptr;
  ~Freed() { cdq_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic chart-document dataset generator"};
  app.require_subcommand(1);

  // build-hierarchy
  std::string edges_path, hierarchy_out;
  auto* build = app.add_subcommand("build-hierarchy",
                                   "Prune a hypernym edge list into the entity tree");
  build->add_option("--edges", edges_path, "edge-list file")->required();
  build->add_option("--out", hierarchy_out, "output tree file")->required();

  // generate
  std::string gen_config, gen_out;
  std::uint64_t gen_seed = 0;
  int jobs = 1;
  bool force = false;
  auto* gen = app.add_subcommand("generate", "Generate a dataset");
  gen->add_option("--config", gen_config, "config JSON file")->required();
  gen->add_option("--seed", gen_seed, "master seed (required for reproducibility)")
      ->required();
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--jobs", jobs, "worker threads")->default_val(1);
  gen->add_flag("--force", force, "allow writing into a non-empty directory");

  // debias
  std::string debias_dir;
  auto* deb = app.add_subcommand("debias", "Re-balance yes/no answers in place");
  deb->add_option("--dataset", debias_dir, "dataset directory")->required();

  // stats
  std::string stats_dir;
  auto* st = app.add_subcommand("stats", "Corpus statistics");
  st->add_option("--dataset", stats_dir, "dataset directory")->required();

  // render-chart
  std::string spec_path, svg_out;
  auto* render = app.add_subcommand("render-chart", "Render a chart spec to SVG");
  render->add_option("--spec", spec_path, "chart spec JSON")->required();
  render->add_option("--out", svg_out, "output SVG path")->required();

  // evaluate
  std::string eval_dir, preds_path, report_path;
  auto* ev = app.add_subcommand("evaluate", "Score predictions against the corpus");
  ev->add_option("--dataset", eval_dir, "dataset directory")->required();
  ev->add_option("--preds", preds_path, "question_id<TAB>answer file")->required();
  ev->add_option("--report", report_path, "JSON report output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (build->parsed()) {
    log_step("building hierarchy from " + edges_path);
    cdq_hierarchy* h = nullptr;
    if (int rc = cdq_hierarchy_build(edges_path.c_str(), &h)) return fail(rc);
    int rc = cdq_hierarchy_write(h, hierarchy_out.c_str());
    size_t n = 0;
    cdq_hierarchy_size(h, &n);
    cdq_hierarchy_free(h);
    if (rc) return fail(rc);
    std::cout << "wrote " << n << " nodes to " << hierarchy_out << "\n";
    return 0;
  }

  if (gen->parsed()) {
    std::error_code ec;
    if (!force && fs::exists(gen_out, ec) &&
        fs::directory_iterator(gen_out, ec) != fs::directory_iterator()) {
      std::cerr << "error: output directory " << gen_out
                << " is not empty (use --force to overwrite)\n";
      return 1;
    }
    log_step("generating into " + gen_out);
    Freed digest;
    if (int rc = cdq_generate(gen_config.c_str(), gen_seed, gen_out.c_str(),
                              jobs, &digest.p))
      return fail(rc);
    std::cout << digest.p << "\n";
    return 0;
  }

  if (deb->parsed()) {
    log_step("debiasing " + debias_dir);
    Freed report;
    if (int rc = cdq_debias(debias_dir.c_str(), &report.p)) return fail(rc);
    std::cout << report.p;
    return 0;
  }

  if (st->parsed()) {
    Freed text;
    if (int rc = cdq_stats(stats_dir.c_str(), &text.p)) return fail(rc);
    std::cout << text.p;
    return 0;
  }

  if (render->parsed()) {
    log_step("rendering " + spec_path);
    if (int rc = cdq_render_chart(spec_path.c_str(), svg_out.c_str()))
      return fail(rc);
    return 0;
  }

  if (ev->parsed()) {
    Freed text;
    if (int rc = cdq_evaluate(eval_dir.c_str(), preds_path.c_str(),
                              report_path.empty() ? nullptr : report_path.c_str(),
                              &text.p))
      return fail(rc);
    std::cout << text.p;
    return 0;
  }
  return 1;
}
