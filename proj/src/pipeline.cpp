#include "chartdoc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "chartdoc/answer.hpp"
#include "chartdoc/document.hpp"
#include "chartdoc/errors.hpp"
#include "chartdoc/render.hpp"
#include "chartdoc/rng.hpp"
#include "chartdoc/text.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace chartdoc {

void GenConfig::validate() const {
  if (doc_count < 1) throw InvalidInput("doc_count must be >= 1");
  double sum = train_ratio + val_ratio + test_ratio;
  if (std::abs(sum - 1.0) > 1e-6)
    throw InvalidInput("split ratios must sum to 1");
  if (questions_lo < 1 || questions_hi < questions_lo)
    throw InvalidInput("bad questions-per-chart range");
  if (colors_path.empty() || hierarchy_path.empty() || registry_path.empty() ||
      image_pool_dir.empty())
    throw InvalidInput("colors, hierarchy, registry, and image pool paths are required");
}

std::string GenConfig::to_json() const {
  nlohmann::ordered_json j;
  j["doc_count"] = doc_count;
  j["master_seed"] = master_seed;
  j["split_ratios"] = {train_ratio, val_ratio, test_ratio};
  j["questions_per_chart"] = {questions_lo, questions_hi};
  j["shape"] = {{"min_entities", shape.min_entities},
                {"max_entities", shape.max_entities},
                {"min_legends", shape.min_legends},
                {"max_legends", shape.max_legends},
                {"random_prob", shape.random_prob}};
  j["base_time"] = {base_time.year, base_time.month,  base_time.day,
                    base_time.hour, base_time.minute, base_time.second};
  j["colors_path"] = colors_path;
  j["hierarchy_path"] = hierarchy_path;
  j["registry_path"] = registry_path;
  j["image_pool_dir"] = image_pool_dir;
  j["table_pool_dir"] = table_pool_dir;
  return j.dump(2);
}

GenConfig GenConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("bad config: ") + e.what());
  }
  GenConfig c;
  c.doc_count = j.value("doc_count", c.doc_count);
  c.master_seed = j.value("master_seed", c.master_seed);
  if (j.contains("split_ratios")) {
    auto r = j["split_ratios"];
    c.train_ratio = r.at(0);
    c.val_ratio = r.at(1);
    c.test_ratio = r.at(2);
  }
  if (j.contains("questions_per_chart")) {
    c.questions_lo = j["questions_per_chart"].at(0);
    c.questions_hi = j["questions_per_chart"].at(1);
  }
  if (j.contains("shape")) {
    auto s = j["shape"];
    c.shape.min_entities = s.value("min_entities", c.shape.min_entities);
    c.shape.max_entities = s.value("max_entities", c.shape.max_entities);
    c.shape.min_legends = s.value("min_legends", c.shape.min_legends);
    c.shape.max_legends = s.value("max_legends", c.shape.max_legends);
    c.shape.random_prob = s.value("random_prob", c.shape.random_prob);
  }
  if (j.contains("base_time")) {
    auto t = j["base_time"];
    c.base_time = {t.at(0), t.at(1), t.at(2), t.at(3), t.at(4), t.at(5)};
  }
  c.colors_path = j.value("colors_path", std::string());
  c.hierarchy_path = j.value("hierarchy_path", std::string());
  c.registry_path = j.value("registry_path", std::string());
  c.image_pool_dir = j.value("image_pool_dir", std::string());
  c.table_pool_dir = j.value("table_pool_dir", std::string());
  return c;
}

GenConfig GenConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

namespace {

// FNV's high bits disperse poorly for short ids; finalize with splitmix64.
std::uint64_t split_hash(const std::string& doc_id, std::uint64_t master_seed) {
  std::uint64_t state = fnv1a64(doc_id, fnv1a64("split") ^ master_seed);
  return splitmix64(state);
}

}  // namespace

std::string assign_split(const std::string& doc_id, double train_ratio,
                         double val_ratio, std::uint64_t master_seed) {
  std::uint64_t h = split_hash(doc_id, master_seed);
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  if (u < train_ratio) return "train";
  if (u < train_ratio + val_ratio) return "val";
  return "test";
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write " + path.string());
  out << bytes;
}

std::vector<std::string> sorted_dir(const fs::path& dir,
                                    const std::string& ext = "") {
  std::vector<std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (!ext.empty() && entry.path().extension() != ext) continue;
    out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PerDoc {
  std::string doc_id;
  std::string split;
  ChartSpec spec;
  ChartInfo info;
  std::vector<QuestionInfo> questions;
};

std::string doc_id_for(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "doc_%06zu", index);
  return buf;
}

DataTable make_box_table(const EntityHierarchy& hierarchy, Rng& rng) {
  EntitySample sample = hierarchy.sample_entities(rng, 2, 3);
  int cols = std::min<int>(3 + static_cast<int>(rng.below(3)),
                           static_cast<int>(sample.entities.size()));
  DataTable t;
  t.source_kind = SourceKind::random;
  t.entity_names.assign(sample.entities.begin(), sample.entities.begin() + cols);
  int obs = 10 + static_cast<int>(rng.below(11));
  for (int r = 0; r < obs; ++r) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "obs_%02d", r + 1);
    t.legend_labels.emplace_back(buf);
  }
  t.values.assign(t.rows(), std::vector<double>(t.cols()));
  for (auto& row : t.values)
    for (auto& v : row) v = round2(rng.uniform(1.0, 200.0));
  t.sample = sample;
  t.table_id = mint_table_id(t);
  return t;
}

// Shared read-only inputs for worker threads.
struct SharedInputs {
  GenConfig config;
  ColorCatalog colors;
  EntityHierarchy hierarchy;
  std::vector<QuestionTemplate> templates;
  std::vector<DataTable> table_pool;
  std::vector<std::string> image_pool;  // "images/<name>" payload paths
};

PerDoc build_doc(const SharedInputs& in, std::size_t index,
                 const std::string& split, const ChartSubtype& subtype) {
  const GenConfig& cfg = in.config;
  Rng rng(derive_seed(cfg.master_seed, index, "doc"));
  PerDoc doc;
  doc.doc_id = doc_id_for(index);
  doc.split = split;
  DataTable table;
  if (subtype.family == ChartFamily::box) {
    table = make_box_table(in.hierarchy, rng);
  } else {
    TableShapeConfig shape_cfg = cfg.shape;
    SubtypeShape ss = subtype_shape(subtype);
    shape_cfg.min_legends = std::max(shape_cfg.min_legends, ss.min_legends);
    if (ss.max_legends)
      shape_cfg.max_legends = std::min(shape_cfg.max_legends, ss.max_legends);
    if (shape_cfg.max_legends < shape_cfg.min_legends)
      shape_cfg.max_legends = shape_cfg.min_legends;
    table = pick_table(in.table_pool, in.hierarchy, rng, shape_cfg);
  }

  static const std::vector<char> machines = {'L', 'M', 'S', 'T', 'W'};
  char machine = machines[rng.below(machines.size())];
  std::string chart_id = make_chart_id(
      cfg.base_time.plus_seconds(static_cast<long>(index)), rng, subtype, machine);
  BuiltChart built = build_chart(table, subtype, in.colors, rng, chart_id);
  doc.spec = std::move(built.spec);
  doc.info = std::move(built.info);

  std::vector<const QuestionTemplate*> applicable;
  for (const auto& t : in.templates)
    if (template_applicable(t, doc.info)) applicable.push_back(&t);

  int want = cfg.questions_lo +
             static_cast<int>(rng.below(
                 static_cast<std::uint64_t>(cfg.questions_hi - cfg.questions_lo + 1)));
  std::size_t k = std::min<std::size_t>(want, applicable.size());
  auto idxs = rng.sample_indices(applicable.size(), k);
  std::sort(idxs.begin(), idxs.end());  // ascending template order

  for (std::size_t i : idxs) {
    const QuestionTemplate& t = *applicable[i];
    for (int attempt = 0; attempt < 10; ++attempt) {
      try {
        QuestionInfo q = instantiate(t, doc.info, rng);
        q.answer = value_to_string(solve(t.program, q.fills, doc.info));
        q.split = doc.split;
        doc.questions.push_back(std::move(q));
        break;
      } catch (const Error&) {
        // re-sample fills; persistent failures drop the template
      }
    }
  }
  if (doc.questions.empty()) {
    // guarantee at least one question per document
    for (const auto* t : applicable) {
      try {
        QuestionInfo q = instantiate(*t, doc.info, rng);
        q.answer = value_to_string(solve(t->program, q.fills, doc.info));
        q.split = doc.split;
        doc.questions.push_back(std::move(q));
        break;
      } catch (const Error&) {
      }
    }
    if (doc.questions.empty())
      throw RuntimeFailure("no template applies to chart " + doc.info.chart_id);
  }
  return doc;
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& work) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string first_error;
  auto run = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty())
          first_error = "doc " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(run);
  for (auto& t : threads) t.join();
  if (!first_error.empty()) throw RuntimeFailure(first_error);
}

DatasetManifest scan_manifest(const fs::path& out, const std::string& config_json) {
  DatasetManifest m;
  m.config_json = config_json;
  std::vector<std::string> paths;
  for (const char* dir : {"charts", "docs", "annotations", "qa", "images"})
    for (const auto& f : sorted_dir(out / dir)) paths.push_back(std::string(dir) + "/" + f);
  for (const char* f : {"registry.txt", "debias_report.txt"})
    if (fs::exists(out / f)) paths.push_back(f);
  std::string all;
  for (const auto& p : paths) {
    std::string digest = hex16(fnv1a64(read_file((out / p).string())));
    m.files.emplace_back(p, digest);
    all += p + ":" + digest + "\n";
    if (p.rfind("charts/", 0) == 0 && p.size() > 4 &&
        p.substr(p.size() - 4) == ".svg")
      ++m.chart_count;
    if (p.rfind("docs/", 0) == 0) ++m.doc_count;
  }
  for (const char* split : {"train", "val", "test"}) {
    fs::path qa = out / "qa" / (std::string(split) + ".jsonl");
    std::size_t n = 0;
    if (fs::exists(qa)) {
      std::ifstream f(qa);
      std::string line;
      while (std::getline(f, line))
        if (!trim(line).empty()) ++n;
    }
    m.questions_per_split[split] = n;
    m.question_count += n;
  }
  m.corpus_digest = hex16(fnv1a64(all));
  return m;
}

void write_qa_files(const fs::path& out, const std::vector<QuestionInfo>& corpus) {
  fs::create_directories(out / "qa");
  for (const char* split : {"train", "val", "test"}) {
    std::string bytes;
    for (const auto& q : corpus)
      if (q.split == split) bytes += q.to_json() + "\n";
    write_file(out / "qa" / (std::string(split) + ".jsonl"), bytes);
  }
}

}  // namespace

std::string DatasetManifest::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::json::parse(config_json);
  j["counts"] = {{"charts", chart_count},
                 {"docs", doc_count},
                 {"questions", question_count},
                 {"questions_per_split", questions_per_split}};
  nlohmann::ordered_json file_list = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : files)
    file_list.push_back({{"path", path}, {"digest", digest}});
  j["files"] = file_list;
  j["corpus_digest"] = corpus_digest;
  return j.dump(2) + "\n";
}

DatasetManifest DatasetManifest::from_json_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestMismatch(std::string("bad manifest: ") + e.what());
  }
  DatasetManifest m;
  m.config_json = j.at("config").dump(2);
  m.chart_count = j.at("counts").at("charts");
  m.doc_count = j.at("counts").at("docs");
  m.question_count = j.at("counts").at("questions");
  for (const auto& [k, v] : j.at("counts").at("questions_per_split").items())
    m.questions_per_split[k] = v;
  for (const auto& f : j.at("files"))
    m.files.emplace_back(f.at("path"), f.at("digest"));
  m.corpus_digest = j.at("corpus_digest");
  return m;
}

DatasetManifest generate(const GenConfig& config, const std::string& out_dir,
                         int jobs) {
  config.validate();
  fs::path out(out_dir);
  for (const char* d : {"charts", "docs", "annotations", "qa", "images"})
    fs::create_directories(out / d);

  SharedInputs in;
  in.config = config;
  in.colors = ColorCatalog::load_file(config.colors_path);
  in.hierarchy = EntityHierarchy::build_from_edge_file(config.hierarchy_path);
  in.templates = load_registry_file(config.registry_path);
  std::sort(in.templates.begin(), in.templates.end(),
            [](const QuestionTemplate& a, const QuestionTemplate& b) {
              return a.template_id < b.template_id;
            });
  if (!config.table_pool_dir.empty()) {
    for (const auto& f : sorted_dir(config.table_pool_dir, ".csv"))
      in.table_pool.push_back(
          ingest_csv_file((fs::path(config.table_pool_dir) / f).string()));
  }
  for (const auto& f : sorted_dir(config.image_pool_dir)) {
    fs::copy_file(fs::path(config.image_pool_dir) / f, out / "images" / f,
                  fs::copy_options::overwrite_existing);
    in.image_pool.push_back("images/" + f);
  }
  if (in.image_pool.empty()) throw InvalidInput("image pool directory is empty");

  // Quota-based split assignment: rank doc ids by hash, then hand out exact
  // per-split counts so the proportions hold even for small corpora.
  std::vector<std::string> split_of(config.doc_count);
  {
    std::vector<std::size_t> order(config.doc_count);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      std::uint64_t ha = split_hash(doc_id_for(a), config.master_seed);
      std::uint64_t hb = split_hash(doc_id_for(b), config.master_seed);
      return ha != hb ? ha < hb : a < b;
    });
    std::size_t n = config.doc_count;
    auto n_train = static_cast<std::size_t>(std::llround(config.train_ratio * n));
    auto n_val = static_cast<std::size_t>(std::llround(config.val_ratio * n));
    n_train = std::min(n_train, n);
    n_val = std::min(n_val, n - n_train);
    for (std::size_t rank = 0; rank < n; ++rank)
      split_of[order[rank]] =
          rank < n_train ? "train" : rank < n_train + n_val ? "val" : "test";
  }

  // Balanced subtype deck: each subtype appears doc_count/30 times (±1), then
  // the deck is shuffled, so family proportions hold tightly at any scale.
  std::vector<std::size_t> subtype_of(config.doc_count);
  {
    const auto& catalog = subtype_catalog();
    for (std::size_t i = 0; i < subtype_of.size(); ++i)
      subtype_of[i] = i % catalog.size();
    Rng deck_rng(derive_seed(config.master_seed, 2, "subtype-deck"));
    for (std::size_t i = subtype_of.size(); i > 1; --i)
      std::swap(subtype_of[i - 1], subtype_of[deck_rng.below(i)]);
  }

  // phase 1: charts + questions, parallel per document
  std::vector<PerDoc> docs(config.doc_count);
  parallel_for(config.doc_count, jobs, [&](std::size_t i) {
    docs[i] = build_doc(in, i, split_of[i], subtype_catalog()[subtype_of[i]]);
    SvgDoc svg = render(docs[i].spec);
    write_file(out / "charts" / (docs[i].info.chart_id + ".svg"), svg.to_xml());
    write_file(out / "charts" / (docs[i].info.chart_id + ".json"),
               docs[i].info.to_json() + "\n");
    write_file(out / "charts" / (docs[i].info.chart_id + ".spec.json"),
               docs[i].spec.to_json());
  });

  // phase 2: serial yes/no rebalancing over the whole corpus
  std::vector<QuestionInfo> corpus;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // per doc
  for (const auto& d : docs) {
    ranges.emplace_back(corpus.size(), d.questions.size());
    corpus.insert(corpus.end(), d.questions.begin(), d.questions.end());
  }
  std::map<std::string, ChartInfo> charts;
  for (const auto& d : docs) charts[d.info.chart_id] = d.info;
  BiasReport report = debias(corpus, charts, in.templates,
                             derive_seed(config.master_seed, 0, "debias"));
  write_file(out / "debias_report.txt", report.to_text());

  // phase 3: page composition with the balanced questions
  parallel_for(config.doc_count, jobs, [&](std::size_t i) {
    const PerDoc& d = docs[i];
    std::vector<QaPair> qa;
    auto [begin, len] = ranges[i];
    for (std::size_t k = 0; k < len; ++k) {
      const QuestionInfo& q = corpus[begin + k];
      qa.push_back({q.question_id, q.question, q.answer});
    }
    SvgDoc chart_svg = render(d.spec);
    Rng page_rng(derive_seed(config.master_seed, i, "page"));
    ComposeResult page = compose_page(d.doc_id, d.info, chart_svg,
                                      d.spec.table.to_csv(), qa, in.image_pool,
                                      page_rng);
    write_file(out / "docs" / (d.doc_id + ".svg"), page.page.to_xml());
    write_file(out / "annotations" / (d.doc_id + ".xml"),
               write_annotation(page.record));
  });

  write_qa_files(out, corpus);
  write_file(out / "registry.txt", read_file(config.registry_path));

  DatasetManifest manifest = scan_manifest(out, config.to_json());
  write_file(out / "manifest.json", manifest.to_json());
  StatsReport st = stats(out_dir);
  write_file(out / "stats.json", st.to_json());
  write_file(out / "stats.txt", st.to_text());
  return manifest;
}

std::vector<QuestionInfo> load_corpus(const std::string& dataset_dir) {
  std::vector<QuestionInfo> corpus;
  for (const char* split : {"train", "val", "test"}) {
    fs::path qa = fs::path(dataset_dir) / "qa" / (std::string(split) + ".jsonl");
    if (!fs::exists(qa)) continue;
    std::ifstream in(qa);
    std::string line;
    while (std::getline(in, line))
      if (!trim(line).empty()) corpus.push_back(QuestionInfo::from_json(line));
  }
  return corpus;
}

BiasReport debias_dataset(const std::string& dataset_dir, int max_attempts) {
  fs::path out(dataset_dir);
  if (!fs::exists(out / "manifest.json"))
    throw InvalidInput("no manifest.json in " + dataset_dir);
  DatasetManifest manifest =
      DatasetManifest::from_json_file((out / "manifest.json").string());
  GenConfig config = GenConfig::from_json(manifest.config_json);

  auto templates = load_registry_file((out / "registry.txt").string());
  std::vector<QuestionInfo> corpus = load_corpus(dataset_dir);
  std::map<std::string, ChartInfo> charts;
  for (const auto& f : sorted_dir(out / "charts", ".json")) {
    if (f.size() > 10 && f.substr(f.size() - 10) == ".spec.json") continue;
    ChartInfo info = ChartInfo::from_json(read_file((out / "charts" / f).string()));
    charts[info.chart_id] = info;
  }

  BiasReport report = debias(corpus, charts, templates,
                             derive_seed(config.master_seed, 1, "redebias"),
                             max_attempts);
  write_qa_files(out, corpus);

  std::map<std::string, const QuestionInfo*> by_id;
  for (const auto& q : corpus) by_id[q.question_id] = &q;
  for (const auto& f : sorted_dir(out / "annotations", ".xml")) {
    fs::path path = out / "annotations" / f;
    DocumentRecord rec = parse_annotation(read_file(path.string()));
    bool changed = false;
    for (auto& pair : rec.qa) {
      auto it = by_id.find(pair.question_id);
      if (it == by_id.end()) continue;
      if (pair.question != it->second->question ||
          pair.answer != it->second->answer) {
        pair.question = it->second->question;
        pair.answer = it->second->answer;
        changed = true;
      }
    }
    if (changed) write_file(path, write_annotation(rec));
  }

  write_file(out / "debias_report.txt", report.to_text());
  DatasetManifest fresh = scan_manifest(out, manifest.config_json);
  write_file(out / "manifest.json", fresh.to_json());
  return report;
}

StatsReport stats(const std::string& dataset_dir) {
  fs::path out(dataset_dir);
  if (!fs::exists(out / "manifest.json"))
    throw InvalidInput("no manifest.json in " + dataset_dir);
  DatasetManifest manifest =
      DatasetManifest::from_json_file((out / "manifest.json").string());
  for (const auto& [path, digest] : manifest.files) {
    fs::path p = out / path;
    if (!fs::exists(p))
      throw ManifestMismatch("missing file " + path);
    if (hex16(fnv1a64(read_file(p.string()))) != digest)
      throw ManifestMismatch("digest mismatch for " + path);
  }

  StatsReport st;
  std::vector<QuestionInfo> corpus = load_corpus(dataset_dir);
  std::map<std::string, std::string> chart_split;
  for (const auto& q : corpus) {
    ++st.question_types[question_type_name(q.question_type)];
    ++st.answer_types[answer_type_name(q.answer_type)];
    ++st.difficulties[difficulty_name(q.difficulty)];
    chart_split[q.chart_id] = q.split;
  }
  st.question_total = corpus.size();

  for (const auto& f : sorted_dir(out / "charts", ".json")) {
    if (f.size() > 10 && f.substr(f.size() - 10) == ".spec.json") continue;
    ChartInfo info = ChartInfo::from_json(read_file((out / "charts" / f).string()));
    auto it = chart_split.find(info.chart_id);
    std::string split = it == chart_split.end() ? "unassigned" : it->second;
    const char* family = family_name(subtype_by_name(info.chart_type).family);
    ++st.family_by_split[split][family];
    ++st.chart_total;
  }
  return st;
}

std::string StatsReport::to_json() const {
  nlohmann::ordered_json j;
  j["chart_total"] = chart_total;
  j["question_total"] = question_total;
  j["family_by_split"] = family_by_split;
  j["question_types"] = question_types;
  j["answer_types"] = answer_types;
  j["difficulties"] = difficulties;
  return j.dump(2) + "\n";
}

std::string StatsReport::to_text() const {
  std::ostringstream o;
  o << "charts: " << chart_total << "\nquestions: " << question_total << "\n";
  o << "chart families by split:\n";
  std::map<std::string, std::size_t> family_totals;
  for (const auto& [split, fams] : family_by_split) {
    o << "  " << split << ":";
    for (const auto& [fam, n] : fams) {
      o << " " << fam << "=" << n;
      family_totals[fam] += n;
    }
    o << "\n";
  }
  o << "  overall:";
  for (const auto& [fam, n] : family_totals) {
    double share = chart_total ? 100.0 * static_cast<double>(n) /
                                     static_cast<double>(chart_total)
                               : 0.0;
    o << " " << fam << "=" << n << " (" << format_fixed(share, 2) << "%)";
  }
  o << "\n";
  auto table = [&](const char* title, const std::map<std::string, std::size_t>& m) {
    o << title << ":";
    for (const auto& [k, n] : m) o << " " << k << "=" << n;
    o << "\n";
  };
  table("question types", question_types);
  table("answer types", answer_types);
  table("difficulties", difficulties);
  return o.str();
}

}  // namespace chartdoc
