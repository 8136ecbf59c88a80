#include "chartdoc/question.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"
#include "json.hpp"

namespace chartdoc {

namespace {

const std::map<std::string, SlotKind>& slot_map() {
  static const std::map<std::string, SlotKind> m = {
      {"entity", SlotKind::entity},         {"entity_pair", SlotKind::entity_pair},
      {"legend", SlotKind::legend},         {"value", SlotKind::value},
      {"color", SlotKind::color},           {"entity_sort", SlotKind::entity_sort},
      {"legend_sort", SlotKind::legend_sort}, {"ordinal", SlotKind::ordinal},
      {"axis", SlotKind::axis}};
  return m;
}

}  // namespace

const char* slot_kind_name(SlotKind k) {
  for (const auto& [name, kind] : slot_map())
    if (kind == k) return name.c_str();
  return "?";
}

SlotKind parse_slot_kind(const std::string& s) {
  auto it = slot_map().find(s);
  if (it == slot_map().end()) throw RegistryParseError("unknown slot kind " + s);
  return it->second;
}

int slot_arity(SlotKind k) { return k == SlotKind::entity_pair ? 2 : 1; }

const char* question_type_name(QuestionType t) {
  return t == QuestionType::common_sense ? "common_sense" : "reasoning";
}
QuestionType parse_question_type(const std::string& s) {
  if (s == "reasoning") return QuestionType::reasoning;
  if (s == "common_sense") return QuestionType::common_sense;
  throw RegistryParseError("unknown question type " + s);
}

const char* answer_type_name(AnswerType t) {
  switch (t) {
    case AnswerType::yes_no: return "yes_no";
    case AnswerType::elements: return "elements";
    case AnswerType::open_vocab: return "open_vocab";
  }
  return "?";
}
AnswerType parse_answer_type(const std::string& s) {
  if (s == "yes_no") return AnswerType::yes_no;
  if (s == "elements") return AnswerType::elements;
  if (s == "open_vocab") return AnswerType::open_vocab;
  throw RegistryParseError("unknown answer type " + s);
}

const char* difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::beginner: return "beginner";
    case Difficulty::elementary: return "elementary";
    case Difficulty::intermediate: return "intermediate";
    case Difficulty::advanced: return "advanced";
    case Difficulty::expert: return "expert";
  }
  return "?";
}
Difficulty parse_difficulty(const std::string& s) {
  for (Difficulty d : {Difficulty::beginner, Difficulty::elementary,
                       Difficulty::intermediate, Difficulty::advanced,
                       Difficulty::expert})
    if (s == difficulty_name(d)) return d;
  throw RegistryParseError("unknown difficulty " + s);
}

std::string ordinal_text(int n) {
  int mod100 = n % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
    }
  }
  return std::to_string(n) + suffix;
}

namespace {

std::size_t placeholder_count(const std::string& text) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    std::size_t end = text.find('>', pos);
    if (end == std::string::npos) break;
    ++count;
    pos = end + 1;
  }
  return count;
}

std::set<std::string> expand_applies(const std::string& value, int line_no) {
  std::set<std::string> out;
  auto family_names_for = [](const std::string& tok,
                             std::vector<std::string>& dst) -> bool {
    for (ChartFamily f : {ChartFamily::bar, ChartFamily::line, ChartFamily::pie,
                          ChartFamily::scatter, ChartFamily::box,
                          ChartFamily::combination}) {
      if (tok == family_name(f)) {
        dst = subtypes_of_family(f);
        return true;
      }
    }
    return false;
  };
  static const std::vector<std::string> single = {
      "Vertical Bar", "Horizontal Bar", "Polar Coordinates Vertical Bar",
      "Polar Coordinates Horizontal Bar", "Waterfall Bar", "Single Line",
      "Smooth Single Line", "Marker Single Line", "Best Value Single Line",
      "Interval Highlight Single Line", "Simple Scatter", "Bubble Scatter",
      "Check Bubble Scatter"};
  static const std::vector<std::string> multi = {
      "Stack Vertical Bar", "Stack Horizontal Bar", "Group Vertical Bar",
      "Group Horizontal Bar", "Polar Coordinates Stack Vertical Bar",
      "Polar Coordinates Stack Horizontal Bar", "MultiLine",
      "Best Value MultiLine", "Multi Scatter", "Line Bar"};

  std::vector<std::pair<std::string, bool>> tokens;  // (token, exclude)
  for (const auto& part : split(value, ',')) {
    std::string tok = trim(part);
    if (tok.empty()) continue;
    bool exclude = tok[0] == '-';
    if (exclude) tok = trim(tok.substr(1));
    tokens.emplace_back(tok, exclude);
  }
  auto resolve = [&](const std::string& tok) -> std::vector<std::string> {
    if (tok == "all") {
      std::vector<std::string> names;
      for (const auto& st : subtype_catalog()) names.push_back(st.name);
      return names;
    }
    if (tok == "axis") {
      std::vector<std::string> names;
      for (const auto& st : subtype_catalog())
        if (st.family != ChartFamily::pie) names.push_back(st.name);
      return names;
    }
    if (tok == "single") return single;
    if (tok == "multi") return multi;
    std::vector<std::string> fam;
    if (family_names_for(tok, fam)) return fam;
    for (const auto& st : subtype_catalog())
      if (st.name == tok) return {tok};
    throw ParseError(line_no, 0, "unknown applies token '" + tok + "'");
  };
  for (const auto& [tok, exclude] : tokens)
    if (!exclude)
      for (const auto& n : resolve(tok)) out.insert(n);
  for (const auto& [tok, exclude] : tokens)
    if (exclude)
      for (const auto& n : resolve(tok)) out.erase(n);
  return out;
}

void validate_template(const QuestionTemplate& t) {
  auto bad = [&](const std::string& why) {
    throw InvariantViolation("template " + std::to_string(t.template_id) + ": " +
                             why);
  };
  std::size_t arity = 0;
  for (SlotKind k : t.slots) arity += static_cast<std::size_t>(slot_arity(k));
  if (placeholder_count(t.text) != arity)
    bad("placeholder count does not match slot arity");
  bool has_sort = std::any_of(t.slots.begin(), t.slots.end(), [](SlotKind k) {
    return k == SlotKind::entity_sort || k == SlotKind::legend_sort;
  });
  if (has_sort != (t.question_type == QuestionType::common_sense))
    bad("question type must be common_sense iff a sort slot is present");
  if ((t.question_type == QuestionType::common_sense) !=
      (t.difficulty == Difficulty::expert))
    bad("expert difficulty iff common_sense");
  if (t.applicable_subtypes.empty()) bad("empty applicability set");
  if (t.text.empty()) bad("empty text");
}

}  // namespace

std::vector<QuestionTemplate> load_registry(std::istream& in) {
  std::vector<QuestionTemplate> out;
  std::set<int> seen_ids;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t != "[template]")
      throw RegistryParseError("line " + std::to_string(line_no) +
                               ": expected [template], got '" + t + "'");
    QuestionTemplate tpl;
    std::vector<std::string> program_lines;
    bool in_program = false, closed = false;
    bool saw_id = false;
    while (std::getline(in, line)) {
      ++line_no;
      std::string s = trim(line);
      if (s.empty() || s[0] == '#') continue;
      if (s == "[end]") {
        closed = true;
        break;
      }
      if (in_program) {
        program_lines.push_back(s);
        continue;
      }
      auto colon = s.find(':');
      if (colon == std::string::npos)
        throw RegistryParseError("line " + std::to_string(line_no) +
                                 ": expected key: value");
      std::string key = trim(s.substr(0, colon));
      std::string value = trim(s.substr(colon + 1));
      if (key == "id") {
        tpl.template_id = std::stoi(value);
        saw_id = true;
      } else if (key == "type") {
        tpl.question_type = parse_question_type(value);
      } else if (key == "answer") {
        tpl.answer_type = parse_answer_type(value);
      } else if (key == "difficulty") {
        tpl.difficulty = parse_difficulty(value);
      } else if (key == "slots") {
        for (const auto& part : split(value, ',')) {
          std::string tok = trim(part);
          if (!tok.empty()) tpl.slots.push_back(parse_slot_kind(tok));
        }
      } else if (key == "applies") {
        tpl.applicable_subtypes = expand_applies(value, line_no);
      } else if (key == "text") {
        tpl.text = value;
      } else if (key == "program") {
        in_program = true;
      } else {
        throw RegistryParseError("line " + std::to_string(line_no) +
                                 ": unknown key '" + key + "'");
      }
    }
    if (!closed)
      throw RegistryParseError("unterminated [template] block at end of file");
    if (!saw_id) throw RegistryParseError("template without id");
    if (!seen_ids.insert(tpl.template_id).second)
      throw RegistryParseError("duplicate template id " +
                               std::to_string(tpl.template_id));
    try {
      tpl.program = parse_program(program_lines);
    } catch (const ParseError& e) {
      throw RegistryParseError("template " + std::to_string(tpl.template_id) +
                               ": " + e.what());
    }
    validate_template(tpl);
    out.push_back(std::move(tpl));
  }
  if (out.empty()) throw RegistryParseError("registry contains no templates");
  return out;
}

std::vector<QuestionTemplate> load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open registry file " + path);
  return load_registry(in);
}

Difficulty classify_difficulty(const QuestionTemplate& t) {
  if (t.question_type == QuestionType::common_sense) return Difficulty::expert;

  static const std::set<std::string> agg = {"max",    "min", "median", "avg",
                                            "sum",    "argmax", "argmin"};
  static const std::set<std::string> arith = {"diff", "ratio"};
  static const std::set<std::string> pred = {"greaterThan", "lessThan",
                                             "equalsText"};
  static const std::set<std::string> pred_agg = {"countGreater", "countLess"};
  static const std::set<std::string> subset = {
      "getValueByLegend",  "getIntervalValueByEntity", "getEntitiesByParent",
      "getLegendsByParent", "filterGreater",           "filterLess"};

  auto in_set = [](const std::set<std::string>& s, const std::string& n) {
    return s.count(n) > 0;
  };
  const auto& steps = t.program.steps;
  auto is_compute = [&](const std::string& n) {
    return in_set(agg, n) || in_set(arith, n) || in_set(pred, n) ||
           in_set(pred_agg, n);
  };
  auto produces_compound = [&](const std::string& n) {
    return in_set(agg, n) || in_set(arith, n) || in_set(pred_agg, n);
  };
  for (const auto& step : steps) {
    if (!is_compute(step.name)) continue;
    for (const auto& a : step.args)
      if (a.kind == OpArg::Kind::step &&
          produces_compound(steps[a.index - 1].name))
        return Difficulty::advanced;
  }
  for (const auto& step : steps)
    if (in_set(subset, step.name) || in_set(pred_agg, step.name))
      return Difficulty::intermediate;
  for (const auto& step : steps)
    if (in_set(agg, step.name) || in_set(arith, step.name))
      return Difficulty::elementary;
  return Difficulty::beginner;
}

namespace {

std::vector<std::string> distinct_parents(const std::vector<std::string>& parents) {
  std::vector<std::string> out;
  for (const auto& p : parents)
    if (!p.empty() && std::find(out.begin(), out.end(), p) == out.end())
      out.push_back(p);
  return out;
}

bool slot_domain_nonempty(SlotKind k, const ChartInfo& info) {
  switch (k) {
    case SlotKind::entity: return !info.entity_names.empty();
    case SlotKind::entity_pair: return info.entity_names.size() >= 2;
    case SlotKind::legend: return !info.legend_labels.empty();
    case SlotKind::value: return !info.data.empty() && !info.data[0].empty();
    case SlotKind::color: return !info.colors.empty();
    case SlotKind::entity_sort:
      return !distinct_parents(info.entity_parents).empty();
    case SlotKind::legend_sort:
      return !distinct_parents(info.legend_parents).empty();
    case SlotKind::ordinal: return !info.entity_names.empty();
    case SlotKind::axis:
      return subtype_orientation(info.chart_type) != "none";
  }
  return false;
}

}  // namespace

bool template_applicable(const QuestionTemplate& t, const ChartInfo& info) {
  if (t.applicable_subtypes.count(info.chart_type) == 0) return false;
  for (SlotKind k : t.slots)
    if (!slot_domain_nonempty(k, info)) return false;
  return true;
}

QuestionInfo instantiate(const QuestionTemplate& t, const ChartInfo& info,
                         Rng& rng) {
  if (t.applicable_subtypes.count(info.chart_type) == 0)
    throw NotApplicable("template " + std::to_string(t.template_id) +
                        " does not apply to " + info.chart_type);
  QuestionInfo q;
  q.chart_id = info.chart_id;
  q.chart_type = info.chart_type;
  q.template_id = t.template_id;
  q.question_type = t.question_type;
  q.answer_type = t.answer_type;
  q.difficulty = t.difficulty;
  q.question_id = info.chart_id + "_" + std::to_string(t.template_id);

  auto empty_domain = [&](const char* kind) {
    throw EmptyFillDomain("template " + std::to_string(t.template_id) +
                          ": no fills for slot kind " + kind + " on chart " +
                          info.chart_id);
  };
  for (SlotKind k : t.slots) {
    switch (k) {
      case SlotKind::entity: {
        if (info.entity_names.empty()) empty_domain("entity");
        q.fills.push_back(rng.pick(info.entity_names));
        break;
      }
      case SlotKind::entity_pair: {
        if (info.entity_names.size() < 2) empty_domain("entity_pair");
        std::uint64_t a = rng.below(info.entity_names.size());
        std::uint64_t b = rng.below(info.entity_names.size() - 1);
        if (b >= a) ++b;
        if (a > b) std::swap(a, b);  // axis order
        q.fills.push_back(info.entity_names[a]);
        q.fills.push_back(info.entity_names[b]);
        break;
      }
      case SlotKind::legend: {
        if (info.legend_labels.empty()) empty_domain("legend");
        q.fills.push_back(rng.pick(info.legend_labels));
        break;
      }
      case SlotKind::value: {
        if (info.data.empty() || info.data[0].empty()) empty_domain("value");
        double lo = info.data[0][0], hi = lo;
        for (const auto& row : info.data)
          for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        q.fills.push_back(format_fixed(round2(rng.uniform(lo, hi)), 2));
        break;
      }
      case SlotKind::color: {
        if (info.colors.empty()) empty_domain("color");
        std::vector<std::string> names;
        for (const auto& c : info.colors) names.push_back(c.name);
        q.fills.push_back(rng.pick(names));
        break;
      }
      case SlotKind::entity_sort:
      case SlotKind::legend_sort: {
        auto domain = distinct_parents(k == SlotKind::entity_sort
                                           ? info.entity_parents
                                           : info.legend_parents);
        if (domain.empty()) empty_domain(slot_kind_name(k));
        q.fills.push_back(rng.pick(domain));
        break;
      }
      case SlotKind::ordinal: {
        if (info.entity_names.empty()) empty_domain("ordinal");
        q.fills.push_back(
            ordinal_text(1 + static_cast<int>(rng.below(info.entity_names.size()))));
        break;
      }
      case SlotKind::axis: {
        if (subtype_orientation(info.chart_type) == "none") empty_domain("axis");
        q.fills.push_back(rng.chance(0.5) ? std::string("horizontal")
                                          : std::string("vertical"));
        break;
      }
    }
  }

  q.question = substitute_fills(t, q.fills);
  return q;
}

std::string substitute_fills(const QuestionTemplate& t,
                             const std::vector<std::string>& fills) {
  const std::string& text = t.text;
  std::string assembled;
  std::size_t pos = 0, fill_i = 0;
  while (pos < text.size()) {
    if (text[pos] == '<') {
      std::size_t end = text.find('>', pos);
      if (end != std::string::npos) {
        if (fill_i >= fills.size())
          throw InvariantViolation("template " + std::to_string(t.template_id) +
                                   ": more placeholders than fills");
        assembled += fills[fill_i++];
        pos = end + 1;
        continue;
      }
    }
    assembled += text[pos++];
  }
  if (fill_i != fills.size())
    throw InvariantViolation("template " + std::to_string(t.template_id) +
                             ": unused fills");
  return assembled;
}

std::vector<std::size_t> fill_positions(const QuestionTemplate& t, SlotKind k) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (SlotKind s : t.slots) {
    for (int i = 0; i < slot_arity(s); ++i) {
      if (s == k) out.push_back(pos);
      ++pos;
    }
  }
  return out;
}

std::string QuestionInfo::to_json() const {
  nlohmann::ordered_json j;
  j["question_id"] = question_id;
  j["chart_id"] = chart_id;
  j["chart_type"] = chart_type;
  j["template_id"] = template_id;
  j["question"] = question;
  j["answer"] = answer;
  j["question_type"] = question_type_name(question_type);
  j["answer_type"] = answer_type_name(answer_type);
  j["difficulty"] = difficulty_name(difficulty);
  j["fills"] = fills;
  j["split"] = split;
  return j.dump();
}

QuestionInfo QuestionInfo::from_json(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("bad question record: ") + e.what());
  }
  QuestionInfo q;
  q.question_id = j.at("question_id").get<std::string>();
  q.chart_id = j.at("chart_id").get<std::string>();
  q.chart_type = j.at("chart_type").get<std::string>();
  q.template_id = j.at("template_id").get<int>();
  q.question = j.at("question").get<std::string>();
  q.answer = j.at("answer").get<std::string>();
  q.question_type = parse_question_type(j.at("question_type").get<std::string>());
  q.answer_type = parse_answer_type(j.at("answer_type").get<std::string>());
  q.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
  q.fills = j.at("fills").get<std::vector<std::string>>();
  q.split = j.at("split").get<std::string>();
  return q;
}

}  // namespace chartdoc
