#include "chartdoc/evaluate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"
#include "json.hpp"

namespace chartdoc {

std::vector<Prediction> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open predictions file " + path);
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(line_no, 0, "expected question_id<TAB>answer");
    out.push_back({trim(line.substr(0, tab)), trim(line.substr(tab + 1))});
  }
  return out;
}

bool judge(const std::string& pred, const std::string& truth) {
  std::string t = trim(truth);
  if (auto tv = parse_number(t)) {
    auto pv = parse_number(pred);
    if (!pv) return false;
    if (*tv == 0.0) return std::abs(*pv) <= 1e-9;
    if (is_integral(*tv)) return *pv == *tv;
    return std::abs(*pv - *tv) <= 0.05 * std::abs(*tv);
  }
  return lower(t) == lower(trim(pred));
}

EvalReport evaluate(const std::vector<Prediction>& preds,
                    const std::vector<QuestionInfo>& corpus) {
  std::map<std::string, const QuestionInfo*> by_id;
  for (const auto& q : corpus) by_id[q.question_id] = &q;

  std::map<std::string, std::string> answers;
  EvalReport report;
  for (const auto& p : preds) {
    if (by_id.find(p.question_id) == by_id.end()) {
      report.unknown_question_ids.push_back(p.question_id);
      continue;
    }
    if (!answers.emplace(p.question_id, p.answer).second)
      throw InvalidInput("duplicate prediction for " + p.question_id);
  }

  for (const auto& q : corpus) {
    auto it = answers.find(q.question_id);
    bool correct = it != answers.end() && judge(it->second, q.answer);

    std::string judged_type;
    if (q.answer_type == AnswerType::yes_no)
      judged_type = "yes_no";
    else if (parse_number(q.answer))
      judged_type = "numerical";
    else
      judged_type = "string";

    auto bump = [&](EvalCell& c) {
      ++c.total;
      if (correct) ++c.correct;
    };
    bump(report.overall);
    bump(report.by_difficulty[difficulty_name(q.difficulty)]);
    bump(report.by_question_type[question_type_name(q.question_type)]);
    bump(report.by_answer_type[answer_type_name(q.answer_type)]);
    bump(report.by_judged_answer_type[judged_type]);
  }
  return report;
}

namespace {

nlohmann::ordered_json cells_json(const std::map<std::string, EvalCell>& cells) {
  nlohmann::ordered_json j;
  for (const auto& [name, c] : cells) {
    j[name] = {{"correct", c.correct},
               {"total", c.total},
               {"accuracy", c.accuracy()}};
  }
  return j;
}

void cells_text(std::ostringstream& out, const std::string& title,
                const std::map<std::string, EvalCell>& cells) {
  out << title << "\n";
  for (const auto& [name, c] : cells)
    out << "  " << name << ": " << c.correct << "/" << c.total << " = "
        << format_fixed(c.accuracy(), 4) << "\n";
}

}  // namespace

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["overall"] = {{"correct", overall.correct},
                  {"total", overall.total},
                  {"accuracy", overall.accuracy()}};
  j["by_difficulty"] = cells_json(by_difficulty);
  j["by_question_type"] = cells_json(by_question_type);
  j["by_answer_type"] = cells_json(by_answer_type);
  j["by_judged_answer_type"] = cells_json(by_judged_answer_type);
  j["unknown_question_ids"] = unknown_question_ids;
  return j.dump(2) + "\n";
}

std::string EvalReport::to_text() const {
  std::ostringstream out;
  out << "overall: " << overall.correct << "/" << overall.total << " = "
      << format_fixed(overall.accuracy(), 4) << "\n";
  cells_text(out, "by difficulty", by_difficulty);
  cells_text(out, "by question type", by_question_type);
  cells_text(out, "by answer type", by_answer_type);
  cells_text(out, "by judged answer type", by_judged_answer_type);
  if (!unknown_question_ids.empty()) {
    out << "unknown question ids (" << unknown_question_ids.size() << "):\n";
    for (const auto& id : unknown_question_ids) out << "  " << id << "\n";
  }
  return out.str();
}

}  // namespace chartdoc
