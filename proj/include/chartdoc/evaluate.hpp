#pragma once

#include <map>
#include <string>
#include <vector>

#include "chartdoc/question.hpp"

namespace chartdoc {

struct Prediction {
  std::string question_id;
  std::string answer;
};

// `question_id<TAB>answer` lines; '#' comments and blank lines skipped.
std::vector<Prediction> load_predictions(const std::string& path);

// Accuracy rule: text/boolean truths match case-insensitively after
// trimming; integer-valued numeric truths require exact equality;
// non-integer truths allow |pred - truth| <= 0.05 * |truth| (inclusive);
// zero truths use an absolute 1e-9 epsilon.
bool judge(const std::string& pred, const std::string& truth);

struct EvalCell {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct EvalReport {
  EvalCell overall;
  std::map<std::string, EvalCell> by_difficulty;
  std::map<std::string, EvalCell> by_question_type;
  std::map<std::string, EvalCell> by_answer_type;       // yes_no/elements/open_vocab
  std::map<std::string, EvalCell> by_judged_answer_type; // yes_no/numerical/string
  std::vector<std::string> unknown_question_ids;

  std::string to_json() const;
  std::string to_text() const;
};

// Unanswered questions count as incorrect; predictions whose question_id is
// not in the corpus are reported and excluded from all denominators.
EvalReport evaluate(const std::vector<Prediction>& preds,
                    const std::vector<QuestionInfo>& corpus);

}  // namespace chartdoc
