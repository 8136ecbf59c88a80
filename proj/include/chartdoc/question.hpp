#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "chartdoc/answer.hpp"
#include "chartdoc/chart.hpp"
#include "chartdoc/rng.hpp"

namespace chartdoc {

enum class SlotKind {
  entity,
  entity_pair,
  legend,
  value,
  color,
  entity_sort,  // parent-class name from the taxonomy
  legend_sort,
  ordinal,
  axis
};

enum class QuestionType { reasoning, common_sense };
enum class AnswerType { yes_no, elements, open_vocab };
enum class Difficulty { beginner, elementary, intermediate, advanced, expert };

const char* slot_kind_name(SlotKind k);
SlotKind parse_slot_kind(const std::string& s);
int slot_arity(SlotKind k);  // placeholders consumed: entity_pair = 2, else 1

const char* question_type_name(QuestionType t);
QuestionType parse_question_type(const std::string& s);
const char* answer_type_name(AnswerType t);
AnswerType parse_answer_type(const std::string& s);
const char* difficulty_name(Difficulty d);
Difficulty parse_difficulty(const std::string& s);

struct QuestionTemplate {
  int template_id = 0;
  std::string text;  // `<slot>` placeholders, positional
  std::vector<SlotKind> slots;
  QuestionType question_type = QuestionType::reasoning;
  AnswerType answer_type = AnswerType::open_vocab;
  Difficulty difficulty = Difficulty::beginner;
  std::set<std::string> applicable_subtypes;
  SolutionProgram program;
};

struct QuestionInfo {
  std::string question;
  std::string answer;  // serialized Value; empty until solved
  std::string chart_id;
  std::string chart_type;
  std::string question_id;  // chart_id + "_" + template_id
  QuestionType question_type = QuestionType::reasoning;
  AnswerType answer_type = AnswerType::open_vocab;
  int template_id = 0;
  Difficulty difficulty = Difficulty::beginner;
  std::vector<std::string> fills;
  std::string split;  // train / val / test

  std::string to_json() const;  // one line, stable key order
  static QuestionInfo from_json(const std::string& line);
};

// Registry: `[template]` ... `[end]` blocks of `key: value` lines plus a
// `program:` section; `applies:` takes subtype names, family names, the
// groups all/axis/single/multi, and `-token` exclusions.
std::vector<QuestionTemplate> load_registry(std::istream& in);
std::vector<QuestionTemplate> load_registry_file(const std::string& path);

// Rule priority: common-sense -> expert; compute-over-compute -> advanced;
// subset/predicate-count ops -> intermediate; aggregate/arithmetic ->
// elementary; otherwise beginner.
Difficulty classify_difficulty(const QuestionTemplate& t);

// Subtype applicability plus non-empty fill domains for every slot.
bool template_applicable(const QuestionTemplate& t, const ChartInfo& info);

// Fills every slot from the chart's domains and assembles the question
// text; the answer is left unset.
QuestionInfo instantiate(const QuestionTemplate& t, const ChartInfo& info,
                         Rng& rng);

// "3" -> "3rd" etc.; ordinal slot fills use this rendering.
std::string ordinal_text(int n);

// Positional substitution of fills into the template text.
std::string substitute_fills(const QuestionTemplate& t,
                             const std::vector<std::string>& fills);

// Fill positions (into the fills vector) of a given slot kind; entity_pair
// occupies two consecutive positions.
std::vector<std::size_t> fill_positions(const QuestionTemplate& t, SlotKind k);

}  // namespace chartdoc
