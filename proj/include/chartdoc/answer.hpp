#pragma once

#include <string>
#include <vector>

#include "chartdoc/chart.hpp"

namespace chartdoc {

// Result of one program step. Numeric lists carry a parallel label vector
// (axis labels) so argmax/argmin can name the winning element.
struct Value {
  enum class Kind { number, text, boolean, num_list, text_list };
  Kind kind = Kind::number;
  double num = 0;
  bool flag = false;
  std::string txt;
  std::vector<double> nums;
  std::vector<std::string> labels;  // parallel to nums
  std::vector<std::string> texts;

  static Value make_number(double v);
  static Value make_text(std::string s);
  static Value make_bool(bool b);
  static Value make_list(std::vector<double> v, std::vector<std::string> l);
  static Value make_texts(std::vector<std::string> t);
  bool is_list() const { return kind == Kind::num_list || kind == Kind::text_list; }
};

struct OpArg {
  enum class Kind { fill, step, number, text };
  Kind kind = Kind::number;
  int index = 0;  // 1-based for fill/step
  double num = 0;
  std::string txt;
};

struct AtomicOp {
  std::string name;
  std::vector<OpArg> args;
};

struct SolutionProgram {
  std::vector<AtomicOp> steps;
};

// One step per line: `s<k> = opName(arg, ...)`; args are fill<i>, s<j>,
// numbers, or quoted strings. Steps must be numbered 1..n in order and may
// reference only earlier steps.
SolutionProgram parse_program(const std::vector<std::string>& lines);

// True when `name` is in the closed op catalog.
bool known_op(const std::string& name);

struct ExecContext {
  const ChartInfo* info = nullptr;
  const std::vector<std::string>* fills = nullptr;
  std::vector<Value> results;  // earlier step results
};

Value run_step(const AtomicOp& op, ExecContext& ctx);

// Runs all steps; the final number is rounded half-up to 2 decimals.
Value solve(const SolutionProgram& program, const std::vector<std::string>& fills,
            const ChartInfo& info);

// "Yes"/"No" for booleans, canonical numbers, text verbatim.
std::string value_to_string(const Value& v);

}  // namespace chartdoc
