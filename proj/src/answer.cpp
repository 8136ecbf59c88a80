#include "chartdoc/answer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "chartdoc/errors.hpp"
#include "chartdoc/text.hpp"

namespace chartdoc {

Value Value::make_number(double v) {
  Value out;
  out.kind = Kind::number;
  out.num = v;
  return out;
}
Value Value::make_text(std::string s) {
  Value out;
  out.kind = Kind::text;
  out.txt = std::move(s);
  return out;
}
Value Value::make_bool(bool b) {
  Value out;
  out.kind = Kind::boolean;
  out.flag = b;
  return out;
}
Value Value::make_list(std::vector<double> v, std::vector<std::string> l) {
  Value out;
  out.kind = Kind::num_list;
  out.nums = std::move(v);
  out.labels = std::move(l);
  return out;
}
Value Value::make_texts(std::vector<std::string> t) {
  Value out;
  out.kind = Kind::text_list;
  out.texts = std::move(t);
  return out;
}

namespace {

const std::set<std::string>& op_names() {
  static const std::set<std::string> names = {
      "getEntityValue",    "getValueByEntity", "getValueByLegend",
      "getIntervalValueByEntity", "getAllValues", "getEntitiesByParent",
      "getLegendsByParent", "colorOf",          "entityAt",
      "countEntities",     "max",              "min",
      "median",            "avg",              "sum",
      "diff",              "ratio",            "countGreater",
      "countLess",         "greaterThan",      "lessThan",
      "equalsText",        "argmax",           "argmin",
      "filterGreater",     "filterLess",       "orientation"};
  return names;
}

OpArg parse_arg(const std::string& raw, int line_no) {
  std::string t = trim(raw);
  if (t.empty()) throw ParseError(line_no, 0, "empty operand");
  OpArg a;
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
    a.kind = OpArg::Kind::text;
    a.txt = t.substr(1, t.size() - 2);
    return a;
  }
  auto ref = [&](const char* prefix, OpArg::Kind kind) -> bool {
    std::size_t n = std::string(prefix).size();
    if (t.rfind(prefix, 0) != 0 || t.size() <= n) return false;
    for (std::size_t i = n; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    a.kind = kind;
    a.index = std::stoi(t.substr(n));
    return true;
  };
  if (ref("fill", OpArg::Kind::fill)) return a;
  if (ref("s", OpArg::Kind::step)) return a;
  if (auto v = parse_number(t)) {
    a.kind = OpArg::Kind::number;
    a.num = *v;
    return a;
  }
  a.kind = OpArg::Kind::text;
  a.txt = t;
  return a;
}

}  // namespace

bool known_op(const std::string& name) { return op_names().count(name) > 0; }

SolutionProgram parse_program(const std::vector<std::string>& lines) {
  SolutionProgram prog;
  int line_no = 0;
  for (const auto& raw : lines) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, 0, "expected `s<k> = op(...)`");
    std::string lhs = trim(line.substr(0, eq));
    if (lhs.size() < 2 || lhs[0] != 's')
      throw ParseError(line_no, 0, "step name must be s<k>");
    int step_no = 0;
    try {
      step_no = std::stoi(lhs.substr(1));
    } catch (...) {
      throw ParseError(line_no, 0, "step name must be s<k>");
    }
    if (step_no != static_cast<int>(prog.steps.size()) + 1)
      throw ParseError(line_no, 0, "steps must be numbered consecutively from s1");
    std::string rhs = trim(line.substr(eq + 1));
    auto open = rhs.find('(');
    if (open == std::string::npos || rhs.back() != ')')
      throw ParseError(line_no, static_cast<int>(eq), "expected op(args)");
    AtomicOp op;
    op.name = trim(rhs.substr(0, open));
    if (!known_op(op.name))
      throw ParseError(line_no, 0, "unknown operation " + op.name);
    std::string inner = rhs.substr(open + 1, rhs.size() - open - 2);
    if (!trim(inner).empty()) {
      for (const auto& part : split(inner, ',')) {
        OpArg a = parse_arg(part, line_no);
        if (a.kind == OpArg::Kind::step && a.index >= step_no)
          throw ParseError(line_no, 0, "step reference must look backward");
        op.args.push_back(a);
      }
    }
    prog.steps.push_back(std::move(op));
  }
  if (prog.steps.empty()) throw ParseError(0, 0, "program has no steps");
  return prog;
}

namespace {

bool is_box_chart(const ChartInfo& info) {
  return subtype_by_name(info.chart_type).family == ChartFamily::box;
}

std::size_t entity_index(const ChartInfo& info, const std::string& name) {
  for (std::size_t i = 0; i < info.entity_names.size(); ++i)
    if (info.entity_names[i] == name) return i;
  throw UnknownLabel(name);
}

// The values a single entity contributes: box charts expose the five
// rendered summary statistics, other charts the raw column.
std::vector<double> entity_values(const ChartInfo& info, std::size_t col) {
  if (is_box_chart(info)) {
    auto it = info.dsc.find("box_" + info.entity_names[col]);
    if (it == info.dsc.end()) throw UnknownLabel(info.entity_names[col]);
    std::vector<double> out;
    for (const auto& p : split(it->second, ',')) out.push_back(*parse_number(p));
    return out;
  }
  std::vector<double> out;
  for (const auto& row : info.data) out.push_back(row[col]);
  return out;
}

Value resolve(const OpArg& a, const ExecContext& ctx) {
  switch (a.kind) {
    case OpArg::Kind::fill: {
      if (!ctx.fills || a.index < 1 ||
          a.index > static_cast<int>(ctx.fills->size()))
        throw TypeMismatch("fill" + std::to_string(a.index) + " undefined");
      return Value::make_text((*ctx.fills)[a.index - 1]);
    }
    case OpArg::Kind::step: {
      if (a.index < 1 || a.index > static_cast<int>(ctx.results.size()))
        throw TypeMismatch("s" + std::to_string(a.index) + " undefined");
      return ctx.results[a.index - 1];
    }
    case OpArg::Kind::number: return Value::make_number(a.num);
    case OpArg::Kind::text: return Value::make_text(a.txt);
  }
  throw TypeMismatch("bad operand");
}

double as_number(const Value& v) {
  if (v.kind == Value::Kind::number) return v.num;
  if (v.kind == Value::Kind::text) {
    if (auto p = parse_number(v.txt)) return *p;
    throw TypeMismatch("not a number: " + v.txt);
  }
  throw TypeMismatch("expected a number");
}

std::string as_text(const Value& v) {
  if (v.kind == Value::Kind::text) return v.txt;
  if (v.kind == Value::Kind::number) return format_number(v.num);
  if (v.kind == Value::Kind::boolean) return v.flag ? "Yes" : "No";
  throw TypeMismatch("expected text");
}

const Value& as_list(const Value& v, const char* op) {
  if (v.kind != Value::Kind::num_list)
    throw TypeMismatch(std::string(op) + " expects a value list");
  return v;
}

const std::vector<double>& nonempty(const Value& v, const char* op) {
  if (v.nums.empty()) throw EmptyList(op);
  return v.nums;
}

// Entity names, or the contents of a text-list step result (class members).
std::vector<std::string> as_names(const Value& v) {
  if (v.kind == Value::Kind::text_list) return v.texts;
  return {as_text(v)};
}

Value lookup_by_entity(const ChartInfo& info, const Value& who) {
  std::vector<std::string> names = as_names(who);
  std::vector<double> vals;
  std::vector<std::string> labels;
  // axis order, not request order
  std::vector<bool> wanted(info.entity_names.size(), false);
  for (const auto& n : names) wanted[entity_index(info, n)] = true;
  for (std::size_t c = 0; c < info.entity_names.size(); ++c) {
    if (!wanted[c]) continue;
    for (double v : entity_values(info, c)) {
      vals.push_back(v);
      labels.push_back(info.entity_names[c]);
    }
  }
  if (names.size() == 1 && vals.size() == 1) return Value::make_number(vals[0]);
  return Value::make_list(std::move(vals), std::move(labels));
}

Value lookup_by_legend(const ChartInfo& info, const Value& who) {
  std::vector<std::string> names = as_names(who);
  std::vector<bool> wanted(info.legend_labels.size(), false);
  for (const auto& n : names) {
    bool found = false;
    for (std::size_t r = 0; r < info.legend_labels.size(); ++r)
      if (info.legend_labels[r] == n) {
        wanted[r] = true;
        found = true;
      }
    if (!found) throw UnknownLabel(n);
  }
  std::vector<double> vals;
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < info.legend_labels.size(); ++r) {
    if (!wanted[r]) continue;
    for (std::size_t c = 0; c < info.entity_names.size(); ++c) {
      vals.push_back(info.data[r][c]);
      labels.push_back(info.entity_names[c]);
    }
  }
  return Value::make_list(std::move(vals), std::move(labels));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

int parse_ordinal(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0) throw TypeMismatch("not an ordinal: " + s);
  return std::stoi(s.substr(0, i));
}

}  // namespace

Value run_step(const AtomicOp& op, ExecContext& ctx) {
  const ChartInfo& info = *ctx.info;
  auto arg = [&](std::size_t i) -> Value {
    if (i >= op.args.size())
      throw TypeMismatch(op.name + ": missing operand " + std::to_string(i + 1));
    return resolve(op.args[i], ctx);
  };
  const std::string& n = op.name;

  if (n == "getEntityValue") {
    int idx = static_cast<int>(as_number(arg(0)));
    if (!ctx.fills || idx < 1 || idx > static_cast<int>(ctx.fills->size()))
      throw TypeMismatch("getEntityValue: no fill " + std::to_string(idx));
    return Value::make_text((*ctx.fills)[idx - 1]);
  }
  if (n == "getValueByEntity") return lookup_by_entity(info, arg(0));
  if (n == "getValueByLegend") return lookup_by_legend(info, arg(0));
  if (n == "getIntervalValueByEntity") {
    std::size_t a = entity_index(info, as_text(arg(0)));
    std::size_t b = entity_index(info, as_text(arg(1)));
    if (a > b) std::swap(a, b);
    std::vector<double> vals;
    std::vector<std::string> labels;
    for (std::size_t c = a; c <= b; ++c) {
      vals.push_back(info.data[0][c]);
      labels.push_back(info.entity_names[c]);
    }
    return Value::make_list(std::move(vals), std::move(labels));
  }
  if (n == "getAllValues") {
    std::vector<double> vals;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < info.entity_names.size(); ++c)
      for (double v : entity_values(info, c)) {
        vals.push_back(v);
        labels.push_back(info.entity_names[c]);
      }
    return Value::make_list(std::move(vals), std::move(labels));
  }
  if (n == "getEntitiesByParent" || n == "getLegendsByParent") {
    bool legends = n == "getLegendsByParent";
    std::string parent = as_text(arg(0));
    const auto& names = legends ? info.legend_labels : info.entity_names;
    const auto& parents = legends ? info.legend_parents : info.entity_parents;
    if (parents.size() != names.size())
      throw UnknownLabel(parent);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (parents[i] == parent) out.push_back(names[i]);
    if (out.empty()) throw UnknownLabel(parent);
    return Value::make_texts(std::move(out));
  }
  if (n == "colorOf") {
    std::string series = as_text(arg(0));
    for (std::size_t r = 0; r < info.legend_labels.size(); ++r)
      if (info.legend_labels[r] == series && r < info.colors.size())
        return Value::make_text(info.colors[r].name);
    for (std::size_t c = 0; c < info.entity_names.size(); ++c)
      if (info.entity_names[c] == series && c < info.colors.size())
        return Value::make_text(info.colors[c].name);
    throw UnknownLabel(series);
  }
  if (n == "entityAt") {
    Value v = arg(0);
    int ord = v.kind == Value::Kind::number ? static_cast<int>(v.num)
                                            : parse_ordinal(as_text(v));
    if (ord < 1 || ord > static_cast<int>(info.entity_names.size()))
      throw UnknownLabel("position " + std::to_string(ord));
    return Value::make_text(info.entity_names[ord - 1]);
  }
  if (n == "countEntities")
    return Value::make_number(static_cast<double>(info.entity_names.size()));
  if (n == "orientation")
    return Value::make_text(subtype_orientation(info.chart_type));

  if (n == "max" || n == "min" || n == "median" || n == "avg" || n == "sum") {
    Value list = arg(0);
    const auto& vals = nonempty(as_list(list, n.c_str()), n.c_str());
    if (n == "max") return Value::make_number(*std::max_element(vals.begin(), vals.end()));
    if (n == "min") return Value::make_number(*std::min_element(vals.begin(), vals.end()));
    if (n == "median") return Value::make_number(median_of(vals));
    double total = 0;
    for (double v : vals) total += v;
    if (n == "sum") return Value::make_number(total);
    return Value::make_number(total / static_cast<double>(vals.size()));
  }
  if (n == "argmax" || n == "argmin") {
    Value held = arg(0);
    const Value& list = as_list(held, n.c_str());
    nonempty(list, n.c_str());
    if (list.labels.size() != list.nums.size())
      throw TypeMismatch(n + ": list has no labels");
    std::size_t best = 0;
    for (std::size_t i = 1; i < list.nums.size(); ++i) {
      // first occurrence wins on ties
      if (n == "argmax" ? list.nums[i] > list.nums[best]
                        : list.nums[i] < list.nums[best])
        best = i;
    }
    return Value::make_text(list.labels[best]);
  }
  if (n == "diff") return Value::make_number(std::abs(as_number(arg(0)) - as_number(arg(1))));
  if (n == "ratio") {
    double b = as_number(arg(1));
    if (b == 0) throw TypeMismatch("ratio: division by zero");
    return Value::make_number(as_number(arg(0)) / b);
  }
  if (n == "countGreater" || n == "countLess") {
    Value list = arg(0);
    const auto& vals = as_list(list, n.c_str()).nums;
    double t = as_number(arg(1));
    std::size_t c = 0;
    for (double v : vals)
      if (n == "countGreater" ? v > t : v < t) ++c;
    return Value::make_number(static_cast<double>(c));
  }
  if (n == "greaterThan")
    return Value::make_bool(as_number(arg(0)) > as_number(arg(1)));
  if (n == "lessThan")
    return Value::make_bool(as_number(arg(0)) < as_number(arg(1)));
  if (n == "equalsText")
    return Value::make_bool(lower(trim(as_text(arg(0)))) ==
                            lower(trim(as_text(arg(1)))));
  if (n == "filterGreater" || n == "filterLess") {
    Value held = arg(0);
    const Value& list = as_list(held, n.c_str());
    double t = as_number(arg(1));
    std::vector<double> vals;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < list.nums.size(); ++i) {
      bool keep = n == "filterGreater" ? list.nums[i] > t : list.nums[i] < t;
      if (!keep) continue;
      vals.push_back(list.nums[i]);
      if (i < list.labels.size()) labels.push_back(list.labels[i]);
    }
    return Value::make_list(std::move(vals), std::move(labels));
  }
  throw TypeMismatch("unknown operation " + n);
}

Value solve(const SolutionProgram& program, const std::vector<std::string>& fills,
            const ChartInfo& info) {
  ExecContext ctx;
  ctx.info = &info;
  ctx.fills = &fills;
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    try {
      ctx.results.push_back(run_step(program.steps[i], ctx));
    } catch (const Error& e) {
      throw RuntimeFailure("step " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  Value out = ctx.results.back();
  if (out.is_list()) throw TypeMismatch("program ends on a list");
  if (out.kind == Value::Kind::number) out.num = round2(out.num);
  return out;
}

std::string value_to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::number: return format_number(round2(v.num));
    case Value::Kind::text: return v.txt;
    case Value::Kind::boolean: return v.flag ? "Yes" : "No";
    default: throw TypeMismatch("list is not a final answer");
  }
}

}  // namespace chartdoc
