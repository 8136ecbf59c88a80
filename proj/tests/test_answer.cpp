#include <vector>

#include "chartdoc/answer.hpp"
#include "chartdoc/errors.hpp"
#include "chartdoc/question.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace chartdoc;
using chartdoc_test::worked_example_chart;

namespace {

ChartInfo multi_chart() {
  ChartInfo info;
  info.chart_id = "T_multi";
  info.chart_type = "Group Vertical Bar";
  info.entity_names = {"mouse", "keyboard", "sunglass"};
  info.legend_labels = {"alpha", "beta"};
  info.data = {{1, 5, 3}, {4, 2, 6}};
  info.colors = {{"crimson", "#dc143c"}, {"navy", "#000080"}};
  info.entity_parents = {"rodent", "peripheral", "accessory"};
  info.entity_grandparent = "artifact";
  return info;
}

Value run(const std::string& program_line, const ChartInfo& info,
          const std::vector<std::string>& fills = {}) {
  SolutionProgram p = parse_program({program_line});
  ExecContext ctx;
  ctx.info = &info;
  ctx.fills = &fills;
  return run_step(p.steps[0], ctx);
}

}  // namespace

TEST_CASE("program parsing enforces numbering, ops, and references") {
  CHECK(parse_program({"s1 = getAllValues()", "s2 = sum(s1)"}).steps.size() == 2);
  CHECK(known_op("argmax"));
  CHECK_FALSE(known_op("teleport"));
  CHECK_THROWS_AS(parse_program({"s2 = getAllValues()"}), ParseError);
  CHECK_THROWS_AS(parse_program({"s1 = teleport()"}), ParseError);
  CHECK_THROWS_AS(parse_program({"s1 = sum(s1)"}), ParseError);  // forward ref
  CHECK_THROWS_AS(parse_program({"s1 = sum(s2)"}), ParseError);
  CHECK_THROWS_AS(parse_program({"s1 getAllValues()"}), ParseError);
  CHECK_THROWS_AS(parse_program({"x1 = getAllValues()"}), ParseError);
  CHECK_THROWS_AS(parse_program({}), ParseError);
}

TEST_CASE("getAllValues walks entities in axis order") {
  Value v = run("s1 = getAllValues()", multi_chart());
  CHECK(v.nums == std::vector<double>{1, 4, 5, 2, 3, 6});
  CHECK(v.labels == std::vector<std::string>{"mouse", "mouse", "keyboard",
                                             "keyboard", "sunglass", "sunglass"});
}

TEST_CASE("legend lookups are row-major with entity labels") {
  Value v = run("s1 = getValueByLegend(\"beta\")", multi_chart());
  CHECK(v.nums == std::vector<double>{4, 2, 6});
  CHECK(v.labels == std::vector<std::string>{"mouse", "keyboard", "sunglass"});
  CHECK_THROWS_AS(run("s1 = getValueByLegend(\"gamma\")", multi_chart()),
                  UnknownLabel);
}

TEST_CASE("entity lookups collapse to a scalar for one value") {
  Value v = run("s1 = getValueByEntity(fill1)", worked_example_chart(), {"mouse"});
  CHECK(v.kind == Value::Kind::number);
  CHECK(v.num == 85.6);
  // on a two-row chart the same lookup yields the column as a list
  Value col = run("s1 = getValueByEntity(fill1)", multi_chart(), {"keyboard"});
  CHECK(col.nums == std::vector<double>{5, 2});
}

TEST_CASE("interval selection spans the axis inclusively in either order") {
  Value v = run("s1 = getIntervalValueByEntity(fill1, fill2)",
                worked_example_chart(), {"sunglass", "mouse"});
  CHECK(v.nums == std::vector<double>{85.6, 100.01, 101.1});
  Value w = run("s1 = getIntervalValueByEntity(fill1, fill2)",
                worked_example_chart(), {"keyboard", "sunglass"});
  CHECK(w.nums == std::vector<double>{100.01, 101.1});
}

TEST_CASE("class membership selects by taxonomy parent") {
  Value v = run("s1 = getEntitiesByParent(fill1)", multi_chart(), {"accessory"});
  CHECK(v.texts == std::vector<std::string>{"sunglass"});
  CHECK_THROWS_AS(run("s1 = getEntitiesByParent(fill1)", multi_chart(), {"fish"}),
                  UnknownLabel);
}

TEST_CASE("argmax and argmin break ties by first occurrence") {
  ChartInfo info = multi_chart();
  info.data = {{7, 3, 7}, {7, 3, 7}};
  SolutionProgram p = parse_program({"s1 = getAllValues()", "s2 = argmax(s1)"});
  Value v = solve(p, {}, info);
  CHECK(v.txt == "mouse");
  SolutionProgram q = parse_program({"s1 = getAllValues()", "s2 = argmin(s1)"});
  CHECK(solve(q, {}, info).txt == "keyboard");
}

TEST_CASE("box charts answer from the rendered five-number summary") {
  ChartInfo info = worked_example_chart();
  info.chart_type = "Vertical Boxplot";
  info.dsc["box_mouse"] = "1.00,2.00,3.00,4.00,5.00";
  info.dsc["box_keyboard"] = "10.00,20.00,30.00,40.00,50.00";
  info.dsc["box_sunglass"] = "6.00,7.00,8.00,9.00,11.00";
  Value v = run("s1 = getValueByEntity(fill1)", info, {"keyboard"});
  CHECK(v.nums == std::vector<double>{10, 20, 30, 40, 50});
  SolutionProgram p = parse_program({"s1 = getAllValues()", "s2 = max(s1)"});
  CHECK(solve(p, {}, info).num == 50);
}

TEST_CASE("aggregates, filters, and counts compute over lists") {
  ChartInfo info = multi_chart();  // values 1..6
  auto final_num = [&](const std::vector<std::string>& lines) {
    return solve(parse_program(lines), {}, info).num;
  };
  CHECK(final_num({"s1 = getAllValues()", "s2 = sum(s1)"}) == 21);
  CHECK(final_num({"s1 = getAllValues()", "s2 = avg(s1)"}) == 3.5);
  CHECK(final_num({"s1 = getAllValues()", "s2 = median(s1)"}) == 3.5);
  CHECK(final_num({"s1 = getAllValues()", "s2 = countGreater(s1, 3)"}) == 3);
  CHECK(final_num({"s1 = getAllValues()", "s2 = countLess(s1, 3)"}) == 2);
  CHECK(final_num({"s1 = getAllValues()", "s2 = filterGreater(s1, 2)",
                   "s3 = min(s2)"}) == 3);
  CHECK(final_num({"s1 = getAllValues()", "s2 = filterLess(s1, 5)",
                   "s3 = sum(s2)"}) == 10);
  // filtering away everything leaves an aggregate with an empty list
  CHECK_THROWS_AS(final_num({"s1 = getAllValues()", "s2 = filterGreater(s1, 99)",
                             "s3 = max(s2)"}),
                  RuntimeFailure);
}

TEST_CASE("predicates and text comparison") {
  ChartInfo info = worked_example_chart();
  auto flag = [&](const std::string& line,
                  const std::vector<std::string>& fills) {
    return run(line, info, fills).flag;
  };
  CHECK(flag("s1 = greaterThan(fill1, fill2)", {"5", "3"}));
  CHECK_FALSE(flag("s1 = lessThan(fill1, fill2)", {"5", "3"}));
  CHECK(flag("s1 = equalsText(fill1, fill2)", {"  Vertical ", "vertical"}));
  CHECK(run("s1 = orientation()", info).txt == "vertical");
  CHECK(run("s1 = colorOf(fill1)", info, {"accessory"}).txt == "teal");
  CHECK(run("s1 = entityAt(fill1)", info, {"2nd"}).txt == "keyboard");
  CHECK(run("s1 = countEntities()", info).num == 3);
  CHECK_THROWS_AS(run("s1 = ratio(fill1, fill2)", info, {"4", "0"}),
                  TypeMismatch);
}

TEST_CASE("solve rounds final numbers half-up to two decimals") {
  ChartInfo info = worked_example_chart();
  info.data = {{0.005, 0.005, 0.005}};
  SolutionProgram p = parse_program({"s1 = getAllValues()", "s2 = avg(s1)"});
  Value v = solve(p, {}, info);
  CHECK(v.num == 0.01);  // 0.005 rounds up, not banker's
  CHECK(value_to_string(v) == "0.01");
  info.data = {{2.0, 2.0, 2.0}};
  CHECK(value_to_string(solve(p, {}, info)) == "2");  // integral, no decimals
  // a program may not end on a list
  SolutionProgram lp = parse_program({"s1 = getAllValues()"});
  CHECK_THROWS_AS(solve(lp, {}, info), TypeMismatch);
}

TEST_CASE("boolean results serialize as Yes and No") {
  CHECK(value_to_string(Value::make_bool(true)) == "Yes");
  CHECK(value_to_string(Value::make_bool(false)) == "No");
  CHECK(value_to_string(Value::make_text("mouse")) == "mouse");
  CHECK_THROWS_AS(value_to_string(Value::make_list({1}, {"a"})), TypeMismatch);
}

TEST_CASE("the interval-average program reproduces the worked figure") {
  ChartInfo info = worked_example_chart();
  SolutionProgram p = parse_program(
      {"s1 = getEntityValue(1)", "s2 = getEntityValue(2)",
       "s3 = getIntervalValueByEntity(s1, s2)", "s4 = avg(s3)"});
  Value v = solve(p, {"mouse", "sunglass"}, info);
  CHECK(value_to_string(v) == "95.57");
}

TEST_CASE("the independent oracle agrees with solve on fixture questions") {
  auto reg = load_registry_file(chartdoc_test::data_path("templates.txt"));
  ChartInfo info = worked_example_chart();
  Rng rng(606);
  int compared = 0;
  for (const auto& t : reg) {
    if (!template_applicable(t, info)) continue;
    for (int rep = 0; rep < 5; ++rep) {
      QuestionInfo q = instantiate(t, info, rng);
      std::string solved;
      try {
        solved = value_to_string(solve(t.program, q.fills, info));
      } catch (const RuntimeFailure&) {
        continue;  // e.g. empty filter result; generation would retry
      }
      auto expected = chartdoc_test::brute_force_oracle(q, info);
      REQUIRE_MESSAGE(expected.has_value(), "oracle lacks template ",
                      t.template_id);
      INFO("template ", t.template_id, " question ", q.question);
      CHECK(solved == *expected);
      ++compared;
    }
  }
  CHECK(compared > 80);
}
