#include "chartdoc/debias.hpp"

#include <algorithm>
#include <sstream>

#include "chartdoc/answer.hpp"
#include "chartdoc/errors.hpp"
#include "chartdoc/rng.hpp"
#include "chartdoc/text.hpp"

namespace chartdoc {

std::map<int, TemplateTally> tally(const std::vector<QuestionInfo>& corpus) {
  std::map<int, TemplateTally> out;
  for (const auto& q : corpus) {
    if (q.answer_type != AnswerType::yes_no) continue;
    TemplateTally& t = out[q.template_id];
    if (q.answer == "Yes")
      ++t.yes;
    else
      ++t.no;
  }
  return out;
}

namespace {

double yes_share(const std::map<int, TemplateTally>& t) {
  std::size_t yes = 0, total = 0;
  for (const auto& [id, counts] : t) {
    yes += counts.yes;
    total += counts.yes + counts.no;
  }
  return total == 0 ? 0.0 : static_cast<double>(yes) / static_cast<double>(total);
}

// One flip attempt: candidate fills (value slots only, or everything),
// solved on the question's own chart. Returns true when the answer flipped.
bool try_flip(QuestionInfo& q, const QuestionTemplate& t, const ChartInfo& info,
              Rng& rng, bool value_only) {
  QuestionInfo fresh;
  try {
    fresh = instantiate(t, info, rng);
  } catch (const Error&) {
    return false;
  }
  std::vector<std::string> fills = fresh.fills;
  if (value_only) {
    fills = q.fills;
    for (std::size_t pos : fill_positions(t, SlotKind::value))
      fills[pos] = fresh.fills[pos];
  }
  std::string answer;
  try {
    answer = value_to_string(solve(t.program, fills, info));
  } catch (const Error&) {
    return false;
  }
  if (answer == q.answer) return false;
  q.fills = std::move(fills);
  q.question = substitute_fills(t, q.fills);
  q.answer = answer;
  return true;
}

}  // namespace

BiasReport debias(std::vector<QuestionInfo>& corpus,
                  const std::map<std::string, ChartInfo>& charts,
                  const std::vector<QuestionTemplate>& templates,
                  std::uint64_t seed, int max_attempts) {
  std::map<int, const QuestionTemplate*> by_id;
  for (const auto& t : templates) by_id[t.template_id] = &t;

  auto before = tally(corpus);
  BiasReport report;
  report.yes_share_before = yes_share(before);

  for (const auto& [template_id, counts_before] : before) {
    auto it = by_id.find(template_id);
    if (it == by_id.end())
      throw InvalidInput("corpus references unknown template " +
                         std::to_string(template_id));
    const QuestionTemplate& tpl = *it->second;

    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (corpus[i].template_id == template_id &&
          corpus[i].answer_type == AnswerType::yes_no)
        indices.push_back(i);

    TemplateTally t = counts_before;
    std::size_t mutations = 0;
    std::vector<bool> exhausted(indices.size(), false);
    bool has_value_slot = !fill_positions(tpl, SlotKind::value).empty();

    while (t.gap() > 1) {
      const std::string majority = t.yes > t.no ? "Yes" : "No";
      bool flipped = false;
      for (std::size_t k = 0; k < indices.size(); ++k) {
        if (exhausted[k]) continue;
        QuestionInfo& q = corpus[indices[k]];
        if (q.answer != majority) continue;
        auto chart = charts.find(q.chart_id);
        if (chart == charts.end())
          throw InvalidInput("question " + q.question_id +
                             " references unknown chart " + q.chart_id);
        Rng rng(derive_seed(seed, indices[k], "debias"));
        for (int a = 0; a < max_attempts; ++a) {
          bool value_only = has_value_slot && a < max_attempts / 2;
          if (try_flip(q, tpl, chart->second, rng, value_only)) {
            flipped = true;
            break;
          }
        }
        exhausted[k] = true;
        if (flipped) break;
      }
      if (!flipped) break;  // no further flips achievable; report and move on
      ++mutations;
      // the flipped question moved from the majority to the minority side
      if (t.yes > t.no) {
        --t.yes;
        ++t.no;
      } else {
        --t.no;
        ++t.yes;
      }
    }

    BiasReport::Row row;
    row.template_id = template_id;
    row.yes_before = counts_before.yes;
    row.no_before = counts_before.no;
    row.yes_after = t.yes;
    row.no_after = t.no;
    row.mutations = mutations;
    row.balanced = t.gap() <= 1;
    report.rows.push_back(row);
  }

  auto after = tally(corpus);
  report.yes_share_after = yes_share(after);
  for (const auto& [id, c] : after) report.total_yes_no += c.yes + c.no;
  return report;
}

std::string BiasReport::to_text() const {
  std::ostringstream out;
  out << "yes/no balance report\n";
  out << "template  yes_before  no_before  yes_after  no_after  mutations  balanced\n";
  for (const auto& r : rows) {
    out << r.template_id << "  " << r.yes_before << "  " << r.no_before << "  "
        << r.yes_after << "  " << r.no_after << "  " << r.mutations << "  "
        << (r.balanced ? "yes" : "NO") << "\n";
  }
  out << "yes_share_before " << format_fixed(yes_share_before, 4) << "\n";
  out << "yes_share_after " << format_fixed(yes_share_after, 4) << "\n";
  out << "total_yes_no " << total_yes_no << "\n";
  return out.str();
}

}  // namespace chartdoc
