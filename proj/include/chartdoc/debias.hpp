#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chartdoc/chart.hpp"
#include "chartdoc/question.hpp"

namespace chartdoc {

struct TemplateTally {
  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t gap() const { return yes > no ? yes - no : no - yes; }
};

struct BiasReport {
  struct Row {
    int template_id = 0;
    std::size_t yes_before = 0, no_before = 0;
    std::size_t yes_after = 0, no_after = 0;
    std::size_t mutations = 0;
    bool balanced = false;
  };
  std::vector<Row> rows;
  double yes_share_before = 0;
  double yes_share_after = 0;
  std::size_t total_yes_no = 0;

  std::string to_text() const;
};

// Yes/No counts per template over questions whose answer_type is yes_no.
std::map<int, TemplateTally> tally(const std::vector<QuestionInfo>& corpus);

// Rebalances each yes/no template to |yes - no| <= 1 by re-sampling fills
// of majority-answer questions on their own charts (value slots first, then
// all slots), up to max_attempts per question. Templates processed in
// ascending id order. Only fills, question text, and answer change.
BiasReport debias(std::vector<QuestionInfo>& corpus,
                  const std::map<std::string, ChartInfo>& charts,
                  const std::vector<QuestionTemplate>& templates,
                  std::uint64_t seed, int max_attempts = 50);

}  // namespace chartdoc
