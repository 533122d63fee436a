#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vrc/config.hpp"

namespace vrc {

struct SsqScores {
  double nausea = 0.0;
  double oculomotor = 0.0;
  double disorientation = 0.0;
  double total = 0.0;
};

// Sixteen symptom ratings, each 0..4. Sub-scores are unweighted group sums
// and the total sums all 16 items; the optional flag applies the standard
// published scaling instead (9.54 / 7.58 / 13.92, total 3.74 on the summed
// raw groups).
SsqScores score_ssq(const std::vector<int>& items, bool kennedy_weights = false);

// Immersion ratings 0..4, any count; plain sum.
double score_ieq(const std::vector<int>& items);

struct StudyRow {
  bool have_ssq = false;
  bool have_ieq = false;
  SsqScores ssq;
  double ieq = 0.0;
  std::map<std::string, double> performance;
};

struct StudyTable {
  // participant -> one row per condition (index 0 = cp, 1 = normal)
  std::map<std::string, std::array<StudyRow, 2>> rows;
  std::vector<std::string> performance_measures;  // canonical report order
};

// Builds and validates the paired table from the two CSV inputs.
// Questionnaire columns: participant_id,condition,instrument,item_1..item_k.
// Performance columns: participant_id,condition,measure,value. Malformed
// rows raise errors naming the line; incomplete pairing raises an error
// listing the participants.
StudyTable load_study_table(const std::string& questionnaire_csv,
                            const std::string& performance_csv,
                            bool kennedy_weights = false);

struct ConditionStats {
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
};

struct MeasureReport {
  std::string measure;
  ConditionStats cp;
  ConditionStats normal;
  std::string test;  // "wilcoxon" | "t" | "none"
  double statistic = 0.0;
  std::optional<int> df;  // t only
  double p = 1.0;
  std::optional<double> sw_p;  // normality p on the paired differences
  bool no_difference = false;
  std::string note;
};

struct CorrelationEntry {
  Condition condition = Condition::Cp;
  std::string performance;
  std::string subscore;
  std::optional<double> rho;
  std::optional<double> p;
  std::string note;  // set when the correlation is undefined
};

struct StudyReport {
  std::vector<MeasureReport> measures;
  std::vector<CorrelationEntry> correlations;
};

// Per measure: condition descriptives, normality check on the paired
// differences, then a dependent t test when that p exceeds .05 and the
// signed-rank test otherwise. Identical pairings are flagged instead of
// tested. Rank correlations relate each performance measure to the sickness
// sub-scores and immersion within each condition.
StudyReport analyze_study(const StudyTable& table);

std::string report_json(const StudyReport& report);
std::string report_text(const StudyReport& report);

}  // namespace vrc
