#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "vrc/stats.hpp"
#include "vrc/study.hpp"

namespace vrc {

namespace {

// 1-based standard grouping; several items belong to more than one group.
constexpr int kNauseaItems[7] = {1, 6, 7, 8, 9, 15, 16};
constexpr int kOculomotorItems[7] = {1, 2, 3, 4, 5, 9, 11};
constexpr int kDisorientationItems[7] = {5, 8, 10, 11, 12, 13, 14};

double group_sum(const std::vector<int>& items, const int (&group)[7]) {
  double s = 0.0;
  for (int idx : group) s += items[static_cast<size_t>(idx - 1)];
  return s;
}

void check_ratings(const std::vector<int>& items) {
  for (int v : items)
    if (v < 0 || v > 4) throw std::invalid_argument("rating out of range (0..4)");
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_csv(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

size_t cond_index(Condition c) { return c == Condition::Cp ? 0 : 1; }

struct LineError {
  std::string file;
  int line = 0;
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(file + " line " + std::to_string(line) + ": " + msg);
  }
};

int parse_rating_field(const std::string& f, const LineError& where) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(f, &used);
  } catch (const std::exception&) {
    where.fail("rating '" + f + "' is not an integer");
  }
  if (used != f.size()) where.fail("rating '" + f + "' is not an integer");
  if (v < 0 || v > 4) where.fail("rating " + f + " out of range (0..4)");
  return v;
}

ConditionStats condition_stats(std::vector<double> v) {
  ConditionStats s;
  double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  s.median = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  return s;
}

std::string fmt2(double v) {
  if (std::fabs(v) < 0.005) v = 0.0;
  char b[48];
  std::snprintf(b, sizeof(b), "%.2f", v);
  return b;
}

std::string strip_lead_zero(std::string s) {
  if (s.rfind("0.", 0) == 0) return s.substr(1);
  if (s.rfind("-0.", 0) == 0) return "-" + s.substr(2);
  return s;
}

std::string fmt_stat(double v) {
  char b[48];
  std::snprintf(b, sizeof(b), "%.3f", v);
  return strip_lead_zero(b);
}

// ".028" or "<.001", matching the terse convention of study write-ups.
std::string fmt_p_col(double p) {
  if (p < 0.0005) return "<.001";
  char b[48];
  std::snprintf(b, sizeof(b), "%.3f", p);
  return strip_lead_zero(b);
}

std::string fmt_p_cell(double p) {
  std::string col = fmt_p_col(p);
  return col[0] == '<' ? "p" + col : "p=" + col;
}

const char* display_condition(Condition c) { return c == Condition::Cp ? "CP" : "Normal"; }

}  // namespace

SsqScores score_ssq(const std::vector<int>& items, bool kennedy_weights) {
  if (items.size() != 16)
    throw std::invalid_argument("ssq needs exactly 16 ratings, got " +
                                std::to_string(items.size()));
  check_ratings(items);
  SsqScores s;
  double n = group_sum(items, kNauseaItems);
  double o = group_sum(items, kOculomotorItems);
  double d = group_sum(items, kDisorientationItems);
  if (kennedy_weights) {
    s.nausea = n * 9.54;
    s.oculomotor = o * 7.58;
    s.disorientation = d * 13.92;
    s.total = (n + o + d) * 3.74;
  } else {
    s.nausea = n;
    s.oculomotor = o;
    s.disorientation = d;
    s.total = std::accumulate(items.begin(), items.end(), 0.0);
  }
  return s;
}

double score_ieq(const std::vector<int>& items) {
  if (items.empty()) throw std::invalid_argument("ieq needs at least one rating");
  check_ratings(items);
  return std::accumulate(items.begin(), items.end(), 0.0);
}

StudyTable load_study_table(const std::string& questionnaire_csv,
                            const std::string& performance_csv, bool kennedy_weights) {
  StudyTable table;
  std::set<std::string> measures;
  int ieq_count = -1;

  {
    std::istringstream in(questionnaire_csv);
    std::string line;
    LineError where{"questionnaire csv", 0};
    while (std::getline(in, line)) {
      ++where.line;
      if (line.empty() || line[0] == '#' || line.rfind("participant_id", 0) == 0) continue;
      std::vector<std::string> f = split_csv(line);
      if (f.size() < 4) where.fail("expected participant_id,condition,instrument,items...");
      if (f[0].empty()) where.fail("empty participant id");
      Condition cond;
      try {
        cond = condition_from_string(lower(f[1]));
      } catch (const std::exception& e) {
        where.fail(e.what());
      }
      std::vector<int> items;
      for (size_t i = 3; i < f.size(); ++i) items.push_back(parse_rating_field(f[i], where));
      StudyRow& row = table.rows[f[0]][cond_index(cond)];
      std::string inst = lower(f[2]);
      if (inst == "ssq") {
        if (items.size() != 16)
          where.fail("ssq row needs 16 items, got " + std::to_string(items.size()));
        if (row.have_ssq) where.fail("duplicate ssq row for participant " + f[0]);
        row.ssq = score_ssq(items, kennedy_weights);
        row.have_ssq = true;
      } else if (inst == "ieq") {
        if (ieq_count < 0) ieq_count = static_cast<int>(items.size());
        else if (ieq_count != static_cast<int>(items.size()))
          where.fail("ieq rows must share one item count (saw " + std::to_string(ieq_count) +
                     " and " + std::to_string(items.size()) + ")");
        if (row.have_ieq) where.fail("duplicate ieq row for participant " + f[0]);
        row.ieq = score_ieq(items);
        row.have_ieq = true;
      } else {
        where.fail("unknown instrument '" + f[2] + "' (expected ssq or ieq)");
      }
    }
  }

  {
    std::istringstream in(performance_csv);
    std::string line;
    LineError where{"performance csv", 0};
    while (std::getline(in, line)) {
      ++where.line;
      if (line.empty() || line[0] == '#' || line.rfind("participant_id", 0) == 0) continue;
      std::vector<std::string> f = split_csv(line);
      if (f.size() != 4) where.fail("expected participant_id,condition,measure,value");
      if (f[0].empty()) where.fail("empty participant id");
      Condition cond;
      try {
        cond = condition_from_string(lower(f[1]));
      } catch (const std::exception& e) {
        where.fail(e.what());
      }
      if (f[2].empty()) where.fail("empty measure name");
      double value = 0.0;
      size_t used = 0;
      try {
        value = std::stod(f[3], &used);
      } catch (const std::exception&) {
        where.fail("value '" + f[3] + "' is not a number");
      }
      if (used != f[3].size()) where.fail("value '" + f[3] + "' is not a number");
      if (!(value >= 0.0)) where.fail("measure values must be non-negative");
      StudyRow& row = table.rows[f[0]][cond_index(cond)];
      if (row.performance.count(f[2]))
        where.fail("duplicate measure '" + f[2] + "' for participant " + f[0]);
      row.performance[f[2]] = value;
      measures.insert(f[2]);
    }
  }

  std::set<std::string> incomplete;
  for (const auto& [participant, rows] : table.rows) {
    for (const StudyRow& row : rows) {
      bool ok = row.have_ssq && row.have_ieq;
      for (const std::string& m : measures) ok = ok && row.performance.count(m) > 0;
      if (!ok) incomplete.insert(participant);
    }
  }
  if (!incomplete.empty()) {
    std::string list;
    for (const std::string& p : incomplete) list += (list.empty() ? "" : ", ") + p;
    throw std::runtime_error("incomplete study table, participants missing rows: " + list);
  }
  if (table.rows.empty()) throw std::runtime_error("study table is empty");

  // Familiar measures first, the rest alphabetically.
  const std::vector<std::string> preferred = {"Time", "Crashes", "Coins", "Distance",
                                              "Shots Received"};
  for (const std::string& m : preferred)
    if (measures.count(m)) table.performance_measures.push_back(m);
  for (const std::string& m : measures)
    if (std::find(preferred.begin(), preferred.end(), m) == preferred.end())
      table.performance_measures.push_back(m);
  return table;
}

StudyReport analyze_study(const StudyTable& table) {
  using Getter = std::function<double(const StudyRow&)>;
  std::vector<std::pair<std::string, Getter>> subscores = {
      {"Nausea", [](const StudyRow& r) { return r.ssq.nausea; }},
      {"Oculomotor", [](const StudyRow& r) { return r.ssq.oculomotor; }},
      {"Disorientation", [](const StudyRow& r) { return r.ssq.disorientation; }},
      {"Total", [](const StudyRow& r) { return r.ssq.total; }},
      {"Immersion", [](const StudyRow& r) { return r.ieq; }},
  };
  std::vector<std::pair<std::string, Getter>> all = subscores;
  for (const std::string& m : table.performance_measures)
    all.push_back({m, [m](const StudyRow& r) { return r.performance.at(m); }});

  auto column = [&](const Getter& get, Condition c) {
    std::vector<double> v;
    for (const auto& [participant, rows] : table.rows) v.push_back(get(rows[cond_index(c)]));
    return v;
  };

  StudyReport report;
  for (const auto& [name, get] : all) {
    std::vector<double> cp = column(get, Condition::Cp);
    std::vector<double> nm = column(get, Condition::Normal);
    MeasureReport mr;
    mr.measure = name;
    mr.cp = condition_stats(cp);
    mr.normal = condition_stats(nm);
    std::vector<double> d(cp.size());
    for (size_t i = 0; i < cp.size(); ++i) d[i] = cp[i] - nm[i];
    bool all_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
    if (all_zero) {
      mr.test = "none";
      mr.no_difference = true;
      mr.note = "no difference";
    } else {
      bool have_sw = false;
      double swp = 0.0;
      try {
        swp = shapiro_wilk(d).p;
        mr.sw_p = swp;
        have_sw = true;
      } catch (const std::exception&) {
        // Constant differences: treat as non-normal and fall through.
      }
      if (have_sw && swp > 0.05) {
        PairedTResult t = paired_t(d);
        mr.test = "t";
        mr.statistic = t.statistic;
        mr.df = t.df;
        mr.p = t.p;
      } else {
        try {
          WilcoxonResult w = wilcoxon_signed_rank(d);
          mr.test = "wilcoxon";
          mr.statistic = w.statistic;
          mr.p = w.p;
        } catch (const std::exception& e) {
          mr.test = "none";
          mr.note = e.what();
        }
      }
    }
    report.measures.push_back(std::move(mr));
  }

  for (Condition c : {Condition::Cp, Condition::Normal}) {
    for (const std::string& pm : table.performance_measures) {
      Getter pget = [pm](const StudyRow& r) { return r.performance.at(pm); };
      for (const auto& [sname, sget] : subscores) {
        CorrelationEntry e;
        e.condition = c;
        e.performance = pm;
        e.subscore = sname;
        try {
          SpearmanResult r = spearman(column(pget, c), column(sget, c));
          e.rho = r.rho;
          e.p = r.p;
        } catch (const std::exception& ex) {
          e.note = ex.what();
        }
        report.correlations.push_back(std::move(e));
      }
    }
  }
  return report;
}

std::string report_json(const StudyReport& report) {
  nlohmann::ordered_json j;
  j["measures"] = nlohmann::ordered_json::array();
  for (const MeasureReport& m : report.measures) {
    nlohmann::ordered_json e;
    e["measure"] = m.measure;
    e["cp"] = {{"mean", m.cp.mean}, {"sd", m.cp.sd}, {"median", m.cp.median}};
    e["normal"] = {{"mean", m.normal.mean}, {"sd", m.normal.sd}, {"median", m.normal.median}};
    if (m.sw_p) e["shapiro_p"] = *m.sw_p;
    e["test"] = m.test;
    if (m.test != "none") {
      e["statistic"] = m.statistic;
      if (m.df) e["df"] = *m.df;
      e["p"] = m.p;
    }
    if (m.no_difference) e["no_difference"] = true;
    if (!m.note.empty()) e["note"] = m.note;
    j["measures"].push_back(std::move(e));
  }
  j["correlations"] = nlohmann::ordered_json::array();
  for (const CorrelationEntry& c : report.correlations) {
    nlohmann::ordered_json e;
    e["condition"] = condition_name(c.condition);
    e["performance"] = c.performance;
    e["subscore"] = c.subscore;
    if (c.rho) {
      e["rho"] = *c.rho;
      e["p"] = *c.p;
    }
    if (!c.note.empty()) e["note"] = c.note;
    j["correlations"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string report_text(const StudyReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-18s %-9s %9s %9s %9s   %s\n", "Measure", "Condition", "M",
                "s.d.", "Mdn", "Test");
  out += buf;
  out += std::string(75, '-') + "\n";
  for (size_t i = 0; i < report.measures.size(); ++i) {
    const MeasureReport& m = report.measures[i];
    // Blank separators between the sickness, immersion, and performance blocks.
    if (m.measure == "Immersion" || (i > 0 && report.measures[i - 1].measure == "Immersion"))
      out += "\n";
    std::string test;
    if (m.test == "wilcoxon")
      test = "Z=" + fmt_stat(m.statistic) + ", " + fmt_p_cell(m.p);
    else if (m.test == "t")
      test = "t(" + std::to_string(*m.df) + ")=" + fmt_stat(m.statistic) + ", " + fmt_p_cell(m.p);
    else
      test = m.note;
    std::snprintf(buf, sizeof(buf), "%-18s %-9s %9s %9s %9s   %s\n", m.measure.c_str(),
                  display_condition(Condition::Cp), fmt2(m.cp.mean).c_str(),
                  fmt2(m.cp.sd).c_str(), fmt2(m.cp.median).c_str(), test.c_str());
    out += buf;
    std::snprintf(buf, sizeof(buf), "%-18s %-9s %9s %9s %9s\n", "",
                  display_condition(Condition::Normal), fmt2(m.normal.mean).c_str(),
                  fmt2(m.normal.sd).c_str(), fmt2(m.normal.median).c_str());
    out += buf;
  }
  out += "\nSpearman correlations (performance vs sickness/immersion)\n";
  std::snprintf(buf, sizeof(buf), "%-9s %-16s %-16s %8s %8s\n", "Condition", "Performance",
                "Subscore", "rs", "p");
  out += buf;
  out += std::string(62, '-') + "\n";
  for (const CorrelationEntry& c : report.correlations) {
    if (c.rho) {
      std::snprintf(buf, sizeof(buf), "%-9s %-16s %-16s %8s %8s\n",
                    display_condition(c.condition), c.performance.c_str(), c.subscore.c_str(),
                    fmt_stat(*c.rho).c_str(), fmt_p_col(*c.p).c_str());
    } else {
      std::snprintf(buf, sizeof(buf), "%-9s %-16s %-16s %8s %8s  (%s)\n",
                    display_condition(c.condition), c.performance.c_str(), c.subscore.c_str(),
                    "--", "--", c.note.c_str());
    }
    out += buf;
  }
  return out;
}

}  // namespace vrc
