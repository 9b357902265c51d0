#include "scorestab/io.hpp"

#include "scorestab/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace scorestab::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Row {
  std::size_t line = 0;
  std::vector<std::string_view> fields;
};

std::vector<Row> split_csv(std::string_view csv) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos <= csv.size();) {
    const auto nl = csv.find('\n', pos);
    const auto line = trim(csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos : nl - pos));
    ++line_no;
    if (!line.empty()) {
      Row row{line_no, {}};
      std::size_t start = 0;
      for (;;) {
        const auto comma = line.find(',', start);
        row.fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      rows.push_back(std::move(row));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return rows;
}

[[noreturn]] void parse_error(std::size_t line, std::size_t col, const std::string& what) {
  std::ostringstream msg;
  msg << "row " << line << ", column " << col << ": " << what;
  fail(ErrorKind::ParseError, msg.str());
}

double parse_double(const Row& row, std::size_t col) {
  const auto s = row.fields[col];
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    parse_error(row.line, col + 1, "'" + std::string(s) + "' is not a number");
  return v;
}

std::vector<Row> body_with_header(std::string_view csv, std::string_view first, std::string_view second,
                                  std::string_view alt_second = {}) {
  auto rows = split_csv(csv);
  if (rows.empty()) fail(ErrorKind::ParseError, "empty CSV input");
  const auto& h = rows.front();
  if (h.fields.size() != 2 || h.fields[0] != first ||
      (h.fields[1] != second && (alt_second.empty() || h.fields[1] != alt_second))) {
    std::string expected = std::string(first) + "," + std::string(second);
    if (!alt_second.empty()) expected += " or " + std::string(first) + "," + std::string(alt_second);
    parse_error(h.line, 1, "expected header " + expected);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].fields.size() != 2) parse_error(rows[i].line, rows[i].fields.size(), "expected 2 fields");
  return rows;
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return sig10(v);
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InputError, "cannot open input file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DistributionCsv detect_distribution_csv(std::string_view csv) {
  const auto rows = split_csv(csv);
  if (rows.empty() || rows.front().fields.empty()) fail(ErrorKind::ParseError, "empty CSV input");
  const auto first = rows.front().fields[0];
  if (first == "bucket") return DistributionCsv::bucketed;
  if (first == "score") return DistributionCsv::gridded;
  parse_error(rows.front().line, 1, "expected a bucket,mass / bucket,count or score,density header");
}

BucketedDistribution parse_bucketed_csv(std::string_view csv) {
  const auto rows = body_with_header(csv, "bucket", "mass", "count");
  const bool counts = rows.front().fields[1] == "count";
  Eigen::VectorXd values(static_cast<Eigen::Index>(rows.size() - 1));
  std::vector<std::string> labels;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    labels.emplace_back(rows[i].fields[0]);
    const double v = parse_double(rows[i], 1);
    if (v < 0.0) parse_error(rows[i].line, 2, "negative value");
    values[static_cast<Eigen::Index>(i - 1)] = v;
  }
  return counts ? BucketedDistribution::from_counts(values, std::move(labels))
                : BucketedDistribution(values, std::move(labels));
}

GriddedDensity parse_gridded_csv(std::string_view csv) {
  const auto rows = body_with_header(csv, "score", "density");
  const auto n = static_cast<Eigen::Index>(rows.size() - 1);
  if (n < kMinGridPoints) fail(ErrorKind::InvalidDistribution, "a gridded density needs at least 16 points");
  Eigen::VectorXd scores(n);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i + 1)];
    scores[i] = parse_double(row, 0);
    values[i] = parse_double(row, 1);
  }
  const double lo = scores[0];
  const double hi = scores[n - 1];
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(scores[i] - (lo + h * static_cast<double>(i))) > 1e-6 * std::abs(h))
      parse_error(rows[static_cast<std::size_t>(i + 1)].line, 1, "score grid is not uniform and increasing");
  }
  return GriddedDensity(lo, hi, values);
}

LabeledScoreSample parse_labeled_csv(std::string_view csv) {
  const auto rows = body_with_header(csv, "score", "label");
  std::vector<ScoredRecord> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double score = parse_double(rows[i], 0);
    const auto label = rows[i].fields[1];
    if (label == "bad" || label == "1") records.push_back({score, Label::bad});
    else if (label == "good" || label == "0") records.push_back({score, Label::good});
    else parse_error(rows[i].line, 2, "label '" + std::string(label) + "' is not good/bad/0/1");
  }
  return LabeledScoreSample(std::move(records));
}

double sig10(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return std::strtod(buf, nullptr);
}

std::string format10(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

json to_json(const StabilityReport& report, const BucketedDistribution& base) {
  json j;
  j["psi"] = number(report.psi);
  j["ks"] = number(report.ks);
  j["ks_argmax"] = report.ks_argmax;
  if (!base.labels().empty()) j["ks_argmax_label"] = base.labels()[static_cast<std::size_t>(report.ks_argmax)];
  j["psi_zone"] = std::string(to_string(report.zone));
  return j;
}

json to_json(const GiniEstimate& estimate, double auroc) {
  return json{{"auroc", number(auroc)},
              {"gini", number(estimate.gini)},
              {"sigma", number(estimate.sigma)},
              {"n_good", estimate.n_good},
              {"n_bad", estimate.n_bad}};
}

json to_json(const DegradationResult& r) {
  json j{{"g_original", number(r.g_original)},
         {"beta", number(r.beta)},
         {"delta", number(r.shift)},
         {"g_low_first_order", number(r.g_low_first_order)},
         {"g_low_exact_family", number(r.g_low_exact_family)},
         {"delta_g_practical", number(r.delta_g_practical)},
         {"x_star", number(r.x_star)},
         {"delta_param", number(r.delta_param)}};
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

json to_json(const LinkageReport& r) {
  json j{{"ks", number(r.ks)}, {"psi", number(r.psi)}, {"q_empirical", number(r.q_empirical)}};
  if (r.q_theoretical) j["q_theoretical"] = number(*r.q_theoretical);
  if (r.lambda) j["lambda"] = number(*r.lambda);
  if (r.q_above_one) j["q_above_one"] = true;
  return j;
}

json to_json(const ScatterSummary& s) {
  json pairs = json::array();
  for (const auto& p : s.points) {
    json e{{"year_from", p.year_from}, {"year_to", p.year_to}, {"psi", number(p.psi)}, {"ks", number(p.ks)}};
    e["q"] = p.q ? number(*p.q) : json(nullptr);
    pairs.push_back(std::move(e));
  }
  return json{{"pairs", std::move(pairs)},
              {"median_q", s.median_q ? number(*s.median_q) : json(nullptr)},
              {"iqr_q", s.iqr_q ? number(*s.iqr_q) : json(nullptr)},
              {"near_two_fifths", s.near_two_fifths}};
}

json to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json e{{"name", c.name},
           {"passed", c.passed},
           {"measured", number(c.measured)},
           {"expected", number(c.expected)},
           {"tolerance", number(c.tolerance)}};
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  return json{{"seed", report.seed}, {"quick", report.quick}, {"all_passed", report.all_passed()},
              {"checks", std::move(checks)}};
}

ShiftScenario scenario_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "scenario must be a JSON object");
  const auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) fail(ErrorKind::ParseError, std::string("scenario field '") + key + "' must be a number");
    return j[key].get<double>();
  };
  ShiftScenario s;
  s.gini = opt("gini");
  s.beta = opt("beta");
  s.delta = opt("delta");
  s.psi = opt("psi");
  s.q_factor = opt("q");
  return s;
}

std::string roc_csv(const RocCurve& roc) {
  std::string out = "fp_rate,tp_rate\n";
  for (const auto& p : roc.points) out += format10(p.fp_rate) + "," + format10(p.tp_rate) + "\n";
  return out;
}

std::string series_csv(const ScatterSummary& summary) {
  std::string out = "year_from,year_to,psi,ks,q\n";
  for (const auto& p : summary.points) {
    out += std::to_string(p.year_from) + "," + std::to_string(p.year_to) + "," + format10(p.psi) + "," +
           format10(p.ks) + "," + (p.q ? format10(*p.q) : std::string()) + "\n";
  }
  return out;
}

}  // namespace scorestab::io
