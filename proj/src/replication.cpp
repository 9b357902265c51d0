#include "scorestab/replication.hpp"

#include "scorestab/distributions.hpp"
#include "scorestab/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace scorestab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t row, std::size_t col, const std::string& what) {
  std::ostringstream msg;
  msg << "row " << row << ", column " << col << ": " << what;
  fail(ErrorKind::ParseError, msg.str());
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

RatingCountTable parse_count_table(std::string_view csv) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t row = 0;
  for (std::size_t pos = 0; pos <= csv.size();) {
    const auto nl = csv.find('\n', pos);
    const auto line = trim(csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos : nl - pos));
    ++row;
    if (!line.empty()) lines.emplace_back(row, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) fail(ErrorKind::ParseError, "empty count table");

  RatingCountTable table;
  const auto header = split_fields(lines.front().second);
  if (header.size() < 2) parse_error(lines.front().first, 1, "header needs a rating column and at least one year");
  for (std::size_t c = 1; c < header.size(); ++c) {
    int year = 0;
    if (!parse_int(header[c], year)) parse_error(lines.front().first, c + 1, "year '" + std::string(header[c]) + "' is not an integer");
    if (!table.years.empty() && year <= table.years.back())
      parse_error(lines.front().first, c + 1, "years must be strictly increasing");
    table.years.push_back(year);
  }

  const auto n_years = static_cast<Eigen::Index>(table.years.size());
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto [line_no, text] = lines[l];
    const auto fields = split_fields(text);
    if (static_cast<Eigen::Index>(fields.size()) != n_years + 1)
      parse_error(line_no, fields.size(), "expected " + std::to_string(n_years + 1) + " fields");
    if (fields[0].empty()) parse_error(line_no, 1, "missing rating label");
    table.ratings.emplace_back(fields[0]);
    std::vector<std::int64_t> cells;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      std::int64_t v = 0;
      if (!parse_int(fields[c], v)) parse_error(line_no, c + 1, "'" + std::string(fields[c]) + "' is not an integer count");
      if (v < 0) parse_error(line_no, c + 1, "negative count " + std::string(fields[c]));
      cells.push_back(v);
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) fail(ErrorKind::ParseError, "count table has no rating rows");

  table.counts.resize(static_cast<Eigen::Index>(rows.size()), n_years);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Eigen::Index c = 0; c < n_years; ++c)
      table.counts(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];

  for (Eigen::Index c = 0; c < n_years; ++c) {
    if (table.counts.col(c).sum() < 1)
      fail(ErrorKind::EmptyYear, "year " + std::to_string(table.years[static_cast<std::size_t>(c)]) + " has no observations");
  }
  return table;
}

std::vector<YearPairMetrics> yearly_metric_series(const RatingCountTable& table,
                                                  std::optional<double> smoothing_counts) {
  std::vector<YearPairMetrics> out;
  const auto column = [&](Eigen::Index c) {
    Eigen::VectorXd v = table.counts.col(c).cast<double>();
    if (smoothing_counts) v.array() += *smoothing_counts;
    return BucketedDistribution::from_counts(v, table.ratings);
  };
  for (Eigen::Index c = 0; c + 1 < table.counts.cols(); ++c) {
    YearPairMetrics m;
    m.year_from = table.years[static_cast<std::size_t>(c)];
    m.year_to = table.years[static_cast<std::size_t>(c + 1)];
    const auto from = column(c);
    const auto to = column(c + 1);
    try {
      m.psi = psi_discrete(from, to);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroBucket) throw;
      std::ostringstream msg;
      msg << m.year_from << " -> " << m.year_to << ": " << e.what();
      fail(ErrorKind::ZeroBucket, msg.str());
    }
    m.ks = ks_discrete(from, to).ks;
    if (m.psi > 0.0) m.q = m.ks / std::sqrt(m.psi);
    out.push_back(m);
  }
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) fail(ErrorKind::EmptySeries, "quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ScatterSummary linkage_scatter(std::span<const YearPairMetrics> series) {
  if (series.empty()) fail(ErrorKind::EmptySeries, "no year pairs to summarize");
  ScatterSummary s;
  s.points.assign(series.begin(), series.end());
  std::vector<double> qs;
  for (const auto& p : series)
    if (p.q) qs.push_back(*p.q);
  if (!qs.empty()) {
    s.median_q = quantile(qs, 0.5);
    s.iqr_q = quantile(qs, 0.75) - quantile(qs, 0.25);
    s.near_two_fifths = *s.median_q >= kTwoFifthsBandLo && *s.median_q <= kTwoFifthsBandHi;
  }
  return s;
}

std::vector<YearPairMetrics> gaussian_shift_series(std::span<const double> shifts) {
  constexpr Eigen::Index kPoints = 4001;
  const auto normal = [](double mu) {
    return GriddedDensity::from_function(-8.0, 8.0, kPoints, [mu](double s) {
      return std::exp(-0.5 * (s - mu) * (s - mu)) / std::sqrt(2.0 * std::numbers::pi);
    });
  };
  const auto base = normal(0.0);
  std::vector<YearPairMetrics> out;
  int year = 0;
  for (double mu : shifts) {
    const auto fresh = normal(mu);
    YearPairMetrics m;
    m.year_from = year;
    m.year_to = ++year;
    m.psi = psi_continuous(base, fresh);
    m.ks = ks_continuous(base, fresh).ks;
    if (m.psi > 0.0) m.q = m.ks / std::sqrt(m.psi);
    out.push_back(m);
  }
  return out;
}

}  // namespace scorestab
