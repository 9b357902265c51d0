#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scorestab/error.hpp"
#include "scorestab/io.hpp"

#include <cmath>

using namespace scorestab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected scorestab::Error");
  return ErrorKind::OutOfRange;
}

std::string gridded_csv(double mu, int n = 401) {
  std::string out = "score,density\n";
  for (int i = 0; i < n; ++i) {
    const double s = -8.0 + 16.0 * i / (n - 1);
    out += io::format10(s) + "," + io::format10(std::exp(-0.5 * (s - mu) * (s - mu)) / std::sqrt(2.0 * M_PI)) + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("bucketed csv") {
  const auto m = io::parse_bucketed_csv("bucket,mass\nlow,0.5\nhigh,0.5\n");
  CHECK(m.size() == 2);
  CHECK(m.labels() == std::vector<std::string>{"low", "high"});

  const auto c = io::parse_bucketed_csv("bucket,count\r\nA,30\r\nB,70\r\n");
  CHECK(c[1] == doctest::Approx(0.7));

  CHECK(kind_of([] { io::parse_bucketed_csv("bucket,mass\nA,0.5\nB,0.6\n"); }) == ErrorKind::InvalidDistribution);
  CHECK(kind_of([] { io::parse_bucketed_csv("bucket,weight\nA,0.5\nB,0.5\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_bucketed_csv("bucket,mass\nA,x\nB,0.5\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_bucketed_csv("bucket,count\nA,-1\nB,3\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_bucketed_csv("bucket,mass\nA,0.5,1\nB,0.5\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_bucketed_csv(""); }) == ErrorKind::ParseError);
}

TEST_CASE("gridded csv") {
  const auto text = gridded_csv(0.0);
  CHECK(io::detect_distribution_csv(text) == io::DistributionCsv::gridded);
  CHECK(io::detect_distribution_csv("bucket,mass\nA,1\n") == io::DistributionCsv::bucketed);
  CHECK(kind_of([] { io::detect_distribution_csv("x,y\n"); }) == ErrorKind::ParseError);

  const auto f = io::parse_gridded_csv(text);
  CHECK(f.values().size() == 401);
  CHECK(f.step() == doctest::Approx(0.04));

  std::string broken = text;
  broken.replace(broken.find("\n-7.96,"), 7, "\n-7.90,");
  CHECK(kind_of([&] { io::parse_gridded_csv(broken); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_gridded_csv("score,density\n0,1\n1,1\n"); }) == ErrorKind::InvalidDistribution);
}

TEST_CASE("labeled csv") {
  const auto s = io::parse_labeled_csv("score,label\n1,bad\n2,good\n3,1\n4,0\n");
  CHECK(s.n_bad() == 2);
  CHECK(s.n_good() == 2);
  CHECK(empirical_roc(s).auroc == 0.75);
  CHECK(kind_of([] { io::parse_labeled_csv("score,label\n1,maybe\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("significant-digit rounding") {
  CHECK(io::sig10(0.11098986781266766) == 0.1109898678);
  CHECK(io::sig10(0.0) == 0.0);
  CHECK(io::format10(0.5) == "0.5");
  CHECK(io::format10(1.0 / 3.0) == "0.3333333333");
  CHECK(io::json(io::sig10(0.11098986781266766)).dump() == "0.1109898678");
}

TEST_CASE("json serializers") {
  const BucketedDistribution base(Eigen::Vector2d(0.5, 0.5), {"low", "high"});
  const BucketedDistribution fresh(Eigen::Vector2d(0.6, 0.4), {"low", "high"});
  const auto sj = io::to_json(stability_report(base, fresh), base);
  CHECK(sj["psi"].get<double>() == 0.04054651081);
  CHECK(sj["ks"].get<double>() == 0.1);
  CHECK(sj["ks_argmax_label"] == "low");
  CHECK(sj["psi_zone"] == "green");

  const auto dj = io::to_json(degrade({.gini = 0.6, .psi = 0.1, .q_factor = 0.4}));
  CHECK(dj["delta_g_practical"].get<double>() == 0.1109898678);
  CHECK_FALSE(dj.contains("warnings"));
  const auto wj = io::to_json(degrade({.gini = 0.6, .delta = 0.1, .psi = 0.1, .q_factor = 0.4}));
  CHECK(wj["warnings"].size() == 1);

  const auto lj = io::to_json(q_factor_empirical(base, fresh));
  CHECK(lj.contains("q_empirical"));
  CHECK_FALSE(lj.contains("q_theoretical"));

  const YearPairMetrics flat{2020, 2021, 0.0, 0.0, std::nullopt};
  const auto rj = io::to_json(linkage_scatter(std::span(&flat, 1)));
  CHECK(rj["pairs"][0]["q"].is_null());
  CHECK(rj["median_q"].is_null());
}

TEST_CASE("scenario json") {
  const auto s = io::scenario_from_json(io::json::parse(R"({"gini": 0.6, "psi": 0.1, "q": 0.4})"));
  CHECK(s.gini == 0.6);
  CHECK_FALSE(s.beta.has_value());
  CHECK(s.q_factor == 0.4);
  CHECK(kind_of([] { io::scenario_from_json(io::json::parse(R"({"gini": "high"})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::scenario_from_json(io::json::parse("[1]")); }) == ErrorKind::ParseError);
}

TEST_CASE("csv writers") {
  const auto roc = empirical_roc(LabeledScoreSample(std::vector<double>{1, 3}, std::vector<double>{2, 4}));
  CHECK(io::roc_csv(roc) == "fp_rate,tp_rate\n0,0\n0,0.5\n0.5,0.5\n0.5,1\n1,1\n");

  const YearPairMetrics pts[] = {{2020, 2021, 0.01, 0.04, 0.4}, {2021, 2022, 0.0, 0.0, std::nullopt}};
  CHECK(io::series_csv(linkage_scatter(pts)) == "year_from,year_to,psi,ks,q\n2020,2021,0.01,0.04,0.4\n2021,2022,0,0,\n");
}

TEST_CASE("read_file") {
  CHECK(kind_of([] { io::read_file("/nonexistent/file.csv"); }) == ErrorKind::InputError);
  CHECK(io::read_file(SCORESTAB_DATA_DIR "/rating_counts.csv").rfind("rating,1970", 0) == 0);
}
