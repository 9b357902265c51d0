#include "cli.hpp"

#include "scorestab/error.hpp"
#include "scorestab/io.hpp"
#include "scorestab/log.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace scorestab::cli {
namespace {

struct RunConfig {
  std::string base;
  std::string fresh;
  std::string scores;
  std::string counts;
  std::string scenario;
  std::string output;
  std::string format = "json";
  std::optional<double> smooth;
  std::optional<double> gini;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<double> psi;
  std::optional<double> q;
  std::uint64_t seed = 20240101;
  bool quick = false;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool csv_allowed) {
  cmd->add_option("-o,--output", cfg.output, "Write the report to this file instead of stdout");
  if (csv_allowed)
    cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

std::string stability(const RunConfig& cfg) {
  auto base = io::parse_bucketed_csv(io::read_file(cfg.base));
  auto fresh = io::parse_bucketed_csv(io::read_file(cfg.fresh));
  if (cfg.smooth) {
    base = base.smoothed(*cfg.smooth);
    fresh = fresh.smoothed(*cfg.smooth);
  }
  return dump(io::to_json(stability_report(base, fresh), base));
}

std::string gini(const RunConfig& cfg) {
  const auto sample = io::parse_labeled_csv(io::read_file(cfg.scores));
  const auto roc = empirical_roc(sample);
  if (cfg.format == "csv") return io::roc_csv(roc);
  const GiniEstimate est{roc.gini, gini_sigma(roc.gini, sample.n_good(), sample.n_bad()), sample.n_good(),
                         sample.n_bad()};
  return dump(io::to_json(est, roc.auroc));
}

std::string degrade_cmd(const RunConfig& cfg) {
  ShiftScenario s;
  if (!cfg.scenario.empty()) {
    io::json j;
    try {
      j = io::json::parse(io::read_file(cfg.scenario));
    } catch (const io::json::parse_error& e) {
      fail(ErrorKind::ParseError, std::string("scenario JSON: ") + e.what());
    }
    s = io::scenario_from_json(j);
  }
  if (cfg.gini) s.gini = cfg.gini;
  if (cfg.beta) s.beta = cfg.beta;
  if (cfg.delta) s.delta = cfg.delta;
  if (cfg.psi) s.psi = cfg.psi;
  if (cfg.q) s.q_factor = cfg.q;
  return dump(io::to_json(degrade(s)));
}

std::string linkage(const RunConfig& cfg) {
  const auto base_text = io::read_file(cfg.base);
  const auto fresh_text = io::read_file(cfg.fresh);
  const auto kind = io::detect_distribution_csv(base_text);
  if (io::detect_distribution_csv(fresh_text) != kind)
    fail(ErrorKind::GridMismatch, "base and new inputs must both be bucketed or both gridded");
  if (kind == io::DistributionCsv::bucketed)
    return dump(io::to_json(q_factor_empirical(io::parse_bucketed_csv(base_text), io::parse_bucketed_csv(fresh_text))));
  return dump(io::to_json(q_factor_empirical(io::parse_gridded_csv(base_text), io::parse_gridded_csv(fresh_text))));
}

std::string replicate(const RunConfig& cfg) {
  const auto table = parse_count_table(io::read_file(cfg.counts));
  const auto series = yearly_metric_series(table, cfg.smooth);
  if (series.empty()) {
    if (cfg.format == "csv") return "year_from,year_to,psi,ks,q\n";
    return dump(io::json{{"pairs", io::json::array()}, {"median_q", nullptr}, {"iqr_q", nullptr},
                         {"near_two_fifths", false}});
  }
  const auto summary = linkage_scatter(series);
  if (cfg.format == "csv") return io::series_csv(summary);
  return dump(io::to_json(summary));
}

std::string validate(const RunConfig& cfg) { return dump(io::to_json(run_validation(cfg.seed, cfg.quick))); }

io::json error_json(std::string_view kind, std::string_view message) {
  return io::json{{"error", kind}, {"message", message}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  log::init_from_env();
  RunConfig cfg;
  CLI::App app{"Score-population stability and effective discriminatory power", "scorestab"};
  app.require_subcommand(1);

  auto* stab = app.add_subcommand("stability", "PSI / KS between two bucketed distributions");
  stab->add_option("--base", cfg.base, "Baseline CSV (bucket,mass or bucket,count)")->required();
  stab->add_option("--new", cfg.fresh, "New CSV (bucket,mass or bucket,count)")->required();
  stab->add_option("--smooth", cfg.smooth, "Add this mass to every bucket, then renormalize")->check(CLI::NonNegativeNumber);
  add_common(stab, cfg, false);

  auto* gini_cmd = app.add_subcommand("gini", "Empirical ROC, Gini and its standard deviation");
  gini_cmd->add_option("--scores", cfg.scores, "CSV score,label")->required();
  add_common(gini_cmd, cfg, true);

  auto* deg = app.add_subcommand("degrade", "Effective Gini under a KS-size score shift");
  auto* g_opt = deg->add_option("--gini", cfg.gini, "Measured Gini in (0, 1)");
  auto* b_opt = deg->add_option("--beta", cfg.beta, "Harmonic ROC parameter");
  g_opt->excludes(b_opt);
  deg->add_option("--delta", cfg.delta, "KS-size shift in [0, 1)");
  auto* p_opt = deg->add_option("--psi", cfg.psi, "Observed PSI");
  auto* q_opt = deg->add_option("--q", cfg.q, "Q factor linking KS and sqrt(PSI)");
  p_opt->needs(q_opt);
  q_opt->needs(p_opt);
  deg->add_option("--scenario", cfg.scenario, "JSON {gini|beta, delta|psi+q}");
  add_common(deg, cfg, false);

  auto* link = app.add_subcommand("linkage", "Empirical Q = KS / sqrt(PSI)");
  link->add_option("--base", cfg.base, "Baseline CSV (bucketed or score,density)")->required();
  link->add_option("--new", cfg.fresh, "New CSV, same kind as --base")->required();
  add_common(link, cfg, false);

  auto* rep = app.add_subcommand("replicate", "Year-over-year PSI/KS series from a rating count table");
  rep->add_option("--counts", cfg.counts, "CSV rating,<year>,...")->required();
  rep->add_option("--smooth", cfg.smooth, "Add this count to every cell before normalizing")->check(CLI::NonNegativeNumber);
  add_common(rep, cfg, true);

  auto* val = app.add_subcommand("validate", "Run the brute-force and Monte-Carlo oracle suite");
  val->add_option("--seed", cfg.seed, "Base seed");
  val->add_flag("--quick", cfg.quick, "Smaller Monte-Carlo sizes");
  add_common(val, cfg, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("UsageError", e.what()).dump() << "\n";
    return kExitUsage;
  }

  try {
    std::string report;
    if (*stab) report = stability(cfg);
    else if (*gini_cmd) report = gini(cfg);
    else if (*deg) report = degrade_cmd(cfg);
    else if (*link) report = linkage(cfg);
    else if (*rep) report = replicate(cfg);
    else report = validate(cfg);

    if (cfg.output.empty()) {
      out << report;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) fail(ErrorKind::InputError, "cannot write output file " + cfg.output);
      file << report;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << error_json(to_string(e.kind()), e.what()).dump() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what()).dump() << "\n";
    return kExitInternal;
  }
}

}  // namespace scorestab::cli
