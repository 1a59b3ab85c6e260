// CLI for the order-statistics information measures: exact MI/KL values,
// asymptotic limits with convergence sweeps, discrete-distribution MI with
// the upper-bound check, figure-data CSV emission, and the oracle
// verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 domain/usage error,
// 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ordstat/asymptotics.hpp"
#include "ordstat/continuous.hpp"
#include "ordstat/discrete.hpp"
#include "ordstat/figures.hpp"
#include "ordstat/oracles.hpp"
#include "ordstat/special.hpp"

using json = nlohmann::json;
using ordstat::TSeqContext;

namespace {

std::string fmt15(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Divisor taking nats to the requested log base.
double base_divisor(const std::string& base) {
  if (base == "e") return 1.0;
  if (base == "2") return std::log(2.0);
  if (base == "10") return std::log(10.0);
  throw std::domain_error("--log-base must be one of: e, 2, 10");
}

std::vector<std::int64_t> parse_index_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string tok = text.substr(pos, next - pos);
    if (!tok.empty()) out.push_back(std::stoll(tok));
    pos = next + 1;
  }
  if (out.empty()) throw std::domain_error("empty index list");
  return out;
}

// Sweep grammar: comma-separated integers and a..b ranges, e.g. "2..100".
std::vector<std::int64_t> parse_sweep(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string tok = text.substr(pos, next - pos);
    const std::size_t dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoll(tok));
    } else {
      const std::int64_t lo = std::stoll(tok.substr(0, dots));
      const std::int64_t hi = std::stoll(tok.substr(dots + 2));
      if (hi < lo) throw std::domain_error("sweep range must be increasing");
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    pos = next + 1;
  }
  if (out.empty()) throw std::domain_error("empty sweep");
  return out;
}

// Context sized to the request; the spec default threshold is the ceiling.
TSeqContext make_context(std::int64_t need) {
  return TSeqContext(std::clamp<std::int64_t>(need + 1, 1024, 1'000'000));
}

struct Output {
  bool as_json = false;
  double divisor = 1.0;

  void value(const std::string& command, const json& params, double nats,
             const char* method, const json& extra = json::object()) const {
    const double v = std::isinf(nats) ? nats : nats / divisor;
    if (as_json) {
      json rec{{"command", command}, {"params", params}, {"method", method}};
      if (std::isinf(v))
        rec["value"] = "inf";
      else
        rec["value"] = v;
      for (auto it = extra.begin(); it != extra.end(); ++it) rec[it.key()] = it.value();
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << fmt15(v) << "\n";
      for (auto it = extra.begin(); it != extra.end(); ++it)
        std::cout << it.key() << "=" << it.value().dump() << "\n";
    }
  }
};

json report_row(const std::string& name, const ordstat::OracleReport& r, bool pass) {
  json row{{"name", name},
           {"closed_form", r.closed_form},
           {"oracle", r.oracle},
           {"abs_diff", r.abs_diff},
           {"rel_diff", r.rel_diff},
           {"kind", ordstat::to_string(r.oracle_kind)},
           {"effort", r.effort},
           {"pass", pass}};
  if (r.seed) row["seed"] = *r.seed;
  if (r.std_error) row["std_error"] = *r.std_error;
  return row;
}

// ---- verify suites ----------------------------------------------------

bool verify_lemma1(std::int64_t k_max, json& rows) {
  using namespace ordstat;
  using detail::DoubleDouble;
  const TSeqContext ctx(k_max + 1);
  bool pass = true;
  double worst_t = 0.0, worst_step = 0.0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const BracketedValue bt = t_approx(k);
    const DoubleDouble tv = ctx.t_value_dd(k);
    if (!detail::less_equal(DoubleDouble{bt.lo}, tv) ||
        !detail::less_equal(tv, DoubleDouble{bt.hi}))
      pass = false;
    worst_t = std::max(worst_t, std::fabs(tv.to_double() - bt.value));

    const BracketedValue bs = t_step_approx(k);
    const DoubleDouble sv = ctx.t_step_dd(k);
    if (!detail::less_equal(DoubleDouble{bs.lo}, sv) ||
        !detail::less_equal(sv, DoubleDouble{bs.hi}))
      pass = false;
    worst_step = std::max(worst_step, std::fabs(sv.to_double() - bs.value));
  }
  rows.push_back({{"name", "t-bracket-containment"},
                  {"k_max", k_max},
                  {"worst_midpoint_gap", worst_t},
                  {"pass", pass}});
  rows.push_back({{"name", "t-step-bracket-containment"},
                  {"k_max", k_max},
                  {"worst_midpoint_gap", worst_step},
                  {"pass", pass}});
  return pass;
}

bool verify_quadrature(std::int64_t eval_budget, json& rows) {
  using namespace ordstat;
  const TSeqContext ctx(1024);
  bool pass = true;
  for (std::int64_t n = 2; n <= 8; ++n)
    for (std::int64_t r = 1; r < n; ++r)
      for (std::int64_t m = r + 1; m <= n; ++m) {
        const OracleReport rep = quad_mi_pair(n, r, m, 1e-8, ctx, eval_budget);
        const bool ok = rep.abs_diff < 1e-6;
        pass = pass && ok;
        rows.push_back(report_row("quad n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                      " m=" + std::to_string(m),
                                  rep, ok));
      }
  return pass;
}

bool verify_enumeration(std::uint64_t seed, json& rows) {
  using namespace ordstat;
  bool pass = true;
  for (std::int64_t n = 2; n <= 12; ++n) {
    for (const double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const DiscreteDist d = DiscreteDist::bernoulli(p);
      double worst = 0.0;
      OracleReport worst_rep;
      for (std::int64_t r = 1; r < n; ++r)
        for (std::int64_t m = r + 1; m <= n; ++m) {
          OracleReport rep = enum_mi_discrete(n, d, r, m);
          // the Bernoulli closed form must match as well
          rep.closed_form = mi_bernoulli(n, p, r, m);
          rep.abs_diff = std::fabs(rep.closed_form - rep.oracle);
          if (rep.abs_diff >= worst) {
            worst = rep.abs_diff;
            worst_rep = rep;
          }
        }
      const bool ok = worst < 1e-12;
      pass = pass && ok;
      rows.push_back(report_row(
          "enum bernoulli n=" + std::to_string(n) + " p=" + fmt15(p), worst_rep, ok));
    }
  }
  // random finite supports against the exact trinomial construction
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  double worst = 0.0;
  OracleReport worst_rep;
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(gen() % 7);
    const std::size_t k = 2 + gen() % 3;
    std::vector<double> probs(k), support(k);
    double total = 0.0;
    for (double& v : probs) {
      v = unit(gen);
      total += v;
    }
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      probs[i] /= total;
      partial += probs[i];
    }
    probs[k - 1] = 1.0 - partial;
    for (std::size_t i = 0; i < k; ++i) support[i] = static_cast<double>(i);
    const DiscreteDist d(support, probs);
    const std::int64_t r = 1 + static_cast<std::int64_t>(gen() % (n - 1));
    const std::int64_t m = r + 1 + static_cast<std::int64_t>(gen() % (n - r));
    const OracleReport rep = enum_mi_discrete(n, d, r, m);
    if (rep.abs_diff >= worst) {
      worst = rep.abs_diff;
      worst_rep = rep;
    }
  }
  const bool ok = worst < 1e-12;
  pass = pass && ok;
  rows.push_back(report_row("enum random-support x50", worst_rep, ok));
  return pass;
}

bool verify_bound(std::uint64_t seed, std::int64_t cases, json& rows) {
  using namespace ordstat;
  const TSeqContext ctx(1024);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  double min_margin = std::numeric_limits<double>::infinity();
  bool pass = true;
  std::int64_t checked = 0;
  for (std::int64_t trial = 0; trial < cases; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(gen() % 7);
    const std::size_t k = 1 + gen() % 5;
    std::vector<double> probs(k), support(k);
    double total = 0.0;
    for (double& v : probs) {
      v = unit(gen);
      total += v;
    }
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      probs[i] /= total;
      partial += probs[i];
    }
    probs[k - 1] = 1.0 - partial;
    for (std::size_t i = 0; i < k; ++i) support[i] = static_cast<double>(i);
    const DiscreteDist d(support, probs);
    for (std::int64_t r = 1; r < n; ++r)
      for (std::int64_t m = r + 1; m <= n; ++m) {
        const BoundCheck bc = check_upper_bound(n, d, r, m, ctx);
        pass = pass && bc.holds;
        min_margin = std::min(min_margin, bc.margin);
        ++checked;
      }
  }
  rows.push_back({{"name", "data-processing-upper-bound"},
                  {"cases", cases},
                  {"pairs_checked", checked},
                  {"min_margin", min_margin},
                  {"seed", seed},
                  {"pass", pass}});
  return pass;
}

bool verify_covariance(std::uint64_t seed, std::int64_t samples, json& rows) {
  using namespace ordstat;
  bool pass = true;
  struct Case {
    SamplingFamily family;
    std::int64_t n, r, m;
    double lambda;
  };
  const Case cases[] = {
      {SamplingFamily::uniform, 3, 1, 3, 1.0},  {SamplingFamily::uniform, 10, 5, 5, 1.0},
      {SamplingFamily::uniform, 10, 2, 9, 1.0}, {SamplingFamily::exponential, 2, 1, 2, 1.0},
      {SamplingFamily::exponential, 10, 1, 2, 1.0},
      {SamplingFamily::exponential, 10, 1, 2, 2.0},
  };
  for (const Case& c : cases) {
    const OracleReport rep =
        mc_covariance(c.family, c.n, c.r, c.m, samples, RNGSpec{seed, 256}, c.lambda);
    const bool ok = rep.abs_diff < 4.0 * *rep.std_error;
    pass = pass && ok;
    const std::string name =
        std::string(c.family == SamplingFamily::uniform ? "cov uniform" : "cov exponential") +
        " n=" + std::to_string(c.n) + " r=" + std::to_string(c.r) +
        " m=" + std::to_string(c.m) + " lambda=" + fmt15(c.lambda);
    rows.push_back(report_row(name, rep, ok));
  }
  return pass;
}

void write_figure_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordstat: information measures between order statistics"};
  app.require_subcommand(1);

  std::string log_base = "e";
  bool as_json = false;
  app.add_option("--log-base", log_base, "output log base: e, 2, or 10")
      ->check(CLI::IsMember({"e", "2", "10"}));
  app.add_flag("--json", as_json, "emit a JSON record instead of plain values");

  // mi
  auto* mi_cmd = app.add_subcommand("mi", "mutual information between order statistics");
  std::int64_t mi_n = 0, mi_r = 0, mi_m = 0;
  std::vector<std::string> mi_subset_args;
  mi_cmd->add_option("--n", mi_n, "sample size")->required();
  mi_cmd->add_option("--r", mi_r, "first order-statistic index");
  mi_cmd->add_option("--m", mi_m, "second order-statistic index");
  mi_cmd->add_option("--subsets", mi_subset_args,
                     "two comma-separated index subsets, e.g. --subsets 1,2 3,4")
      ->expected(2);

  // kl
  auto* kl_cmd = app.add_subcommand("kl", "KL divergence of joint from product");
  std::int64_t kl_n = 0;
  bool kl_whole = false, kl_minmax = false;
  std::string kl_subset_arg;
  kl_cmd->add_option("--n", kl_n, "sample size")->required();
  kl_cmd->add_flag("--whole", kl_whole, "whole sequence {1..n}");
  kl_cmd->add_flag("--minmax", kl_minmax, "min and max {1, n}");
  kl_cmd->add_option("--subset", kl_subset_arg, "comma-separated index subset");

  // limit
  auto* limit_cmd = app.add_subcommand("limit", "large-n decoupling limits");
  std::string limit_case;
  std::int64_t lim_r = 0, lim_m = 0, lim_k = 0;
  double lim_alpha = 0.0, lim_beta = 0.0;
  std::string sweep_arg;
  limit_cmd
      ->add_option("--case", limit_case,
                   "r-vs-max | r-vs-m | k-step | quantile-pair | quantile-vs-max "
                   "(aliases: median-vs-max, q1-vs-max, q3-vs-max, 1-step)")
      ->required();
  limit_cmd->add_option("--r", lim_r, "fixed r");
  limit_cmd->add_option("--m", lim_m, "fixed m");
  limit_cmd->add_option("--k", lim_k, "step size k");
  limit_cmd->add_option("--alpha", lim_alpha, "quantile fraction of r");
  limit_cmd->add_option("--beta", lim_beta, "quantile fraction of m");
  limit_cmd->add_option("--sweep", sweep_arg,
                        "emit a convergence CSV over these n (e.g. 2..100)");

  // discrete
  auto* disc_cmd = app.add_subcommand("discrete", "MI under a discrete sampling distribution");
  std::int64_t d_n = 0, d_r = 0, d_m = 0;
  double d_p = -1.0;
  std::string dist_path;
  bool d_check_bound = false;
  disc_cmd->add_option("--n", d_n, "sample size")->required();
  disc_cmd->add_option("--r", d_r, "first index")->required();
  disc_cmd->add_option("--m", d_m, "second index")->required();
  disc_cmd->add_option("--bernoulli", d_p, "Bernoulli parameter p in (0,1)");
  disc_cmd->add_option("--dist", dist_path, "JSON file {\"support\":[...],\"probs\":[...]}");
  disc_cmd->add_flag("--check-bound", d_check_bound,
                     "also report the distribution-free upper-bound margin");

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "emit the reproduction CSVs");
  std::string fig_which, fig_out;
  double fig_p = 0.5;
  fig_cmd->add_option("which", fig_which, "fig1 or fig3")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig3"}));
  fig_cmd->add_option("--out", fig_out, "output path (default <which>.csv)");
  fig_cmd->add_option("--p", fig_p, "Bernoulli parameter for fig3 (default 0.5)");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run an oracle/invariant suite");
  std::string suite;
  std::uint64_t ver_seed = 42;
  std::int64_t ver_budget = 0;
  ver_cmd->add_option("suite", suite, "lemma1|quadrature|enumeration|bound|covariance|all")
      ->required()
      ->check(CLI::IsMember({"lemma1", "quadrature", "enumeration", "bound", "covariance",
                             "all"}));
  ver_cmd->add_option("--seed", ver_seed, "RNG seed for the randomized suites");
  ver_cmd->add_option("--budget", ver_budget,
                      "suite-specific effort: lemma1 k-max (1e5), quadrature evals per "
                      "integral (1e7), bound cases (200), covariance samples (1e7)");

  try {
    app.parse(argc, argv);

    Output out;
    out.as_json = as_json;
    out.divisor = base_divisor(log_base);

    if (*mi_cmd) {
      const TSeqContext ctx = make_context(mi_n);
      if (!mi_subset_args.empty()) {
        const ordstat::IndexSet a(mi_n, parse_index_list(mi_subset_args[0]));
        const ordstat::IndexSet b(mi_n, parse_index_list(mi_subset_args[1]));
        const ordstat::MIResult res = ordstat::mi_subsets(a, b, ctx);
        out.value("mi", {{"n", mi_n}, {"subsets", mi_subset_args}}, res.value,
                  to_string(res.method));
      } else {
        if (mi_cmd->count("--r") == 0 || mi_cmd->count("--m") == 0)
          throw std::domain_error("mi: provide --r and --m, or --subsets");
        const ordstat::MIResult res = ordstat::mi_pair(mi_n, mi_r, mi_m, ctx);
        out.value("mi", {{"n", mi_n}, {"r", mi_r}, {"m", mi_m}}, res.value,
                  to_string(res.method));
      }
    } else if (*kl_cmd) {
      const TSeqContext ctx = make_context(kl_n);
      double v = 0.0;
      json params{{"n", kl_n}};
      if (kl_whole) {
        v = ordstat::kl_whole_sequence(kl_n, ctx);
        params["whole"] = true;
      } else if (kl_minmax) {
        v = ordstat::kl_min_max(kl_n);
        params["minmax"] = true;
      } else if (!kl_subset_arg.empty()) {
        v = ordstat::kl_subset(ordstat::IndexSet(kl_n, parse_index_list(kl_subset_arg)), ctx);
        params["subset"] = kl_subset_arg;
      } else {
        throw std::domain_error("kl: provide one of --whole, --minmax, --subset");
      }
      out.value("kl", params, v, "closed-form");
    } else if (*limit_cmd) {
      ordstat::AsymptoticCase c;
      if (limit_case == "median-vs-max") c = ordstat::AsymptoticCase::quantile_vs_max(0.5);
      else if (limit_case == "q1-vs-max") c = ordstat::AsymptoticCase::quantile_vs_max(0.25);
      else if (limit_case == "q3-vs-max") c = ordstat::AsymptoticCase::quantile_vs_max(0.75);
      else if (limit_case == "1-step") c = ordstat::AsymptoticCase::k_step(1);
      else if (limit_case == "r-vs-max") c = ordstat::AsymptoticCase::r_vs_max(lim_r);
      else if (limit_case == "r-vs-m") c = ordstat::AsymptoticCase::r_vs_m(lim_r, lim_m);
      else if (limit_case == "k-step") c = ordstat::AsymptoticCase::k_step(lim_k);
      else if (limit_case == "quantile-pair")
        c = ordstat::AsymptoticCase::quantile_pair(lim_alpha, lim_beta);
      else if (limit_case == "quantile-vs-max")
        c = ordstat::AsymptoticCase::quantile_vs_max(lim_alpha);
      else throw std::domain_error("limit: unknown --case " + limit_case);

      if (sweep_arg.empty()) {
        const TSeqContext ctx = make_context(std::max<std::int64_t>(lim_m, 1024));
        out.value("limit", {{"case", limit_case}}, ordstat::limit_of(c, ctx), "limit");
      } else {
        const auto ns = parse_sweep(sweep_arg);
        std::int64_t n_max = 0;
        for (const auto n : ns) n_max = std::max(n_max, n);
        const TSeqContext ctx = make_context(n_max);
        const auto rows = ordstat::convergence_table(c, ns, ctx);
        std::cout << "n,scaled_exact,limit,gap\n";
        for (const auto& row : rows)
          std::cout << row.n << "," << fmt15(row.scaled_exact / out.divisor) << ","
                    << fmt15(row.limit / out.divisor) << "," << fmt15(row.gap / out.divisor)
                    << "\n";
      }
    } else if (*disc_cmd) {
      const TSeqContext ctx = make_context(d_n);
      double v = 0.0;
      json params{{"n", d_n}, {"r", d_r}, {"m", d_m}};
      std::optional<ordstat::DiscreteDist> dist;
      if (d_p > 0.0 && !dist_path.empty())
        throw std::domain_error("discrete: --bernoulli and --dist are exclusive");
      if (d_p > 0.0) {
        v = ordstat::mi_bernoulli(d_n, d_p, d_r, d_m);
        dist = ordstat::DiscreteDist::bernoulli(d_p);
        params["bernoulli"] = d_p;
      } else if (!dist_path.empty()) {
        std::ifstream in(dist_path);
        if (!in) throw std::ios_base::failure("cannot open dist file: " + dist_path);
        json spec;
        try {
          spec = json::parse(in);
          dist = ordstat::DiscreteDist(spec.at("support").get<std::vector<double>>(),
                                       spec.at("probs").get<std::vector<double>>());
        } catch (const json::exception& e) {
          throw std::domain_error(std::string("discrete: malformed dist JSON: ") + e.what());
        }
        v = ordstat::mi_discrete_exact(d_n, *dist, d_r, d_m);
        params["dist"] = dist_path;
      } else {
        throw std::domain_error("discrete: provide --bernoulli p or --dist file.json");
      }
      json extra = json::object();
      if (d_check_bound) {
        const ordstat::BoundCheck bc = ordstat::check_upper_bound(d_n, *dist, d_r, d_m, ctx);
        extra["bound_margin"] = bc.margin / out.divisor;
        extra["bound_holds"] = bc.holds;
      }
      out.value("discrete", params, v, "closed-form", extra);
    } else if (*fig_cmd) {
      const TSeqContext ctx = make_context(128);
      const std::string path = fig_out.empty() ? fig_which + ".csv" : fig_out;
      std::vector<std::vector<std::string>> rows;
      if (fig_which == "fig1") {
        for (const auto& r : ordstat::fig1_rows(ctx))
          rows.push_back({std::to_string(r.n), fmt15(r.n_times_mi / out.divisor),
                          fmt15(r.limit / out.divisor)});
        write_figure_csv(path, "n,n_times_mi,limit", rows);
      } else {
        for (const auto& r : ordstat::fig3_rows(fig_p, ctx))
          rows.push_back({std::to_string(r.n), fmt15(r.mi_bernoulli_step1 / out.divisor),
                          fmt15(r.mi_uniform_step1 / out.divisor)});
        write_figure_csv(path, "n,mi_bernoulli_p05_step1,mi_uniform_step1", rows);
      }
      std::cerr << "wrote " << path << "\n";
    } else if (*ver_cmd) {
      json rows = json::array();
      bool pass = true;
      if (suite == "lemma1" || suite == "all")
        pass = verify_lemma1(ver_budget > 0 ? ver_budget : 100'000, rows) && pass;
      if (suite == "quadrature" || suite == "all")
        pass = verify_quadrature(ver_budget > 0 ? ver_budget : 10'000'000, rows) && pass;
      if (suite == "enumeration" || suite == "all")
        pass = verify_enumeration(ver_seed, rows) && pass;
      if (suite == "bound" || suite == "all")
        pass = verify_bound(ver_seed, ver_budget > 0 ? ver_budget : 200, rows) && pass;
      if (suite == "covariance" || suite == "all")
        pass = verify_covariance(ver_seed, ver_budget > 0 ? ver_budget : 10'000'000, rows) &&
               pass;
      const json report{{"suite", suite}, {"seed", ver_seed}, {"pass", pass},
                        {"checks", rows}};
      std::cout << report.dump(2) << "\n";
      return pass ? 0 : 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
