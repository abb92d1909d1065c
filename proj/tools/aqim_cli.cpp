// Command-line front end: run registered experiments, evaluate any closed
// form, estimate subspace merits for explicit dimensions, and emit CSV/JSON.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqim/aqim.hpp"

namespace aqim::cli {

namespace {

std::string format_g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::filesystem::path resolve_out_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("AQIM_OUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  return p;
}

int write_records(const std::vector<ExperimentRecord>& records, const std::string& format,
                  const std::string& out, bool timing, std::ostream& os) {
  const std::string text = format == "json" ? emit_json(records, timing)
                                            : emit_csv(records, timing);
  if (out.empty()) {
    os << text;
  } else {
    const auto path = resolve_out_path(out);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path.string());
    f << text;
  }
  return exit_code_for(records);
}

struct ScalarFlags {
  std::int64_t d1 = 0, d2 = 0, d_c = 0, d = 0, dim = 0;
  std::int64_t m = 0, k = 0;
  double alpha = 0.0, kappa = 0.0, x = 0.0, y = 0.0, p = 0.0;
};

json scalar_params(const ScalarFlags& f) {
  json p = json::object();
  if (f.d1 > 0) p["d1"] = f.d1;
  if (f.d2 > 0) p["d2"] = f.d2;
  if (f.d_c > 0) p["dC"] = f.d_c;
  if (f.d > 0) p["d"] = f.d;
  if (f.dim > 0) p["dim"] = f.dim;
  if (f.m > 0) p["m"] = f.m;
  if (f.k > 0) p["k"] = f.k;
  if (f.alpha != 0.0) p["alpha"] = f.alpha;
  if (f.kappa != 0.0) p["kappa"] = f.kappa;
  if (f.x != 0.0) p["x"] = f.x;
  if (f.y != 0.0) p["y"] = f.y;
  if (f.p != 0.0) p["p"] = f.p;
  return p;
}

/// Evaluates one closed-form id into a BoundValue; tail ids are log-space
/// since their linear values underflow doubles routinely.
BoundValue eval_bound(const std::string& id, const ScalarFlags& f) {
  BoundValue out;
  out.id = id;
  out.params = scalar_params(f);
  BoundParams bp;
  bp.d1 = f.d1;
  bp.d2 = f.d2;
  bp.d_c = f.d_c;
  bp.d = f.d;
  bp.m = static_cast<int>(f.m);
  bp.k = static_cast<int>(f.k);
  TailParams tp;
  tp.alpha = f.alpha;
  tp.d1 = f.d1;
  tp.d2 = f.d2;
  tp.d_c = f.d_c;
  tp.d = f.d;
  tp.m = static_cast<int>(f.m);
  tp.k = static_cast<int>(f.k);
  tp.kappa = f.kappa;
  tp.dim = f.dim;

  for (auto b : {BoundId::r, BoundId::s, BoundId::t, BoundId::u, BoundId::t_multi,
                 BoundId::rmt_factor})
    if (id == to_string(b)) {
      os << format_g6(bound_value(b, bp)) << "\n";
      return 0;
    }
  for (auto e : {ExpectationIdentity::hs2_state_vs_mixed, ExpectationIdentity::hs2_state_vs_projector,
                 ExpectationIdentity::hs2_projector_vs_mixed})
    if (id == to_string(e)) {
      os << format_g6(expectation_identity(e, f.d1, f.d2, f.d_c)) << "\n";
      return 0;
    }
  for (auto a : {AvgDistanceBound::lb_identity_B1, AvgDistanceBound::lb_identity_B2,
                 AvgDistanceBound::lb_pair_B2_simple, AvgDistanceBound::v1, AvgDistanceBound::v2})
    if (id == to_string(a)) {
      os << format_g6(avg_distance_bound(a, f.d1, f.d2, f.d_c)) << "\n";
      return 0;
    }
  for (auto t : {TailId::thm2_average_variation, TailId::thm4_identity_net,
                 TailId::thm5_projector_net, TailId::prop3_projector_vs_mixed,
                 TailId::thm6_multipartite_identity, TailId::thm7_multipartite_projector,
                 TailId::prop4_multipartite_pi_mixed, TailId::cor3_haar_kuniform, TailId::levy,
                 TailId::grassmann, TailId::su, TailId::pair_distance})
    if (id == std::string("tail-") + to_string(t)) {
      const double lnp = tail_bound(t, tp);
      os << "ln(p) <= " << format_g6(lnp) << "\n";
      os << "p <= " << format_g6(std::min(1.0, std::exp(lnp))) << "\n";
      return 0;
    }
  for (auto d : {DcMaxId::bipartite_mixed, DcMaxId::multipartite_identity, DcMaxId::random_code})
    if (id == to_string(d)) {
      os << format_g6(dc_max(d, tp)) << "\n";
      return 0;
    }
  if (id == "ratio-factor") {
    os << format_g6(ratio_factor(f.d_c, f.d1 * f.d2)) << "\n";
    return 0;
  }
  if (id == "w") {
    os << format_g6(lower_bound_w(f.d_c, f.d1 * f.d2)) << "\n";
    return 0;
  }
  if (id == "pochhammer") {
    os << format_g6(pochhammer(f.x, f.y)) << "\n";
    return 0;
  }
  if (id == "gbinom") {
    os << format_g6(generalized_binomial(f.x, f.y)) << "\n";
    return 0;
  }
  if (id == "binary-entropy") {
    os << format_g6(binary_entropy(f.p)) << "\n";
    return 0;
  }
  throw std::invalid_argument("unknown closed-form id: " + id);
}

std::vector<int> parse_keep_list(const std::string& spec) {
  std::vector<int> keep;
  std::string token;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!token.empty()) keep.push_back(std::stoi(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return keep;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& os = std::cout) {
  CLI::App app{"numerics laboratory for random approximate quantum information masking"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 42;
  int workers = 1;
  std::string format = "csv";
  std::string out_path;
  bool timing = false;
  app.add_option("--seed", seed, "RNG seed (default 42)");
  app.add_option("--workers", workers, "worker threads; results do not depend on the count");
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path,
                 "output file (relative paths resolve under $AQIM_OUT_DIR); stdout if absent");
  app.add_flag("--timing", timing,
               "emit measured wall_time_ms instead of 0 (breaks byte-identical replay)");

  // --- list ------------------------------------------------------------
  auto* list_cmd = app.add_subcommand("list", "list registered experiments and their parameters");

  // --- experiment --------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment", "run a registered experiment");
  std::string exp_name;
  exp_cmd->add_option("name", exp_name, "experiment name (see `list`)")->required();
  std::map<std::string, double> exp_flag_values;
  {
    std::vector<std::string> keys;
    for (const auto& def : experiment_registry())
      for (const auto& [key, value] : def.defaults.items())
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    for (const auto& key : keys) {
      exp_flag_values[key] = 0.0;
      exp_cmd->add_option("--" + key, exp_flag_values[key], "experiment parameter " + key);
    }
  }

  // --- bound -------------------------------------------------------------
  auto* bound_cmd = app.add_subcommand("bound", "evaluate a closed-form value or tail bound");
  std::string bound_id;
  ScalarFlags flags;
  bound_cmd->add_option("--id", bound_id, "closed-form id, e.g. r, s, t, u, ratio-factor, w")
      ->required();
  bound_cmd->add_option("--d1", flags.d1, "first party dimension");
  bound_cmd->add_option("--d2", flags.d2, "second party dimension");
  bound_cmd->add_option("--dC", flags.d_c, "subspace dimension");
  bound_cmd->add_option("--d", flags.d, "common local dimension");
  bound_cmd->add_option("--m", flags.m, "number of parties");
  bound_cmd->add_option("--k", flags.k, "subsystem order");
  bound_cmd->add_option("--alpha", flags.alpha, "deviation parameter");
  bound_cmd->add_option("--kappa", flags.kappa, "Lipschitz constant (generic tails)");
  bound_cmd->add_option("--dim", flags.dim, "ambient dimension (generic tails)");
  bound_cmd->add_option("--x", flags.x, "first argument (pochhammer/gbinom)");
  bound_cmd->add_option("--y", flags.y, "second argument (pochhammer/gbinom)");
  bound_cmd->add_option("--p", flags.p, "probability argument (binary-entropy)");

  // --- merit ---------------------------------------------------------------
  auto* merit_cmd = app.add_subcommand(
      "merit", "estimate a subspace figure of merit on a seeded random isometry");
  std::string merit_id = "avg-inaccuracy";
  std::string keep_spec;
  std::int64_t merit_d1 = 0, merit_d2 = 0, merit_d = 2, merit_dc = 2, merit_samples = 2000;
  int merit_m = 0, merit_k = 1;
  merit_cmd->add_option("--merit", merit_id,
                        "one of avg-variation, max-variation, avg-inaccuracy, max-inaccuracy, "
                        "avg-inaccuracy-mixed, max-inaccuracy-mixed, qec-interval");
  merit_cmd->add_option("--d1", merit_d1, "bipartite: first party dimension");
  merit_cmd->add_option("--d2", merit_d2, "bipartite: second party dimension");
  merit_cmd->add_option("--m", merit_m, "multipartite: number of parties");
  merit_cmd->add_option("--d", merit_d, "multipartite: local dimension (default 2)");
  merit_cmd->add_option("--dC", merit_dc, "subspace dimension");
  merit_cmd->add_option("--k", merit_k, "subsystem order");
  merit_cmd->add_option("--keep", keep_spec, "explicit subsystem, e.g. 1,3 (overrides --k)");
  merit_cmd->add_option("--samples", merit_samples, "sample count");

  // --- thresholds ----------------------------------------------------------
  auto* thr_cmd = app.add_subcommand("thresholds", "closed-form threshold scans m*(l)");
  std::string family = "mask1";
  std::int64_t thr_d = 2;
  int l_min = 8, l_max = 24, thr_cap = kThresholdScanCap;
  double thr_alpha = 1e-4, thr_zeta = 0.25, thr_gamma = 0.25, thr_eta0 = 1e-3, thr_a = 1.0 / 6.0;
  thr_cmd->add_option("--family", family,
                      "mask1 | mask2 | mask3 | aqecc-fixed | aqecc-decaying")
      ->check(CLI::IsMember({"mask1", "mask2", "mask3", "aqecc-fixed", "aqecc-decaying"}));
  thr_cmd->add_option("--d", thr_d, "local dimension");
  thr_cmd->add_option("--l-min", l_min, "smallest number of logical qudits");
  thr_cmd->add_option("--l-max", l_max, "largest number of logical qudits");
  thr_cmd->add_option("--alpha", thr_alpha, "mask1 deviation constant");
  thr_cmd->add_option("--zeta", thr_zeta, "mask2/mask3 ratio k/m");
  thr_cmd->add_option("--gamma", thr_gamma, "aqecc ratio k/m");
  thr_cmd->add_option("--eta0", thr_eta0, "aqecc-fixed target inaccuracy");
  thr_cmd->add_option("--a", thr_a, "aqecc-decaying inaccuracy exponent scale");
  thr_cmd->add_option("--cap", thr_cap, "scan cap for m");

  try {
    std::vector<std::string> argv_copy = args;
    std::reverse(argv_copy.begin(), argv_copy.end());
    app.parse(argv_copy);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      os << app.help();
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 1;
  }

  try {
    if (*list_cmd) {
      if (format == "json") {
        os << list_experiments().dump(2) << "\n";
      } else {
        for (const auto& def : experiment_registry()) {
          os << def.name << "\t" << def.description << "\t" << def.defaults.dump() << "\n";
        }
      }
      return 0;
    }

    if (*exp_cmd) {
      json params = json::object();
      for (const auto& [key, value] : exp_flag_values)
        if (exp_cmd->count("--" + key) > 0) params[key] = value;
      auto records = run_experiment(exp_name, params, seed, workers);
      return write_records(records, format, out_path, timing, os);
    }

    if (*bound_cmd) {
      return eval_bound(bound_id, flags, os);
    }

    if (*merit_cmd) {
      PartitionSpec part = merit_m > 0 ? PartitionSpec::qudits(merit_m, merit_d)
                                       : PartitionSpec::bipartite(merit_d1, merit_d2);
      RngStream rng(seed);
      RngStream iso_rng = rng.split(1);
      const Isometry v = random_isometry(part, merit_dc, iso_rng);
      RngStream est_rng = rng.split(2);
      ExperimentRecord rec;
      rec.name = "merit";
      rec.seed = seed;
      rec.params["dC"] = merit_dc;
      rec.params["merit"] = merit_id;
      if (merit_m > 0) {
        rec.params["m"] = merit_m;
        rec.params["d"] = merit_d;
      } else {
        rec.params["d1"] = merit_d1;
        rec.params["d2"] = merit_d2;
      }
      if (merit_id == "qec-interval") {
        const QecInterval iv = qec_interval(v, merit_k, merit_samples, est_rng, workers);
        rec.params["k"] = merit_k;
        rec.samples = merit_samples;
        rec.empirical = iv.subsystem_variance.value;
        rec.std_error = iv.subsystem_variance.std_error;
        rec.analytic = iv.upper;
        rec.params["interval_lower"] = iv.lower;
        rec.params["interval_upper"] = iv.upper;
        rec.verdict = Verdict::informational;
      } else {
        const SubspaceMerit merit = subspace_merit_from_string(merit_id);
        SelectorOrOrder which = merit_k;
        if (!keep_spec.empty()) which = SubsystemSelector(parse_keep_list(keep_spec));
        else rec.params["k"] = merit_k;
        const MeritReport rep = subspace_merit_estimate(v, which, merit, merit_samples, est_rng,
                                                        workers);
        rec.samples = rep.samples;
        rec.empirical = rep.value;
        rec.std_error = rep.std_error;
        rec.params["kind"] = to_string(rep.kind);
        rec.verdict = Verdict::informational;
      }
      return write_records({rec}, format, out_path, timing, os);
    }

    if (*thr_cmd) {
      std::vector<ExperimentRecord> records;
      for (int l = l_min; l <= l_max; ++l) {
        ExperimentRecord rec;
        rec.name = "thresholds";
        rec.seed = seed;
        rec.params["family"] = family;
        rec.params["l"] = l;
        rec.params["d"] = thr_d;
        rec.verdict = Verdict::informational;
        if (family == "mask1" || family == "mask2" || family == "mask3") {
          MaskThresholdParams mp;
          mp.d = thr_d;
          mp.d_c = std::pow(static_cast<double>(thr_d), l);
          mp.alpha = thr_alpha;
          mp.zeta = thr_zeta;
          mp.cap = thr_cap;
          const int which = family == "mask1" ? 1 : family == "mask2" ? 2 : 3;
          if (which == 1) rec.params["alpha"] = thr_alpha;
          else rec.params["zeta"] = thr_zeta;
          rec.empirical = mask_threshold(which, mp).m_star;
        } else {
          AqeccThresholdParams ap;
          ap.d = thr_d;
          ap.l = l;
          ap.gamma = thr_gamma;
          ap.eta0 = thr_eta0;
          ap.a = thr_a;
          ap.cap = thr_cap;
          const auto th = aqecc_threshold(
              family == "aqecc-fixed" ? AqeccCase::fixed_eta : AqeccCase::decaying_eta, ap);
          rec.params["gamma"] = thr_gamma;
          if (family == "aqecc-fixed") rec.params["eta0"] = thr_eta0;
          else rec.params["a"] = thr_a;
          rec.empirical = th.m_star;
          rec.analytic = th.coefficient;
          rec.params["code_rate"] = th.code_rate;
        }
        records.push_back(std::move(rec));
      }
      return write_records(records, format, out_path, timing, os);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace aqim::cli

#ifndef AQIM_CLI_NO_MAIN
int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aqim::cli::run(args);
}
#endif
