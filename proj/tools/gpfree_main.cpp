#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gpfree/analysis.hpp"
#include "gpfree/baselines.hpp"
#include "gpfree/io.hpp"

namespace {

using namespace gpfree;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int dispatch(const std::vector<std::string>& args);

std::vector<std::pair<u64, double>> load_table(const std::string& path) {
  std::istringstream in(io::read_file(path));
  std::vector<std::pair<u64, double>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    u64 threshold = 0;
    double value = 0;
    std::string extra;
    if (!(ls >> threshold >> value) || (ls >> extra))
      fail(errc::parse_error,
           path + ":" + std::to_string(lineno) + ": expected two columns");
    entries.push_back({threshold, value});
  }
  return entries;
}

struct KFlags {
  double const_value = 6;
  double eps = 0.5;
  std::string table_path;
  CLI::Option* o_const = nullptr;
  CLI::Option* o_eps = nullptr;
  CLI::Option* o_table = nullptr;
  CLI::Option* o_norm = nullptr;

  void attach(CLI::App* cmd) {
    o_const = cmd->add_option("--k-const", const_value, "constant threshold length");
    o_eps = cmd->add_option("--k-epslog", eps, "threshold length max(3, eps ln n)");
    o_table = cmd->add_option("--k-table", table_path,
                              "step function from a two-column file (n_threshold value)");
    o_norm = cmd->add_flag("--normalize-k",
                           "round values up, then down to even, clamped at 6");
  }

  LengthFunction resolve() const {
    int chosen = (o_const->count() > 0) + (o_eps->count() > 0) + (o_table->count() > 0);
    if (chosen != 1)
      throw UsageError("choose exactly one of --k-const, --k-epslog, --k-table");
    LengthFunction k = o_const->count()  ? LengthFunction::constant(const_value)
                       : o_eps->count()  ? LengthFunction::eps_log(eps)
                                         : LengthFunction::table(load_table(table_path));
    if (o_norm->count()) k = k.normalized();
    return k;
  }
};

struct HFlags {
  double const_value = 1;
  double alpha = 0.5;
  double explog_c = 1;
  std::string table_path;
  CLI::Option* o_const = nullptr;
  CLI::Option* o_power = nullptr;
  CLI::Option* o_explog = nullptr;
  CLI::Option* o_table = nullptr;

  void attach(CLI::App* cmd) {
    o_const = cmd->add_option("--h-const", const_value, "constant gap scale");
    o_power = cmd->add_option("--h-power", alpha, "gap scale n^alpha, alpha in (0,1)");
    o_explog = cmd->add_option("--h-explog", explog_c,
                               "gap scale exp(c ln n / ln ln n), clamped below n = 16");
    o_table = cmd->add_option("--h-table", table_path,
                              "step function from a two-column file (n_threshold value)");
  }

  GapFunction resolve() const {
    int chosen = (o_const->count() > 0) + (o_power->count() > 0) +
                 (o_explog->count() > 0) + (o_table->count() > 0);
    if (chosen != 1)
      throw UsageError(
          "choose exactly one of --h-const, --h-power, --h-explog, --h-table");
    if (o_const->count()) return GapFunction::constant(const_value);
    if (o_power->count()) return GapFunction::power(alpha);
    if (o_explog->count()) return GapFunction::exp_log_ratio(explog_c);
    return GapFunction::table(load_table(table_path));
  }
};

// Collects file outputs so each gets written atomically with a manifest
// carrying enough to replay the run byte for byte.
struct RunContext {
  std::string command;
  std::vector<std::string> argv;
  json params = json::object();
  std::optional<u64> seed;
  std::vector<std::pair<std::string, std::string>> files;

  void add_file(const std::string& path, std::string content) {
    files.push_back({path, std::move(content)});
  }

  void flush() {
    if (files.empty()) return;
    io::RunManifest manifest;
    manifest.command = command;
    manifest.argv = argv;
    manifest.params = params;
    manifest.seed = seed;
    for (const auto& [path, content] : files) manifest.outputs.push_back(path);
    std::string manifest_text = io::manifest_to_string(manifest);
    for (const auto& [path, content] : files) {
      io::write_file_atomic(path, content);
      io::write_file_atomic(io::manifest_path_for(path), manifest_text);
    }
  }
};

void emit(RunContext& ctx, const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    ctx.add_file(out_path, content);
  }
}

std::string results_payload(const std::vector<LemmaCheckResult>& results,
                            const std::string& format) {
  if (format == "csv") return io::check_results_to_csv(results);
  json out;
  out["results"] = json::array();
  for (const auto& r : results) out["results"].push_back(io::check_result_json(r));
  return out.dump(2) + "\n";
}

int finish_checks(RunContext& ctx, const std::vector<LemmaCheckResult>& results,
                  const std::string& out_path, const std::string& format) {
  emit(ctx, out_path, results_payload(results, format));
  ctx.flush();
  int rc = 0;
  for (const auto& r : results) {
    if (!r.holds) {
      rc = 1;
      std::cerr << "check failed: " << r.claim
                << " witness=" << (r.witness.is_null() ? json(r.params) : r.witness).dump()
                << "\n";
    }
  }
  return rc;
}

int run_replay(const std::string& manifest_path) {
  io::RunManifest m = io::manifest_from_string(io::read_file(manifest_path));
  return dispatch(m.argv);
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"geometric-progression-free sequence toolkit"};
  app.set_version_flag("--version", io::kArtifactVersion);
  app.require_subcommand(1);

  // enumerate
  auto* c_enum = app.add_subcommand("enumerate", "list the progression family in [1, max]");
  u64 en_max = 0;
  bool en_minimal = false;
  std::string en_format = "json", en_out;
  KFlags en_k;
  c_enum->add_option("--max", en_max, "window bound")->required();
  en_k.attach(c_enum);
  c_enum->add_flag("--minimal", en_minimal, "keep only minimal members");
  c_enum->add_option("--format", en_format)->check(CLI::IsMember({"json", "csv"}));
  c_enum->add_option("--out", en_out, "output file");

  // build
  auto* c_build = app.add_subcommand("build", "run the random removal process");
  u64 b_max = 0, b_seed = 0;
  std::string b_out, b_records;
  KFlags b_k;
  c_build->add_option("--max", b_max, "window bound")->required();
  b_k.attach(c_build);
  c_build->add_option("--seed", b_seed, "process seed");
  c_build->add_option("--out", b_out, "window output file");
  c_build->add_option("--records", b_records, "exclusion records CSV");

  // check
  auto* c_check = app.add_subcommand("check", "verify a sequence file is progression-free");
  std::string ck_in, ck_mode = "family", ck_format = "json", ck_out;
  u64 ck_max = 0;
  KFlags ck_k;
  c_check->add_option("--in", ck_in, "sequence file (plain list or window JSON)")->required();
  ck_k.attach(c_check);
  c_check->add_option("--mode", ck_mode)->check(CLI::IsMember({"family", "definitional"}));
  auto* ck_max_opt = c_check->add_option("--max", ck_max, "window bound override");
  c_check->add_option("--format", ck_format)->check(CLI::IsMember({"json", "csv"}));
  c_check->add_option("--out", ck_out, "output file");

  // gaps
  auto* c_gaps = app.add_subcommand("gaps", "gap statistics of a sequence file");
  std::string g_in, g_format = "json", g_out;
  u64 g_max = 0;
  HFlags g_h;
  c_gaps->add_option("--in", g_in, "sequence file")->required();
  g_h.attach(c_gaps);
  auto* g_max_opt = c_gaps->add_option("--max", g_max, "window bound override");
  c_gaps->add_option("--format", g_format)->check(CLI::IsMember({"json", "csv"}));
  c_gaps->add_option("--out", g_out, "output file");

  // lemma5
  auto* c_l5 = app.add_subcommand("lemma5", "middle-term count vs d(n; k/2, k/2-1)");
  u64 l5_n = 0, l5_max = 0, l5_trials = 0, l5_seed = 1;
  std::string l5_format = "json", l5_out;
  KFlags l5_k;
  c_l5->add_option("--n", l5_n, "point to check")->required();
  c_l5->add_option("--max", l5_max, "window bound")->required();
  l5_k.attach(c_l5);
  c_l5->add_option("--trials", l5_trials, "also Monte Carlo the survival bound");
  c_l5->add_option("--seed", l5_seed);
  c_l5->add_option("--format", l5_format)->check(CLI::IsMember({"json", "csv"}));
  c_l5->add_option("--out", l5_out, "output file");

  // lemma6
  auto* c_l6 = app.add_subcommand("lemma6", "middle-term separation / block miss probability");
  u64 l6_x = 0, l6_max = 0, l6_trials = 0, l6_seed = 1;
  double l6_c = 1;
  std::string l6_format = "json", l6_out;
  KFlags l6_k;
  HFlags l6_h;
  c_l6->add_option("--x", l6_x, "block start")->required();
  c_l6->add_option("--max", l6_max, "window bound")->required();
  l6_k.attach(c_l6);
  l6_h.attach(c_l6);
  c_l6->add_option("--c", l6_c, "block length multiplier");
  c_l6->add_option("--trials", l6_trials, "Monte Carlo trials for the miss bound");
  c_l6->add_option("--seed", l6_seed);
  c_l6->add_option("--format", l6_format)->check(CLI::IsMember({"json", "csv"}));
  c_l6->add_option("--out", l6_out, "output file");

  // lemma7
  auto* c_l7 = app.add_subcommand("lemma7", "block partition and smoothing bounds");
  u64 l7_x = 0;
  double l7_c = 1, l7_b = 0;
  std::string l7_format = "json", l7_out;
  KFlags l7_k;
  HFlags l7_h;
  c_l7->add_option("--x", l7_x, "block start")->required();
  l7_k.attach(c_l7);
  l7_h.attach(c_l7);
  c_l7->add_option("--c", l7_c, "block length multiplier");
  auto* l7_b_opt = c_l7->add_option("--fit-b", l7_b, "also check sum-s >= bound with this B");
  c_l7->add_option("--format", l7_format)->check(CLI::IsMember({"json", "csv"}));
  c_l7->add_option("--out", l7_out, "output file");

  // sum-s
  auto* c_sums = app.add_subcommand("sum-s", "sum of 2^(-d) over a block");
  u64 ss_x = 0;
  double ss_c = 1;
  std::string ss_format = "json", ss_out;
  KFlags ss_k;
  HFlags ss_h;
  c_sums->add_option("--x", ss_x, "block start")->required();
  ss_k.attach(c_sums);
  ss_h.attach(c_sums);
  c_sums->add_option("--c", ss_c, "block length multiplier");
  c_sums->add_option("--format", ss_format)->check(CLI::IsMember({"json", "csv"}));
  c_sums->add_option("--out", ss_out, "output file");

  // feasible
  auto* c_feas = app.add_subcommand("feasible", "pointwise hypothesis feasibility over a range");
  u64 f_from = 2, f_to = 0, f_step = 1;
  std::string f_format = "json", f_out;
  KFlags f_k;
  HFlags f_h;
  c_feas->add_option("--n-from", f_from);
  c_feas->add_option("--n-to", f_to)->required();
  c_feas->add_option("--n-step", f_step);
  f_k.attach(c_feas);
  f_h.attach(c_feas);
  c_feas->add_option("--format", f_format)->check(CLI::IsMember({"json", "csv"}));
  c_feas->add_option("--out", f_out, "output file");

  // sieve
  auto* c_sieve = app.add_subcommand("sieve", "deterministic baseline sieves");
  u64 sv_max = 0;
  int sv_powerfree = 0;
  double sv_eps = 0;
  std::string sv_out, sv_witnesses;
  c_sieve->add_option("--max", sv_max, "window bound")->required();
  auto* sv_pf_opt = c_sieve->add_option("--power-free", sv_powerfree, "exclude p^t multiples");
  auto* sv_vk_opt = c_sieve->add_option("--var-kfree", sv_eps,
                                        "variable threshold ceil(max(3, eps ln m))");
  c_sieve->add_option("--out", sv_out, "window output file");
  c_sieve->add_option("--witnesses", sv_witnesses, "witness CSV (variable sieve only)");

  // replay
  auto* c_replay = app.add_subcommand("replay", "re-run a manifest");
  std::string rp_path;
  c_replay->add_option("manifest", rp_path, "manifest file")->required();

  std::vector<std::string> parse_args(args.rbegin(), args.rend());
  try {
    app.parse(parse_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunContext ctx;
  ctx.argv = args;

  if (*c_replay) return run_replay(rp_path);

  if (*c_enum) {
    ctx.command = "enumerate";
    LengthFunction k = en_k.resolve();
    ctx.params = {{"max", en_max}, {"k", io::length_function_json(k)}, {"minimal", en_minimal},
                  {"format", en_format}};
    auto family = en_minimal ? enumerate_gk_star(en_max, k) : enumerate_gk(en_max, k);
    std::string payload;
    if (en_format == "csv") {
      payload = io::progressions_to_csv(family);
    } else {
      json out;
      out["results"] = json::array();
      for (const auto& p : family) out["results"].push_back(io::progression_json(p));
      payload = out.dump(2) + "\n";
    }
    emit(ctx, en_out, payload);
    ctx.flush();
    return 0;
  }

  if (*c_build) {
    ctx.command = "build";
    LengthFunction k = b_k.resolve();
    ctx.seed = b_seed;
    ctx.params = {{"max", b_max}, {"k", io::length_function_json(k)}, {"seed", b_seed}};
    ProcessResult result = run_process({b_max, k, b_seed});
    std::string window_text =
        io::window_to_string(result.window, io::length_function_json(k), b_seed);
    emit(ctx, b_out, window_text);
    if (!b_records.empty()) ctx.add_file(b_records, io::exclusions_to_csv(result.exclusions));
    ctx.flush();
    std::cerr << "kept " << result.window.count() << " of " << b_max << ", excluded "
              << result.exclusions.size() << " middle terms\n";
    return 0;
  }

  if (*c_check) {
    ctx.command = "check";
    LengthFunction k = ck_k.resolve();
    std::optional<u64> max_override;
    if (ck_max_opt->count()) max_override = ck_max;
    SequenceWindow w = io::ingest_sequence(ck_in, max_override);
    GpCheckMode mode = ck_mode == "family" ? GpCheckMode::family : GpCheckMode::definitional;
    ctx.params = {{"in", ck_in}, {"k", io::length_function_json(k)}, {"mode", ck_mode}};
    auto found = verify_gp_free(w, k, mode);
    json out;
    out["results"] = json::array();
    if (found) out["results"].push_back(io::progression_json(*found));
    emit(ctx, ck_out, out.dump(2) + "\n");
    ctx.flush();
    if (found) {
      std::cerr << "progression contained in window: " << io::progression_json(*found).dump()
                << "\n";
      return 1;
    }
    return 0;
  }

  if (*c_gaps) {
    ctx.command = "gaps";
    GapFunction h = g_h.resolve();
    std::optional<u64> max_override;
    if (g_max_opt->count()) max_override = g_max;
    SequenceWindow w = io::ingest_sequence(g_in, max_override);
    ctx.params = {{"in", g_in}, {"h", io::gap_function_json(h)}};
    GapReport rep = gap_report(w, h);
    std::string payload = g_format == "csv" ? io::gap_report_to_csv(rep)
                                            : io::gap_report_json(rep).dump(2) + "\n";
    emit(ctx, g_out, payload);
    ctx.flush();
    return 0;
  }

  if (*c_l5) {
    ctx.command = "lemma5";
    LengthFunction k = l5_k.resolve();
    ctx.params = {{"n", l5_n}, {"max", l5_max}, {"k", io::length_function_json(k)},
                  {"trials", l5_trials}, {"seed", l5_seed}};
    std::vector<LemmaCheckResult> results;
    auto star = enumerate_gk_star(l5_max, k);
    results.push_back(lemma5_check(l5_n, l5_max, k, star));
    if (l5_trials > 0) {
      ctx.seed = l5_seed;
      McEstimate mc = membership_probability(l5_n, star, l5_trials, l5_seed);
      LemmaCheckResult bound;
      bound.claim = "lemma5.survival_bound";
      bound.params = {{"n", l5_n}, {"max_n", l5_max}, {"trials", l5_trials},
                      {"seed", l5_seed}, {"std_error", mc.std_error}};
      bound.lhs = mc.estimate;
      bound.rhs = results.front().rhs < 4096
                      ? std::ldexp(1.0, -static_cast<int>(results.front().rhs))
                      : 0.0;
      bound.holds = mc.estimate + 3.0 * mc.std_error >= bound.rhs;
      bound.witness = nullptr;
      results.push_back(bound);
    }
    return finish_checks(ctx, results, l5_out, l5_format);
  }

  if (*c_l6) {
    ctx.command = "lemma6";
    LengthFunction k = l6_k.resolve();
    ctx.params = {{"x", l6_x}, {"max", l6_max}, {"k", io::length_function_json(k)},
                  {"c", l6_c}, {"trials", l6_trials}, {"seed", l6_seed}};
    std::vector<LemmaCheckResult> results;
    results.push_back(middle_separation(l6_max, k, l6_x));
    if (l6_trials > 0) {
      ctx.seed = l6_seed;
      GapFunction h = l6_h.resolve();
      ctx.params["h"] = io::gap_function_json(h);
      results.push_back(interval_miss_mc(l6_x, l6_c, h, k, l6_max, l6_trials, l6_seed));
    }
    return finish_checks(ctx, results, l6_out, l6_format);
  }

  if (*c_l7) {
    ctx.command = "lemma7";
    LengthFunction k = l7_k.resolve();
    GapFunction h = l7_h.resolve();
    ctx.params = {{"x", l7_x}, {"c", l7_c}, {"k", io::length_function_json(k)},
                  {"h", io::gap_function_json(h)}, {"fit_b", l7_b}};
    std::vector<LemmaCheckResult> results;
    results.push_back(lemma7_partition(l7_x, h, k, l7_c));
    double s = sum_S(l7_x, h, k, l7_c);
    results.front().params["sum_s"] = s;
    if (l7_b_opt->count()) {
      LemmaCheckResult lower;
      lower.claim = "lemma7.lower_bound";
      lower.params = {{"x", l7_x}, {"c", l7_c}, {"b", l7_b}};
      lower.lhs = s;
      lower.rhs = lemma7_bound(l7_x, h, k, l7_c, l7_b);
      lower.holds = lower.lhs >= lower.rhs;
      lower.witness = nullptr;
      results.push_back(lower);
    }
    return finish_checks(ctx, results, l7_out, l7_format);
  }

  if (*c_sums) {
    ctx.command = "sum-s";
    LengthFunction k = ss_k.resolve();
    GapFunction h = ss_h.resolve();
    ctx.params = {{"x", ss_x}, {"c", ss_c}, {"k", io::length_function_json(k)},
                  {"h", io::gap_function_json(h)}};
    double s = sum_S(ss_x, h, k, ss_c);
    std::string payload;
    if (ss_format == "csv") {
      std::ostringstream os;
      os << "x,c,h,value\n" << ss_x << ',' << ss_c << ',' << h(ss_x) << ',' << s << '\n';
      payload = os.str();
    } else {
      json out;
      out["results"] = json::array({{{"x", ss_x}, {"c", ss_c}, {"h", h(ss_x)}, {"value", s}}});
      payload = out.dump(2) + "\n";
    }
    emit(ctx, ss_out, payload);
    ctx.flush();
    return 0;
  }

  if (*c_feas) {
    ctx.command = "feasible";
    LengthFunction k = f_k.resolve();
    GapFunction h = f_h.resolve();
    ctx.params = {{"n_from", f_from}, {"n_to", f_to}, {"n_step", f_step},
                  {"k", io::length_function_json(k)}, {"h", io::gap_function_json(h)}};
    return finish_checks(ctx, feasibility_check(h, k, f_from, f_to, f_step), f_out, f_format);
  }

  if (*c_sieve) {
    ctx.command = "sieve";
    if ((sv_pf_opt->count() > 0) == (sv_vk_opt->count() > 0))
      throw UsageError("choose exactly one of --power-free, --var-kfree");
    if (sv_pf_opt->count()) {
      ctx.params = {{"max", sv_max}, {"power_free", sv_powerfree}};
      if (!sv_witnesses.empty()) throw UsageError("--witnesses requires --var-kfree");
      SequenceWindow w = sieve_power_free(sv_max, sv_powerfree);
      emit(ctx, sv_out, io::window_to_string(w, nullptr, std::nullopt));
      ctx.flush();
      std::cerr << "kept " << w.count() << " of " << sv_max << "\n";
    } else {
      ctx.params = {{"max", sv_max}, {"var_kfree_eps", sv_eps}};
      KFreeResult result = sieve_variable_kfree(sv_max, sv_eps);
      emit(ctx, sv_out, io::window_to_string(result.window, nullptr, std::nullopt));
      if (!sv_witnesses.empty())
        ctx.add_file(sv_witnesses, io::witnesses_to_csv(result.witnesses));
      ctx.flush();
      std::cerr << "kept " << result.window.count() << " of " << sv_max << ", excluded "
                << result.witnesses.size() << "\n";
    }
    return 0;
  }

  throw UsageError("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const gpfree::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
