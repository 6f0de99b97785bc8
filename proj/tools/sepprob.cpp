// sepprob: estimate, exact, plot and scenarios subcommands.
// Exit codes: 0 success, 1 usage, 2 runtime, 3 exact-check failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sepprob/sepprob.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts plain integers and scientific forms such as 1e7.
std::uint64_t parse_count(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": not a number: " + text);
  }
  if (used != text.size() || !(v >= 0) || v != std::floor(v) || v > 1.8e19)
    throw UsageError(std::string(flag) + ": expected a non-negative integer, got " + text);
  return static_cast<std::uint64_t>(v);
}

struct EstimateArgs {
  std::string scenario;
  std::string custom;
  double alpha0 = 0.5;
  std::string n = "1e7";
  std::string start = "1";
  std::string interval;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string out;
  std::string resume;
  bool realign = false;
  std::string conjecture;
};

std::optional<double> lookup_conjecture(const std::string& name) {
  if (name.empty() || name == "none") return std::nullopt;
  const auto* c = sepprob::find_constant(name);
  if (!c) throw UsageError("unknown conjecture '" + name + "' (see `sepprob exact registry`)");
  return c->value;
}

void print_summary(const sepprob::RunMetadata& meta, std::uint64_t n_end, const sepprob::Counters& c) {
  sepprob::Checkpoint cp;
  cp.counters = c;
  cp.conjecture = meta.conjecture_value;
  const double p = cp.p_ppt();
  const double se = c.n_total ? std::sqrt(p * (1 - p) / static_cast<double>(c.n_total)) : 0.0;
  std::printf("scenario           %s\n", meta.scenario_id.c_str());
  std::printf("indices            [%llu, %llu)\n", static_cast<unsigned long long>(meta.n_start),
              static_cast<unsigned long long>(n_end));
  std::printf("samples            %llu (skipped %llu)\n", static_cast<unsigned long long>(c.n_total),
              static_cast<unsigned long long>(c.n_skipped));
  std::printf("p_ppt              %.12g +- %.3g\n", p, se);
  std::printf("det_greater_frac   %.12g\n", cp.det_greater_fraction());
  if (meta.realign) {
    std::printf("realign_fraction   %.12g\n", cp.realign_fraction());
    std::printf("bound_fraction     %.12g\n", cp.bound_fraction());
  }
  if (const auto r = cp.conjecture_ratio())
    std::printf("conjecture_ratio   %.12g  (%s = %.12g)\n", *r, meta.conjecture_name.c_str(), *meta.conjecture_value);
}

int cmd_estimate(const EstimateArgs& a, const CLI::App& sub) {
  using namespace sepprob;
  const bool resuming = !a.resume.empty();
  const std::uint64_t n = parse_count(a.n, "--n");

  RunMetadata meta;
  std::uint64_t from = 0;
  Counters initial;
  std::filesystem::path out;

  if (resuming) {
    for (const char* flag : {"--custom", "--alpha0", "--start", "--realign", "--conjecture", "--out"})
      if (sub.count(flag)) throw UsageError(std::string(flag) + " cannot be combined with --resume");
    const auto rp = sepprob::resume(a.resume, a.scenario.empty() ? std::nullopt : std::optional(a.scenario));
    meta = rp.meta;
    from = rp.n;
    initial = rp.counters;
    out = a.resume;
  } else {
    if (a.scenario.empty() == a.custom.empty()) throw UsageError("give exactly one of --scenario or --custom");
    std::string conj_name;
    if (!a.scenario.empty()) {
      const auto* entry = find_scenario(a.scenario);
      if (!entry) throw UsageError("unknown scenario '" + a.scenario + "' (see `sepprob scenarios`)");
      meta.scenario = entry->scenario;
      meta.scenario_id = entry->name;
      conj_name = entry->conjecture;
    } else {
      try {
        meta.scenario = parse_custom_scenario(a.custom);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      meta.scenario_id = custom_scenario_id(meta.scenario);
    }
    if (sub.count("--conjecture")) conj_name = a.conjecture;
    meta.conjecture_value = lookup_conjecture(conj_name);
    if (meta.conjecture_value) meta.conjecture_name = conj_name;
    if (!(a.alpha0 >= 0.0 && a.alpha0 < 1.0)) throw UsageError("--alpha0 must lie in [0, 1)");
    meta.alpha0 = a.alpha0;
    meta.d = variate_count(meta.scenario);
    meta.n_start = parse_count(a.start, "--start");
    meta.realign = a.realign;
    from = meta.n_start;
    out = a.out.empty() ? std::filesystem::path(meta.scenario_id + ".csv") : std::filesystem::path(a.out);
  }

  const std::uint64_t n_end = meta.n_start + n;
  const std::uint64_t interval =
      a.interval.empty() ? default_interval(meta.scenario) : parse_count(a.interval, "--interval");
  if (interval == 0) throw UsageError("--interval must be positive");

  CheckpointWriter writer(out, meta, resuming);
  Counters final_counters = initial;
  if (from < n_end) {
    const SequenceSpec spec = make_sequence(static_cast<unsigned>(meta.d), meta.alpha0);
    RunOptions opt;
    opt.n_start = from;
    opt.n_end = n_end;
    opt.interval = interval;
    opt.threads = a.threads;
    opt.realign = meta.realign;
    opt.scenario_id = meta.scenario_id;
    opt.conjecture = meta.conjecture_value;
    opt.initial = initial;
    final_counters = run(meta.scenario, spec, opt, [&](const Checkpoint& cp) { writer.write(cp); }).counters;
  }
  print_summary(meta, std::max(from, n_end), final_counters);
  std::printf("checkpoints        %s\n", out.string().c_str());
  return 0;
}

struct ExactArgs {
  std::string which = "all";
  double alpha = 2.0;
  double d = 1.0;
  double eps = 0.5;
  bool csv = false;
};

int cmd_exact(const ExactArgs& a) {
  using namespace sepprob;
  const bool all = a.which == "all";
  bool ok = true;
  if (all || a.which == "psep") {
    if (all) {
      struct Known {
        double alpha;
        double value;
        const char* form;
      };
      for (const Known& k : {Known{1, 29.0 / 64, "29/64"}, Known{2, 8.0 / 33, "8/33"}, Known{4, 26.0 / 323, "26/323"}}) {
        const double v = psep_hs(k.alpha);
        const bool pass = std::abs(v - k.value) <= 1e-6;
        ok &= pass;
        std::printf("psep_hs(%g) = %.15f   %s = %.15f   %s\n", k.alpha, v, k.form, k.value, pass ? "PASS" : "FAIL");
      }
    } else {
      std::printf("psep_hs(%g) = %.15f\n", a.alpha, psep_hs(a.alpha));
    }
  }
  if (all || a.which == "chi") {
    if (all) {
      double worst = 0.0;
      for (int i = 1; i <= 9; ++i) {
        const double e = i / 10.0;
        worst = std::max(worst, std::abs(chi_master(1, e) - sep_function_10d(e)));
      }
      const bool pass = worst <= 1e-8;
      ok &= pass;
      std::printf("max |chi_master(1, e) - sep_function_10d(e)| on e = 0.1..0.9: %.3g   %s\n", worst,
                  pass ? "PASS" : "FAIL");
      for (int d : {2, 4, 6}) {
        double w = 0.0;
        for (int i = 0; i <= 20; ++i) {
          const double z = i / 20.0;
          w = std::max(w, std::abs(chi_dk(d, 0, z) - chi_master(d, std::sqrt(z))));
        }
        const bool p = w <= 1e-10;
        ok &= p;
        std::printf("max |chi_dk(%d, 0, z) - chi_master(%d, sqrt z)|: %.3g   %s\n", d, d, w, p ? "PASS" : "FAIL");
      }
    } else {
      std::printf("chi_master(%g, %g) = %.15f\n", a.d, a.eps, chi_master(a.d, a.eps));
      if (a.eps > 0) std::printf("sep_function_10d(%g) = %.15f\n", a.eps, sep_function_10d(a.eps));
    }
  }
  if (all || a.which == "xstate") {
    const auto rep = verify_xstate_identities();
    if (a.csv) {
      write_identity_csv(std::cout, rep);
    } else {
      write_identity_table(std::cout, rep);
    }
    ok &= rep.all_passed();
  }
  if (all || a.which == "registry") {
    if (a.csv) {
      write_registry_csv(std::cout);
    } else {
      write_registry_table(std::cout);
      std::printf("%zu constants\n", constants_registry().size());
    }
  }
  if (!all && a.which != "psep" && a.which != "chi" && a.which != "xstate" && a.which != "registry")
    throw UsageError("exact: unknown target '" + a.which + "'");
  return ok ? 0 : kExitCheckFailed;
}

struct PlotArgs {
  std::string csv;
  std::string conjecture;
  std::string out;
};

int cmd_plot(const PlotArgs& a) {
  using namespace sepprob;
  std::optional<double> c;
  std::string title = "estimate / conjecture";
  if (!a.conjecture.empty()) {
    c = lookup_conjecture(a.conjecture);
    title = "estimate / " + a.conjecture;
  }
  if (!std::filesystem::exists(a.csv)) throw std::runtime_error("plot: no such file " + a.csv);
  const auto series = read_ratio_series(a.csv, c);
  const std::string out = a.out.empty() ? a.csv + ".svg" : a.out;
  write_ratio_svg(out, series, title);
  std::printf("%zu points -> %s\n", series.n.size(), out.c_str());
  return 0;
}

int cmd_scenarios() {
  for (const auto& e : sepprob::scenario_catalog()) {
    std::printf("%-24s %ux%u %-7s %-12s d=%-4zu %s\n", e.name.c_str(), e.scenario.n_a, e.scenario.n_b,
                sepprob::to_string(e.scenario.field), sepprob::describe_measure(e.scenario.measure).c_str(),
                sepprob::variate_count(e.scenario), e.conjecture.empty() ? "-" : e.conjecture.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability/PPT probability estimation with quasirandom sampling, and exact checks"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Run or resume an estimation, streaming checkpoints to CSV");
  estimate->add_option("--scenario", est.scenario, "Catalog scenario name (see `scenarios`)");
  estimate->add_option("--custom", est.custom, "Explicit scenario: nA,nB,field,measure[,k|x]");
  estimate->add_option("--alpha0", est.alpha0, "Sequence offset in [0,1)")->capture_default_str();
  estimate->add_option("--n", est.n, "Number of sequence indices in the run (e.g. 1e7)")->capture_default_str();
  estimate->add_option("--start", est.start, "First sequence index")->capture_default_str();
  estimate->add_option("--interval", est.interval, "Samples between checkpoints (default 5e6 for 4x4, else 1e6)");
  estimate->add_option("--threads", est.threads, "Worker threads")->capture_default_str();
  estimate->add_option("--out", est.out, "Checkpoint CSV path (default <scenario>.csv)");
  estimate->add_option("--resume", est.resume, "Continue the run recorded in this CSV, appending to it");
  estimate->add_flag("--realign", est.realign, "Also apply the realignment criterion");
  estimate->add_option("--conjecture", est.conjecture, "Registry constant to compare with, or 'none'");

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact", "Evaluate closed forms and verify the X-state identities");
  exact->add_option("which", ex.which, "all | psep | chi | registry | xstate")->capture_default_str();
  exact->add_option("--alpha", ex.alpha, "Dyson-type parameter for psep")->capture_default_str();
  exact->add_option("--d", ex.d, "Dyson index for chi")->capture_default_str();
  exact->add_option("--eps", ex.eps, "Singular-value ratio for chi")->capture_default_str();
  exact->add_flag("--csv", ex.csv, "Machine-readable output for registry/xstate");

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "SVG chart of estimate/conjecture ratio against iterations");
  plot->add_option("--csv", pl.csv, "Checkpoint CSV")->required();
  plot->add_option("--conjecture", pl.conjecture, "Registry constant (default: the CSV's ratio column)");
  plot->add_option("--out", pl.out, "Output SVG (default <csv>.svg)");

  auto* scenarios = app.add_subcommand("scenarios", "List catalog scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*estimate) return cmd_estimate(est, *estimate);
    if (*exact) return cmd_exact(ex);
    if (*plot) return cmd_plot(pl);
    if (*scenarios) return cmd_scenarios();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
