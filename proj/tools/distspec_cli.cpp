// distspec: spectra, families, lemma suites and extremal searches.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distspec/enumerate.hpp"
#include "distspec/families.hpp"
#include "distspec/report.hpp"
#include "distspec/suites.hpp"

namespace {

using namespace distspec;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double tol = kDefaultTolerance;
  bool csv = false;
  std::string output;

  std::string input;
  std::string family;

  std::string suite;
  std::optional<int> nmax;
  int trials = 0;
  std::uint64_t seed = 1;

  std::vector<int> hypertrees, cacti_triangles, cacti_all;
  std::string expect;
  std::optional<int> unsafe_nmax;
  std::string out_dir;
  std::optional<std::uint64_t> shuffle_seed;
};

double env_tolerance() {
  const char* raw = std::getenv("DIST_SPECTRA_TOL");
  if (!raw || !*raw) return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !(v > 0)) throw UsageError(std::string("DIST_SPECTRA_TOL: not a positive number: ") + raw);
  return v;
}

std::string echo(int argc, char** argv) {
  std::string s = "distspec";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

void emit(const Options& opt, const Report& report) {
  std::ofstream file;
  if (!opt.output.empty()) {
    file.open(opt.output);
    if (!file) throw UsageError("cannot write " + opt.output);
  }
  std::ostream& out = opt.output.empty() ? std::cout : file;
  if (opt.csv) write_csv(out, report);
  else write_json(out, report);
}

Hypergraph load_input(const Options& opt) {
  if (!opt.family.empty() && !opt.input.empty()) throw UsageError("give either a file or --family, not both");
  if (!opt.family.empty()) return parse_family(opt.family).build();
  if (opt.input.empty()) throw UsageError("spectrum needs a file or --family");
  std::ifstream in(opt.input);
  if (!in) throw UsageError("cannot open " + opt.input);
  return parse_hypergraph(in);
}

int cmd_spectrum(const Options& opt, Report& report) {
  const auto g = load_input(opt);
  const auto d = distance_matrix(g);
  const auto s = spectral_radius(d, opt.tol);
  std::vector<long> statuses;
  for (VertexId u = 0; u < g.order(); ++u) statuses.push_back(status(d, u));
  report.extra["graph"] = one_line(g);
  report.extra["rho"] = s.rho;
  report.extra["perron"] = s.perron;
  report.extra["residual"] = s.residual;
  report.extra["iterations"] = s.iterations;
  report.extra["status"] = statuses;
  report.extra["min_status"] = min_status(d);
  report.records.push_back({"spectrum", opt.family.empty() ? opt.input : opt.family, "ok", s.rho,
                            s.rho - static_cast<double>(min_status(d)), 1, "margin is rho - s(G)"});
  return kExitOk;
}

int cmd_family(const Options& opt, Report&) {
  std::cout << to_text(parse_family(opt.family).build());
  return kExitOk;
}

int cmd_lemmas(const Options& opt, Report& report) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), opt.suite) == names.end())
    throw UsageError("unknown suite '" + opt.suite + "'");
  SuiteOptions so;
  so.nmax = opt.nmax;
  so.trials = opt.trials;
  so.seed = opt.seed;
  so.tol = opt.tol;
  report.records = run_suite(opt.suite, so);
  return report.failed() ? kExitFail : kExitOk;
}

ClassSpec class_from(const Options& opt) {
  std::vector<std::pair<const std::vector<int>*, Universe>> given;
  if (!opt.hypertrees.empty()) given.emplace_back(&opt.hypertrees, Universe::hypertree_rank3);
  if (!opt.cacti_triangles.empty()) given.emplace_back(&opt.cacti_triangles, Universe::cactus_triangles_only);
  if (!opt.cacti_all.empty()) given.emplace_back(&opt.cacti_all, Universe::cactus_all);
  if (given.size() != 1) throw UsageError("give exactly one of --hypertrees, --cacti-triangles, --cacti-all");
  ClassSpec spec{(*given[0].first)[0], (*given[0].first)[1], given[0].second};
  spec.validate();
  const int cap = opt.unsafe_nmax.value_or(spec.universe == Universe::cactus_all ? 8 : 10);
  if (spec.n > cap)
    throw UsageError("n = " + std::to_string(spec.n) + " exceeds the size cap " + std::to_string(cap) + " for " +
                     to_string(spec.universe) + " (override with --unsafe-nmax)");
  return spec;
}

int cmd_extremal(const Options& opt, Report& report) {
  const auto spec = class_from(opt);
  std::optional<Hypergraph> expected;
  if (!opt.expect.empty()) expected = parse_family(opt.expect).build();
  const auto result = argmax_rho(spec, opt.tol);

  report.extra["class"] = {{"universe", to_string(spec.universe)}, {"n", spec.n}, {"k", spec.k}};
  report.extra["class_size"] = result.class_size;
  report.extra["argmax"] = {{"key", result.best.key.bytes}, {"edges", one_line(result.best.graph)}};
  report.extra["rho"] = result.spectrum.rho;
  report.extra["residual"] = result.spectrum.residual;
  report.extra["gap"] = result.gap;
  report.extra["unique"] = result.unique;
  report.extra["tied"] = result.tied.size();
  if (result.runner_up) report.extra["runner_up"] = one_line(result.runner_up->graph);

  Record rec{"extremal", to_string(spec.universe) + " n=" + std::to_string(spec.n) + " k=" + std::to_string(spec.k),
             result.unique ? "ok" : "tie", result.spectrum.rho, result.gap, 1, ""};
  if (expected) {
    const bool iso = isomorphic(result.best.graph, *expected);
    rec.verdict = iso && result.unique ? "match" : "mismatch";
    rec.detail = opt.expect + (iso ? " is the argmax" : " is not the argmax");
    if (!result.unique) rec.detail += "; maximum is tied";
    report.extra["expect"] = opt.expect;
    report.extra["match"] = iso && result.unique;
  }
  report.records.push_back(std::move(rec));
  return report.failed() ? kExitFail : kExitOk;
}

int cmd_enumerate(const Options& opt, Report& report) {
  const auto spec = class_from(opt);
  EnumerateOptions eo;
  eo.shuffle_seed = opt.shuffle_seed;
  const auto members = enumerate_class(spec, eo);
  if (opt.out_dir.empty()) {
    std::cout << "# " << to_string(spec.universe) << " n=" << spec.n << " k=" << spec.k << " members=" << members.size()
              << '\n';
    for (std::size_t i = 0; i < members.size(); ++i)
      std::cout << "# member " << i + 1 << '\n' << to_text(members[i].graph.sorted());
    return kExitOk;
  }
  fs::create_directories(opt.out_dir);
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::ostringstream name;
    name << "member-" << std::setw(5) << std::setfill('0') << i + 1 << ".txt";
    std::ofstream out(fs::path(opt.out_dir) / name.str());
    if (!out) throw UsageError("cannot write into " + opt.out_dir);
    out << to_text(members[i].graph.sorted());
  }
  report.extra["members"] = members.size();
  report.extra["out_dir"] = opt.out_dir;
  report.records.push_back({"enumerate", to_string(spec.universe) + " n=" + std::to_string(spec.n) +
                                             " k=" + std::to_string(spec.k),
                            "ok", std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::infinity(), members.size(), ""});
  return kExitOk;
}

void add_class_options(CLI::App* sub, Options& opt) {
  sub->add_option("--hypertrees", opt.hypertrees, "rank-3 hypertrees of order n with k edges of size three")
      ->expected(2)
      ->type_name("N K");
  sub->add_option("--cacti-triangles", opt.cacti_triangles, "cacti of order n with k cycles, all triangles")
      ->expected(2)
      ->type_name("N K");
  sub->add_option("--cacti-all", opt.cacti_all, "cacti of order n with k cycles of any length")
      ->expected(2)
      ->type_name("N K");
  sub->add_option("--unsafe-nmax", opt.unsafe_nmax, "raise the enumeration size cap to this order");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance spectral radius toolkit for hypertrees and cacti"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::optional<double> tol_flag;
  app.add_option("--tol", tol_flag, "power-iteration tolerance (default 1e-10, or DIST_SPECTRA_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--csv", opt.csv, "write the per-instance table as CSV instead of JSON");
  app.add_option("-o,--output", opt.output, "write the report to this file");

  auto* spectrum = app.add_subcommand("spectrum", "distance spectral radius, Perron vector and statuses");
  spectrum->add_option("file", opt.input, "hypergraph text file");
  spectrum->add_option("--family", opt.family, "P:n, T:n,a,b or S:p,q,l");

  auto* family = app.add_subcommand("family", "print a named family member in the text format");
  family->add_option("spec", opt.family, "P:n, T:n,a,b or S:p,q,l")->required();

  auto* lemmas = app.add_subcommand("lemmas", "run a lemma suite over its grid");
  lemmas->add_option("--suite", opt.suite, "one of: two-edge sigma-split ordering monotonicity status-bound "
                                           "entry grafts rebalance")
      ->required();
  lemmas->add_option("--nmax", opt.nmax, "largest order in the grid");
  lemmas->add_option("--trials", opt.trials, "random instances (entry suite)")->check(CLI::NonNegativeNumber);
  lemmas->add_option("--seed", opt.seed, "random seed");

  auto* extremal = app.add_subcommand("extremal", "maximize rho over an enumerated class");
  add_class_options(extremal, opt);
  extremal->add_option("--expect", opt.expect, "family expected to be the unique maximizer");

  auto* enumerate = app.add_subcommand("enumerate", "list one member per isomorphism class");
  add_class_options(enumerate, opt);
  enumerate->add_option("--out-dir", opt.out_dir, "write one file per member here instead of stdout");
  enumerate->add_option("--shuffle-seed", opt.shuffle_seed, "shuffle the internal visiting order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    opt.tol = tol_flag ? *tol_flag : env_tolerance();
    Report report;
    report.command = echo(argc, argv);
    report.tolerance = opt.tol;
    int code = kExitOk;
    if (family->parsed()) return cmd_family(opt, report);
    if (spectrum->parsed()) code = cmd_spectrum(opt, report);
    else if (lemmas->parsed()) code = cmd_lemmas(opt, report);
    else if (extremal->parsed()) code = cmd_extremal(opt, report);
    else if (enumerate->parsed()) {
      code = cmd_enumerate(opt, report);
      if (opt.out_dir.empty()) return code;
    }
    emit(opt, report);
    return code;
  } catch (const ParseError& e) {
    std::cerr << "distspec: " << (opt.input.empty() ? "" : opt.input + ": ") << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "distspec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DisconnectedError& e) {
    std::cerr << "distspec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "distspec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "distspec: internal error: " << e.what() << '\n';
    return kExitFail;
  }
}
