#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "coslab/error.hpp"
#include "coslab/lab/commands.hpp"
#include "coslab/lab/scan.hpp"
#include "coslab/lab/suites.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw coslab::Error(coslab::ErrorCode::kInvalidArgument, "cannot open '" + path + "' for writing");
    stream = &file;
  }
};

void emit(const std::string& out, const coslab::Json& j) {
  Output o(out);
  *o.stream << j.dump(2) << '\n';
}

void print_distribution(const std::string& label, const coslab::lab::Distribution& d) {
  std::cerr << label << ": count=" << d.count << " min=" << d.min << " mean=" << d.mean << " median=" << d.median
            << " max=" << d.max << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace coslab::lab;

  CLI::App app{"coslab: Fourier analysis and structure experiments on finite abelian groups"};
  app.require_subcommand(1);

  std::string group, set, out, format = "jsonl", suite;
  double eps = 0.0, k = 0.0;
  std::size_t m = 1;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool timing = false;

  auto add_target = [&](CLI::App* cmd) {
    cmd->add_option("--group", group, "Group spec, e.g. Z5 or Z2xZ6")->required();
    cmd->add_option("--set", set, "Set literal, e.g. {0,1,4} or {(0,1),(1,2)}")->required();
    cmd->add_option("--out", out, "Write JSON here instead of stdout");
  };

  auto* transform = app.add_subcommand("transform", "Full Fourier table of 1_A");
  add_target(transform);
  auto* mg = app.add_subcommand("mg", "M_G(A) with its witness and nearest subgroup");
  add_target(mg);
  auto* spec = app.add_subcommand("spec", "Large spectrum of A");
  add_target(spec);
  spec->add_option("--eps", eps, "Threshold in (0,1)")->required();
  auto* nearest = app.add_subcommand("nearest", "Nearest subgroup or union of m subgroups");
  add_target(nearest);
  nearest->add_option("--m", m, "Number of subgroups in the union")->capture_default_str();
  auto* dichotomy = app.add_subcommand("dichotomy", "Structure-or-witness outcome");
  add_target(dichotomy);
  dichotomy->add_option("--K", k, "Structure parameter K >= 1")->required();

  SuiteOptions suite_opts;
  auto* verify = app.add_subcommand("verify", "Run a verification suite; exit 0 iff every instance passes");
  verify->add_option("--suite", suite, "Suite name")->required();
  verify->add_option("--max-order", suite_opts.max_order, "Largest order in exhaustive suites")->capture_default_str();
  verify->add_option("--trials", suite_opts.trials, "Instances for randomized suites (0: suite default)");

  ScanConfig scan_cfg;
  std::string source = "exhaustive-symmetric";
  std::vector<std::string> scan_groups;
  auto* scan = app.add_subcommand("scan", "Scan sets and emit M_G, nearest distance, A(G) norm, Spencer statistic");
  scan->add_option("--group", scan_groups, "Group spec (repeatable); default is an order range");
  scan->add_option("--min-order", scan_cfg.min_order)->capture_default_str();
  scan->add_option("--max-order", scan_cfg.max_order);
  scan->add_option("--source", source, "exhaustive-symmetric, random-symmetric or spencer")->capture_default_str();
  scan->add_option("--count", scan_cfg.count, "Sets per group for random sources");
  scan->add_option("--density", scan_cfg.density, "random-symmetric: orbit inclusion probability");
  scan->add_option("--size", scan_cfg.size, "random-symmetric: exact set size");
  scan->add_option("--p", scan_cfg.p, "spencer: prime modulus")->capture_default_str();

  for (auto* cmd : {verify, scan}) {
    cmd->add_option("--seed", seed)->capture_default_str();
    cmd->add_option("--out", out, "Output path (default stdout)");
    cmd->add_option("--format", format, "jsonl or csv")->capture_default_str();
    cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", timing, "Record per-instance wall time");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const coslab::Tolerances tol = coslab::Tolerances::from_env();
    if (*transform) {
      emit(out, cmd_transform(group, set, tol));
    } else if (*mg) {
      emit(out, cmd_mg(group, set, tol));
    } else if (*spec) {
      emit(out, cmd_spec(group, set, eps, tol));
    } else if (*nearest) {
      emit(out, cmd_nearest(group, set, m));
    } else if (*dichotomy) {
      emit(out, cmd_dichotomy(group, set, k, tol));
    } else if (*verify) {
      suite_opts.seed = seed;
      suite_opts.jobs = jobs;
      suite_opts.timing = timing;
      const OutputFormat fmt = parse_format(format);
      const auto records = run_suite(suite, suite_opts);
      Output o(out);
      RecordWriter writer(*o.stream, fmt, CsvLayout::kVerify);
      std::size_t failed = 0;
      for (const auto& r : records) {
        writer.write(r);
        if (r.pass && !*r.pass) ++failed;
      }
      std::cerr << suite << ": " << records.size() - failed << "/" << records.size() << " passed\n";
      return failed == 0 ? 0 : kExitFail;
    } else if (*scan) {
      scan_cfg.groups = scan_groups;
      scan_cfg.source = parse_source(source);
      scan_cfg.seed = seed;
      scan_cfg.jobs = jobs;
      scan_cfg.timing = timing;
      const OutputFormat fmt = parse_format(format);
      const auto records = run_scan(scan_cfg);
      Output o(out);
      RecordWriter writer(*o.stream, fmt, CsvLayout::kScan);
      std::vector<double> normalized;
      for (const auto& r : records) {
        writer.write(r);
        const auto& s = r.outputs.at("spencer_normalized");
        if (s.is_number()) normalized.push_back(s.get<double>());
      }
      if (scan_cfg.source == SetSource::kSpencer && !normalized.empty()) {
        print_distribution("sup|1_A^(g)|/sqrt(p)", summarize(normalized));
      }
    }
  } catch (const coslab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
