#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plait/plait.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

constexpr int kDefaultCap = 6;
constexpr std::uint64_t kDefaultSeed = 20240611;

struct Failure {
  int exit_code;
};

// Usage-shaped library errors exit 2, everything else 3.
void check(plait_status st) {
  if (st == PLAIT_OK) return;
  std::cerr << "error: " << plait_status_name(st) << ": " << plait_last_error() << "\n";
  throw Failure{st == PLAIT_INVALID_ARGUMENT ? kExitUsage : kExitNumeric};
}

[[noreturn]] void usage(const std::string& msg) {
  std::cerr << "usage error: " << msg << "\n";
  throw Failure{kExitUsage};
}

std::string take(char* s) {
  std::string out(s);
  plait_string_free(s);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "error: IoError: cannot write " << path.string() << "\n";
    throw Failure{kExitNumeric};
  }
  std::cerr << "wrote " << path.string() << "\n";
}

// Prints to stdout, or writes <out>/<name> when an output directory is set.
void emit(const std::optional<std::string>& out_dir, const std::string& name, const std::string& text) {
  if (out_dir) {
    write_file(std::filesystem::path(*out_dir) / name, text);
  } else {
    std::cout << text << "\n";
  }
}

struct Options {
  std::optional<std::string> out;
  double tol = 0.0;

  int n = 0;
  double a = 0.0;
  std::vector<double> window{-8 * std::numbers::pi, 4 * std::numbers::pi};
  std::string method = "all";
  double step = 0.0;
  bool json = false;

  std::string builtin;
  std::string system_file;
  std::string emit_kind = "json";
  int cap = kDefaultCap;

  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;

  std::string figure;
};

int run_threshold(const Options& o) {
  if (o.n < 2) usage("--n must be at least 2");
  double a = 0.0;
  check(plait_threshold(o.n, &a));
  const bool even = o.n % 2 == 0;
  const char* branch = even ? "N even: a* = pi/2" : "N odd: a* = pi / (2 sin(pi (N-1) / (2N)))";
  char value[64];
  std::snprintf(value, sizeof value, "%.9f", a);
  if (o.json) {
    std::string text = std::string("{\"n\": ") + std::to_string(o.n) + ", \"threshold\": " + value +
                       ", \"branch\": \"" + (even ? "even" : "odd") + "\"}";
    emit(o.out, "threshold-n" + std::to_string(o.n) + ".json", text);
  } else {
    std::cout << value << "\n" << branch << "\n";
  }
  return kExitOk;
}

int run_classify(const Options& o) {
  if (o.n < 2) usage("--n must be at least 2");
  char* out = nullptr;
  check(plait_classify(o.n, o.a, o.window[0], o.window[1], o.method.c_str(), o.step, o.tol, &out));
  emit(o.out, "classify-n" + std::to_string(o.n) + ".json", take(out));
  return kExitOk;
}

int run_stage(const Options& o) {
  if (o.builtin.empty() == o.system_file.empty()) usage("give exactly one of --builtin or --system");
  if (o.n < 0) usage("--n must be non-negative");
  if (o.n > o.cap) usage("stage " + std::to_string(o.n) + " exceeds the cap " + std::to_string(o.cap));
  if (o.emit_kind == "both" && !o.out) usage("--emit both needs --out");

  plait_system* sys = nullptr;
  if (!o.builtin.empty()) {
    check(plait_system_builtin(o.builtin.c_str(), &sys));
  } else {
    check(plait_system_load(o.system_file.c_str(), &sys));
  }
  std::unique_ptr<plait_system, void (*)(plait_system*)> guard(sys, plait_system_free);

  const std::string stem =
      "stage-" + (o.builtin.empty() ? std::filesystem::path(o.system_file).stem().string() : o.builtin) + "-n" +
      std::to_string(o.n);
  char* out = nullptr;
  if (o.emit_kind != "svg") {
    check(plait_stage_json(sys, o.n, &out));
    emit(o.out, stem + ".json", take(out));
  }
  if (o.emit_kind != "json") {
    check(plait_stage_svg(sys, o.n, &out));
    emit(o.out, stem + ".svg", take(out));
  }
  return kExitOk;
}

int run_system(const Options& o) {
  plait_system* sys = nullptr;
  check(plait_system_builtin(o.builtin.c_str(), &sys));
  std::unique_ptr<plait_system, void (*)(plait_system*)> guard(sys, plait_system_free);
  char* out = nullptr;
  check(plait_system_json(sys, &out));
  emit(o.out, o.builtin + ".json", take(out));
  return kExitOk;
}

int run_verify(const Options& o) {
  int passed = 0;
  char* out = nullptr;
  check(plait_verify(o.suite.c_str(), o.seed, &passed, &out));
  emit(o.out, "verify-" + o.suite + ".json", take(out));
  return passed ? kExitOk : kExitVerifyFailed;
}

int run_figures(const Options& o) {
  if (!o.out) usage("figures needs --out DIR");
  bool found = o.figure.empty();
  for (int i = 0; i < plait_figure_count(); ++i) {
    const std::string name = plait_figure_name(i);
    if (!o.figure.empty() && name != o.figure) continue;
    found = true;
    char* svg = nullptr;
    check(plait_figure_svg(name.c_str(), &svg));
    write_file(std::filesystem::path(*o.out) / (name + ".svg"), take(svg));
  }
  if (!found) usage("unknown figure '" + o.figure + "'");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Plaiting and nesting of arc families"};
  app.set_version_flag("--version", std::string(plait_version()));
  app.require_subcommand(1);
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--tol", o.tol, "Relative intersection tolerance")->check(CLI::PositiveNumber);

  auto* threshold = app.add_subcommand("threshold", "Critical amplitude a*(N)");
  threshold->add_option("--n", o.n, "Number of arcs")->required();
  threshold->add_flag("--json", o.json, "Emit JSON");

  auto* classify = app.add_subcommand("classify", "Classify the sine family");
  classify->add_option("--n", o.n, "Number of arcs")->required();
  classify->add_option("--a", o.a, "Amplitude")->required();
  classify->add_option("--window", o.window, "Parameter window MIN MAX")->expected(2);
  classify->add_option("--method", o.method, "analytic|lift|enclosure|all")
      ->check(CLI::IsMember({"analytic", "lift", "enclosure", "all"}));
  classify->add_option("--step", o.step, "Sampling step")->check(CLI::PositiveNumber);

  auto* stage = app.add_subcommand("stage", "Build a substitution stage");
  auto* builtin = stage->add_option("--builtin", o.builtin, "nesting|plaiting")
                      ->check(CLI::IsMember({"nesting", "plaiting"}));
  stage->add_option("--system", o.system_file, "System JSON file")->excludes(builtin);
  stage->add_option("--n,--stage", o.n, "Stage index")->required();
  stage->add_option("--emit", o.emit_kind, "json|svg|both")->check(CLI::IsMember({"json", "svg", "both"}));
  stage->add_option("--cap", o.cap, "Largest stage allowed")->check(CLI::Range(0, 10));

  auto* system = app.add_subcommand("system", "Print a built-in system definition");
  system->add_option("--builtin", o.builtin, "nesting|plaiting")
      ->required()
      ->check(CLI::IsMember({"nesting", "plaiting"}));

  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", o.suite, "sine|classifier|ifs|all")
      ->check(CLI::IsMember({"sine", "classifier", "ifs", "all"}));
  verify->add_option("--seed", o.seed, "Random seed");

  auto* figures = app.add_subcommand("figures", "Write the reference figures as SVG");
  figures->add_option("--name", o.figure, "Only this figure");

  // Subcommand flags may also be given before the subcommand name.
  for (auto* sub : {threshold, classify, stage, system, verify, figures}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*threshold) return run_threshold(o);
    if (*classify) return run_classify(o);
    if (*stage) return run_stage(o);
    if (*system) return run_system(o);
    if (*verify) return run_verify(o);
    if (*figures) return run_figures(o);
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return kExitUsage;
}
