// Command-line front end. Every subcommand echoes its parameters and the
// library version, emits locale-independent fixed-format numbers, and is
// byte-reproducible for identical inputs.
//
// Exit codes: 0 success, 1 invariant failure (verify), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kusuoka/kusuoka.hpp"

namespace {

using kusuoka::format_double;
using Params = std::vector<std::pair<std::string, std::string>>;
using Cell = std::variant<std::string, long long, double>;

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
  bool full_precision = false;

  [[nodiscard]] int sig_digits() const { return full_precision ? 0 : 7; }
};

void add_output_flags(CLI::App* cmd, OutputOptions* opt) {
  cmd->add_option("--format", opt->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opt->out_path, "Write output to FILE instead of stdout");
  cmd->add_flag("--full-precision", opt->full_precision,
                "Emit maximal decimal digits of binary64 (default: 7 significant digits)");
}

// Parse-and-rebind so JSON mode prints exactly the same digits as CSV mode.
double rounded_for_json(double x, int sig) {
  if (sig <= 0) {
    return x;
  }
  return std::strtod(format_double(x, sig).c_str(), nullptr);
}

class Emitter {
 public:
  Emitter(const OutputOptions& opt, std::string schema, Params params,
          std::vector<std::string> columns)
      : opt_(opt), schema_(std::move(schema)), params_(std::move(params)),
        columns_(std::move(columns)) {
    if (!opt_.out_path.empty()) {
      file_.open(opt_.out_path);
      if (!file_) {
        throw std::runtime_error("cannot open output file: " + opt_.out_path);
      }
    }
    if (csv()) {
      out() << "# library=" << kusuoka::kLibraryName << " version=" << kusuoka::kVersion << "\n";
      out() << "# schema=" << schema_ << "\n";
      out() << "# params";
      for (const auto& [k, v] : params_) {
        out() << ' ' << k << '=' << v;
      }
      out() << "\n";
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        out() << (i ? "," : "") << columns_[i];
      }
      out() << "\n";
    }
  }

  void row(const std::vector<Cell>& cells) {
    if (csv()) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
          out() << ',';
        }
        out() << to_csv(cells[i]);
      }
      out() << "\n";
    } else {
      nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
      for (const auto& c : cells) {
        jrow.push_back(to_json(c));
      }
      rows_.push_back(std::move(jrow));
    }
  }

  void scalar(const std::string& key, double value) {
    if (csv()) {
      out() << "# " << key << '=' << format_double(value, opt_.sig_digits()) << "\n";
    } else {
      scalars_[key] = rounded_for_json(value, opt_.sig_digits());
    }
  }

  void finish() {
    if (!csv()) {
      nlohmann::ordered_json doc;
      doc["library"] = kusuoka::kLibraryName;
      doc["version"] = kusuoka::kVersion;
      doc["schema"] = schema_;
      nlohmann::ordered_json jp;
      for (const auto& [k, v] : params_) {
        jp[k] = v;
      }
      doc["params"] = std::move(jp);
      doc["columns"] = columns_;
      doc["rows"] = std::move(rows_);
      if (!scalars_.empty()) {
        doc["scalars"] = std::move(scalars_);
      }
      out() << doc.dump(2) << "\n";
    }
  }

 private:
  [[nodiscard]] bool csv() const { return opt_.format == "csv"; }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  std::string to_csv(const Cell& c) {
    if (std::holds_alternative<std::string>(c)) {
      return std::get<std::string>(c);
    }
    if (std::holds_alternative<long long>(c)) {
      return std::to_string(std::get<long long>(c));
    }
    return format_double(std::get<double>(c), opt_.sig_digits());
  }

  nlohmann::ordered_json to_json(const Cell& c) {
    if (std::holds_alternative<std::string>(c)) {
      return std::get<std::string>(c);
    }
    if (std::holds_alternative<long long>(c)) {
      return std::get<long long>(c);
    }
    return rounded_for_json(std::get<double>(c), opt_.sig_digits());
  }

  OutputOptions opt_;
  std::string schema_;
  Params params_;
  std::vector<std::string> columns_;
  std::ofstream file_;
  nlohmann::ordered_json rows_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json scalars_;
};

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureArgs {
  int depth = -1;
  std::string word;
  bool word_given = false;
  OutputOptions out;
};

int run_measure(const MeasureArgs& args) {
  Params params;
  if (args.word_given) {
    params.emplace_back("word", args.word);
  } else {
    params.emplace_back("depth", std::to_string(args.depth));
  }
  params.emplace_back("format", args.out.format);
  params.emplace_back("full_precision", args.out.full_precision ? "1" : "0");
  Emitter emit(args.out, "measure.v1", std::move(params),
               {"word", "mass", "c1", "c2", "c3", "r", "theta"});

  const auto emit_word = [&emit](const std::string& label, const kusuoka::CellState& cell) {
    const double mass = kusuoka::cell_state_mass(cell);
    const kusuoka::PlanePoint ratio(
        {kusuoka::cell_state_mass(kusuoka::child_cell(cell, 1)) / mass,
         kusuoka::cell_state_mass(kusuoka::child_cell(cell, 2)) / mass,
         kusuoka::cell_state_mass(kusuoka::child_cell(cell, 3)) / mass});
    emit.row({label, mass, ratio[0], ratio[1], ratio[2], kusuoka::radius(ratio),
              kusuoka::angle(ratio)});
    return mass;
  };

  if (args.word_given) {
    const kusuoka::Word w = kusuoka::Word::parse(args.word);
    kusuoka::CellState cell = kusuoka::root_cell();
    for (int s : w) {
      cell = kusuoka::child_cell(cell, s);
    }
    const double mass = emit_word(w.str(), cell);
    emit.scalar("total_mass", mass);
  } else {
    kusuoka::KahanSum total;
    std::string label(static_cast<std::size_t>(args.depth), '0');
    struct Rec {
      const decltype(emit_word)& emit_one;
      kusuoka::KahanSum& total;
      std::string& label;
      int depth;
      void walk(const kusuoka::CellState& cell, int level) {
        if (level == depth) {
          total.add(emit_one(label, cell));
          return;
        }
        for (int j = 1; j <= 3; ++j) {
          label[static_cast<std::size_t>(level)] = static_cast<char>('0' + j);
          walk(kusuoka::child_cell(cell, j), level + 1);
        }
      }
    } rec{emit_word, total, label, args.depth};
    rec.walk(kusuoka::root_cell(), 0);
    emit.row({std::string("TOTAL"), total.value(), std::string(), std::string(), std::string(),
              std::string(), std::string()});
    emit.scalar("total_mass", total.value());
  }
  emit.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// rho
// ---------------------------------------------------------------------------

struct RhoArgs {
  int m = 8;
  std::string method = "direct";
  OutputOptions out;
};

int run_rho(const RhoArgs& args) {
  Params params = {{"m", std::to_string(args.m)},
                   {"method", args.method},
                   {"format", args.out.format},
                   {"full_precision", args.out.full_precision ? "1" : "0"}};
  std::vector<std::string> columns;
  if (args.method == "both") {
    columns = {"m", "rho_direct", "rho_cesaro", "discrepancy", "d"};
  } else {
    columns = {"m", "rho", "d"};
  }
  Emitter emit(args.out, "rho.v1", std::move(params), std::move(columns));
  for (int m = 1; m <= args.m; ++m) {
    if (args.method == "direct") {
      const double rho = kusuoka::rho_direct(m).value;
      emit.row({static_cast<long long>(m), rho, kusuoka::dsloc_from_rho(rho)});
    } else if (args.method == "cesaro") {
      const double rho = kusuoka::rho_cesaro(m).value;
      emit.row({static_cast<long long>(m), rho, kusuoka::dsloc_from_rho(rho)});
    } else {
      const double direct = kusuoka::rho_direct(m).value;
      const double cesaro = kusuoka::rho_cesaro(m).value;
      emit.row({static_cast<long long>(m), direct, cesaro, direct - cesaro,
                kusuoka::dsloc_from_rho(direct)});
    }
  }
  emit.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

struct BoundsArgs {
  int n = 5;
  int grid = 4096;
  double tol = 1e-12;
  OutputOptions out;
};

int run_bounds(const BoundsArgs& args) {
  Params params = {{"n", std::to_string(args.n)},
                   {"grid", std::to_string(args.grid)},
                   {"tol", format_double(args.tol, 0)},
                   {"format", args.out.format},
                   {"full_precision", args.out.full_precision ? "1" : "0"}};
  Emitter emit(args.out, "bounds.v1", std::move(params),
               {"n", "rho_lower", "rho_upper", "d_lower", "d_upper", "theta_min", "theta_max"});
  for (int n = 0; n <= args.n; ++n) {
    const kusuoka::BoundsRow row = kusuoka::bound_scan(n, args.grid, args.tol);
    emit.row({static_cast<long long>(n), row.g_min, row.g_max, row.d_lower, row.d_upper,
              row.theta_min, row.theta_max});
  }
  emit.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

struct CurveArgs {
  int n = 0;
  int samples = 720;
  OutputOptions out;
};

int run_curve(const CurveArgs& args) {
  Params params = {{"n", std::to_string(args.n)},
                   {"samples", std::to_string(args.samples)},
                   {"format", args.out.format},
                   {"full_precision", args.out.full_precision ? "1" : "0"}};
  Emitter emit(args.out, "curve.v1", std::move(params), {"theta", "value"});
  const double pi = std::numbers::pi;
  for (int k = 0; k < args.samples; ++k) {
    // Uniform sweep of (-pi, pi]: excludes -pi, includes pi.
    const double theta = -pi + 2.0 * pi * (k + 1) / args.samples;
    emit.row({theta, kusuoka::transition_power_entropy(args.n, kusuoka::boundary_point(theta))});
  }
  emit.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  int steps = 100;
  long long paths = 1000;
  std::string law = "nu";
  std::string mode = "sampled";
  std::uint64_t seed = 0;
  int hist_bins = 0;
  OutputOptions out;
};

int run_simulate(const SimulateArgs& args) {
  Params params = {{"steps", std::to_string(args.steps)},
                   {"paths", std::to_string(args.paths)},
                   {"law", args.law},
                   {"mode", args.mode},
                   {"seed", std::to_string(args.seed)},
                   {"hist_bins", std::to_string(args.hist_bins)},
                   {"format", args.out.format},
                   {"full_precision", args.out.full_precision ? "1" : "0"}};
  if (args.law == "nu" && args.mode == "exhaustive") {
    throw CLI::ValidationError("--mode exhaustive requires --law uniform");
  }

  const bool histogram = args.hist_bins > 0;
  const double pi = std::numbers::pi;
  std::unique_ptr<Emitter> emit;
  std::unique_ptr<kusuoka::Histogram> hist_r;
  std::unique_ptr<kusuoka::Histogram> hist_theta;
  if (histogram) {
    emit = std::make_unique<Emitter>(args.out, "simulate.hist.v1", std::move(params),
                                     std::vector<std::string>{"variable", "bin_lo", "bin_hi",
                                                              "count"});
    hist_r = std::make_unique<kusuoka::Histogram>(0.0, kusuoka::kDiskRadius, args.hist_bins);
    hist_theta = std::make_unique<kusuoka::Histogram>(-pi, pi, args.hist_bins);
  } else {
    emit = std::make_unique<Emitter>(args.out, "simulate.v1", std::move(params),
                                     std::vector<std::string>{"path", "m", "r", "theta"});
  }

  long long index = 0;
  const auto record = [&](long long path, int step, double r, double theta) {
    if (histogram) {
      hist_r->add(r);
      hist_theta->add(theta);
    } else {
      emit->row({path, static_cast<long long>(step), r, theta});
    }
    ++index;
  };

  if (args.law == "nu") {
    const std::array<int, 1> cps = {args.steps};
    kusuoka::sample_paths(args.steps, args.paths, args.seed, cps,
                          [&record](const kusuoka::ChainSample& s) {
                            record(s.path, s.step, s.r, s.theta);
                          });
  } else if (args.mode == "exhaustive") {
    kusuoka::uniform_word_law_exhaustive(args.steps, [&](double r, double theta) {
      record(index, args.steps, r, theta);
    });
  } else {
    kusuoka::uniform_word_law_sampled(args.steps, args.paths, args.seed,
                                      [&](double r, double theta) {
                                        record(index, args.steps, r, theta);
                                      });
  }

  if (histogram) {
    for (int i = 0; i < args.hist_bins; ++i) {
      emit->row({std::string("r"), hist_r->bin_lo(i), hist_r->bin_hi(i), hist_r->counts()[i]});
    }
    for (int i = 0; i < args.hist_bins; ++i) {
      emit->row({std::string("theta"), hist_theta->bin_lo(i), hist_theta->bin_hi(i),
                 hist_theta->counts()[i]});
    }
    emit->scalar("samples", static_cast<double>(index));
  }
  emit->finish();
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  kusuoka::VerifyOptions options;
  bool quick = false;
  std::string out_path;
};

int run_verify(VerifyArgs args) {
  if (args.quick) {
    args.options.word_depth = 6;
    args.options.scan_grid = 256;
    args.options.chain_paths = 10000;
    args.options.sandwich_depth = 0;
  }
  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) {
      throw std::runtime_error("cannot open output file: " + args.out_path);
    }
  }
  std::ostream& os = file.is_open() ? file : std::cout;

  os << kusuoka::kLibraryName << ' ' << kusuoka::kVersion << " invariant verification\n";
  const std::vector<kusuoka::SuiteReport> reports = kusuoka::run_all_checks(args.options);
  int passed = 0;
  int failed = 0;
  for (const auto& suite : reports) {
    for (const auto& check : suite.checks) {
      os << (check.passed ? "[PASS] " : "[FAIL] ") << suite.suite << '/' << check.name << " — "
         << check.detail << "\n";
    }
    os << "suite " << suite.suite << ": " << suite.passed() << " passed, " << suite.failed()
       << " failed\n";
    passed += suite.passed();
    failed += suite.failed();
  }
  os << "total: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kusuoka-measure numerics on the two-dimensional Sierpinski gasket"};
  app.set_version_flag("--version", std::string(kusuoka::kVersion));
  app.require_subcommand(1);

  MeasureArgs measure_args;
  auto* measure = app.add_subcommand(
      "measure", "Cell masses and ratio vectors of the Kusuoka measure");
  auto* depth_opt = measure->add_option("--depth", measure_args.depth,
                                        "Enumerate all cells at this depth (0..12)")
                        ->check(CLI::Range(0, 12));
  auto* word_opt = measure->add_option("--word", measure_args.word,
                                       "Single cell address over {1,2,3}; empty = whole gasket");
  depth_opt->excludes(word_opt);
  word_opt->excludes(depth_opt);
  add_output_flags(measure, &measure_args.out);

  RhoArgs rho_args;
  auto* rho = app.add_subcommand("rho", "Entropy sums rho_m and their dimension conversions");
  rho->add_option("--m", rho_args.m, "Largest depth m (1..18)")
      ->check(CLI::Range(1, kusuoka::kMaxRhoDepth))
      ->capture_default_str();
  rho->add_option("--method", rho_args.method, "Evaluation route")
      ->check(CLI::IsMember({"direct", "cesaro", "both"}))
      ->capture_default_str();
  add_output_flags(rho, &rho_args.out);

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand(
      "bounds", "Two-sided bounds on rho and the local spectral dimension from P^n g");
  bounds->add_option("--n", bounds_args.n, "Largest iteration count (0..8)")
      ->check(CLI::Range(0, 8))
      ->capture_default_str();
  bounds->add_option("--grid", bounds_args.grid, "Scan grid size per period (>= 64)")
      ->check(CLI::Range(64, 1 << 22))
      ->capture_default_str();
  bounds->add_option("--tol", bounds_args.tol, "Angular refinement tolerance")
      ->capture_default_str();
  add_output_flags(bounds, &bounds_args.out);

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "Samples of theta -> (P^n g)(phi(theta))");
  curve->add_option("--n", curve_args.n, "Iteration count (0..8)")
      ->check(CLI::Range(0, 8))
      ->capture_default_str();
  curve->add_option("--samples", curve_args.samples, "Number of samples over (-pi, pi]")
      ->check(CLI::Range(2, 1 << 22))
      ->capture_default_str();
  add_output_flags(curve, &curve_args.out);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand(
      "simulate", "Seeded Markov-chain paths or the uniform-word ensemble");
  simulate->add_option("--steps", sim_args.steps, "Chain steps / word length")
      ->check(CLI::Range(0, 1 << 20))
      ->capture_default_str();
  simulate->add_option("--paths", sim_args.paths, "Number of paths (or samples)")
      ->check(CLI::Range(0LL, 1LL << 32))
      ->capture_default_str();
  simulate->add_option("--law", sim_args.law, "Ensemble: chain law (nu) or uniform words")
      ->check(CLI::IsMember({"nu", "uniform"}))
      ->capture_default_str();
  simulate->add_option("--mode", sim_args.mode, "Uniform-word mode")
      ->check(CLI::IsMember({"sampled", "exhaustive"}))
      ->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--hist-bins", sim_args.hist_bins,
                       "Emit r/theta histograms with this many bins instead of raw samples")
      ->check(CLI::Range(0, 1 << 20))
      ->capture_default_str();
  add_output_flags(simulate, &sim_args.out);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
  verify->add_option("--word-depth", verify_args.options.word_depth,
                     "Depth of the word-indexed checks")
      ->check(CLI::Range(2, 10))
      ->capture_default_str();
  verify->add_option("--grid", verify_args.options.scan_grid, "Scan grid of the bound checks")
      ->check(CLI::Range(64, 1 << 16))
      ->capture_default_str();
  verify->add_option("--paths", verify_args.options.chain_paths, "Chi-square sample size")
      ->check(CLI::Range(1000, 10000000))
      ->capture_default_str();
  verify->add_option("--seed", verify_args.options.seed, "RNG seed")->capture_default_str();
  verify->add_flag("--quick", verify_args.quick, "Smaller depths and grids");
  verify->add_option("--out", verify_args.out_path, "Write report to FILE instead of stdout");
  verify->add_option("--inject-psi-fault", verify_args.options.psi_fault,
                     "Shift the ratio map by this amount (negative-control aid)")
      ->group("");

  try {
    app.parse(argc, argv);

    if (measure->parsed()) {
      measure_args.word_given = word_opt->count() > 0;
      if (!measure_args.word_given && depth_opt->count() == 0) {
        throw CLI::RequiredError("measure: one of --depth / --word");
      }
      return run_measure(measure_args);
    }
    if (rho->parsed()) {
      return run_rho(rho_args);
    }
    if (bounds->parsed()) {
      return run_bounds(bounds_args);
    }
    if (curve->parsed()) {
      return run_curve(curve_args);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_args);
    }
    if (verify->parsed()) {
      return run_verify(verify_args);
    }
    return 2;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
