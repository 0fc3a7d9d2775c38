// Command-line front end: sweeps, asymptotes and self-verification.
//
//   stdq sweep     --q 1.2 --x 0.5:6:12 --r 1:4 --quantity dist [--oracle-tol 1e-12]
//   stdq asymptote --theta 0.3 --r 1:6
//   stdq verify    --preset full
//
// Exit codes: 0 success, 1 error rows / failed verification, 2 configuration
// error, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stdq/stdq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitErrorRows = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct GridOptions {
  std::vector<std::string> q;
  std::vector<std::string> theta;
  std::vector<std::string> x;
  std::vector<std::string> r;
  std::string quantity = "dist";
  std::optional<double> oracle_tol;
  std::string format = "csv";
  std::string out;
};

void add_deformation_options(CLI::App* cmd, GridOptions& opts) {
  auto* q = cmd->add_option("--q", opts.q, "real deformation q: value, list or start:stop:steps[:log]");
  auto* th = cmd->add_option("--theta", opts.theta, "phase deformation theta (radians), same syntax as --q");
  q->excludes(th);
  th->excludes(q);
}

void add_output_options(CLI::App* cmd, GridOptions& opts) {
  cmd->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out, "output file (default: standard output)");
}

stdq::SweepSpec build_spec(const GridOptions& opts, stdq::Quantity quantity) {
  stdq::SweepSpec spec;
  spec.quantity = quantity;
  for (const auto& item : opts.q) {
    for (double v : stdq::parse_real_grid(item)) spec.deformations.push_back(stdq::DeformationParameter::real(v));
  }
  for (const auto& item : opts.theta) {
    for (double v : stdq::parse_real_grid(item)) spec.deformations.push_back(stdq::DeformationParameter::phase(v));
  }
  for (const auto& item : opts.x) {
    const auto xs = stdq::parse_real_grid(item);
    spec.x_grid.insert(spec.x_grid.end(), xs.begin(), xs.end());
  }
  for (const auto& item : opts.r) {
    const auto rs = stdq::parse_order_list(item);
    spec.orders.insert(spec.orders.end(), rs.begin(), rs.end());
  }
  if (spec.orders.empty() && quantity == stdq::Quantity::mean) spec.orders = {1};
  spec.output_format = stdq::parse_format(opts.format);
  spec.series_tolerance = opts.oracle_tol;
  return spec;
}

std::optional<std::filesystem::path> destination(const std::string& out) {
  if (out.empty()) return std::nullopt;
  return std::filesystem::path(out);
}

int run_grid(const GridOptions& opts, stdq::Quantity quantity) {
  stdq::SweepSpec spec;
  try {
    spec = build_spec(opts, quantity);
  } catch (const stdq::DomainError& e) {
    // Invalid q or theta literal on the command line.
    throw stdq::ConfigError(e.what());
  }
  const auto rows = stdq::run_sweep(spec);
  stdq::emit(rows, spec.output_format, destination(opts.out));
  return stdq::has_error_rows(rows) ? kExitErrorRows : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Observables of the symmetric Tamm-Dancoff q-deformed Bose gas"};
  app.require_subcommand(1);

  GridOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "tabulate mean, dist, intercept or asymptote over a grid");
  add_deformation_options(sweep, sweep_opts);
  sweep->add_option("--x", sweep_opts.x, "x = beta*hbar*omega: value, list or start:stop:steps[:log]");
  sweep->add_option("--r", sweep_opts.r, "orders: list such as 1,2,5 or range 1:6");
  sweep->add_option("--quantity", sweep_opts.quantity, "mean, dist, intercept or asymptote")
      ->check(CLI::IsMember({"mean", "dist", "intercept", "asymptote"}));
  sweep->add_option("--oracle-tol", sweep_opts.oracle_tol, "add brute-force series columns at this tolerance");
  add_output_options(sweep, sweep_opts);

  GridOptions asym_opts;
  auto* asymptote = app.add_subcommand("asymptote", "large-x intercept limit {r}_q! - 1");
  add_deformation_options(asymptote, asym_opts);
  asymptote->add_option("--r", asym_opts.r, "orders: list such as 1,2,5 or range 1:6")->required();
  add_output_options(asymptote, asym_opts);

  std::string preset = "quick";
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "run every invariant family against the closed forms");
  verify->add_option("--preset", preset, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--out", verify_out, "report file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep) return run_grid(sweep_opts, stdq::parse_quantity(sweep_opts.quantity));
    if (*asymptote) return run_grid(asym_opts, stdq::Quantity::asymptote);
    if (*verify) {
      const auto report = stdq::run_verify(stdq::parse_preset(preset));
      const auto text = stdq::format_report(report);
      if (verify_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(verify_out);
        out << text;
        if (!out) throw stdq::IoError("failed writing '" + verify_out + "'");
      }
      return report.all_pass() ? kExitOk : kExitErrorRows;
    }
  } catch (const stdq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const stdq::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const stdq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitErrorRows;
  }
  return kExitConfig;
}
