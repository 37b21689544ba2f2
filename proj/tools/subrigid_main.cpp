#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subrigid/error.hpp"
#include "subrigid/report.hpp"

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

subrigid::SpecFormat format_for(const std::string& path, const std::string& forced) {
  if (forced == "json") return subrigid::SpecFormat::Json;
  if (forced == "toml") return subrigid::SpecFormat::Toml;
  if (!forced.empty()) throw subrigid::InvalidInput("unknown format '" + forced + "'");
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0) return subrigid::SpecFormat::Toml;
  return subrigid::SpecFormat::Json;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant measures and partial rigidity rates of substitution subshifts"};
  app.require_subcommand(1);

  std::string spec_path, spec_text, format;
  subrigid::RunOptions opts;
  bool use_float = false;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "Spec file (JSON or TOML by extension, '-' for stdin)");
    sub->add_option("--spec-text", spec_text, "Inline spec document");
    sub->add_option("--format", format, "Force spec format")->check(CLI::IsMember({"json", "toml"}));
  };
  auto add_float = [&](CLI::App* sub) { sub->add_flag("--float", use_float, "Use floating-point measures"); };

  auto* analyze = app.add_subcommand("analyze", "Classify a substitution and list its basic invariants");
  add_spec(analyze);
  auto* measure = app.add_subcommand("measure", "Measure of a cylinder set");
  add_spec(measure);
  add_float(measure);
  measure->add_option("--word", opts.word, "Cylinder word")->required();
  auto* delta = app.add_subcommand("delta", "Partial rigidity rate with bounds and witness");
  add_spec(delta);
  delta->add_option("--max", opts.max_m, "Largest complete length scanned");
  auto* profile = app.add_subcommand("profile", "Complete-cylinder masses a_m");
  add_spec(profile);
  profile->add_option("--max", opts.max_m, "Largest m");
  profile->add_option("--csv", opts.csv_path, "Write the profile as CSV");
  auto* certify = app.add_subcommand("certify", "Sufficient-condition lower bounds");
  add_spec(certify);
  auto* diagnose = app.add_subcommand("diagnose", "Complete-word ratio q(n)/p(n) diagnostic");
  add_spec(diagnose);
  diagnose->add_option("--n", opts.n, "Largest word length")->check(CLI::Range(1, 64));
  auto* approx = app.add_subcommand("approx", "Product of rates approximating a target");
  approx->add_option("--delta", opts.delta, "Target rate in (0,1)")->required();
  approx->add_option("--eps", opts.eps, "Tolerance")->required();
  auto* oracle = app.add_subcommand("oracle", "Empirical frequency against the exact measure");
  add_spec(oracle);
  add_float(oracle);
  oracle->add_option("--word", opts.word, "Cylinder word")->required();
  oracle->add_option("--depth", opts.depth, "Iteration depth (default: at least 10^6 letters)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opts.command = app.get_subcommands().front()->get_name();
    if (use_float) opts.mode = subrigid::Mode::Float;
    std::optional<subrigid::SubstitutionSpec> spec;
    if (!spec_path.empty() && !spec_text.empty()) throw subrigid::InvalidInput("give --spec or --spec-text, not both");
    if (!spec_text.empty()) {
      spec = subrigid::parse_spec(spec_text, format_for("", format));
    } else if (spec_path == "-") {
      spec = subrigid::parse_spec(read_all(std::cin), format_for("", format));
    } else if (!spec_path.empty()) {
      std::ifstream in(spec_path);
      if (!in) throw subrigid::InvalidInput("cannot read " + spec_path);
      spec = subrigid::parse_spec(read_all(in), format_for(spec_path, format));
    }

    auto t0 = std::chrono::steady_clock::now();
    auto report = subrigid::run_command(spec ? &*spec : nullptr, opts, std::cerr);
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << report.dump(2) << "\n";
    std::cerr << "elapsed " << ms << " ms\n";
    return 0;
  } catch (const subrigid::RejectedInput& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 2;
  } catch (const subrigid::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
