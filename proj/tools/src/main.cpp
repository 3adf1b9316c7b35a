#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deltak/cli/commands.hpp"
#include "deltak/cli/problem.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw deltak::cli::UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DELTA_KERNEL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw deltak::cli::UsageError(std::string("DELTA_KERNEL_SEED is not an integer: ") + env);
    }
  }
  return deltak::cli::kDefaultSeed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for differential polynomial systems, D-varieties and heights."};
  app.prefix_command();
  bool as_json = false;
  bool timings = false;
  std::optional<std::uint64_t> seed;
  std::string target;
  std::string file;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_flag("--timings", timings, "Record wall-clock timings");
  app.add_option("--seed", seed, "Seed for randomized checks (default: DELTA_KERNEL_SEED or built-in)");
  app.add_option("--target", target, "Name of the object the command acts on");
  app.add_option("file", file, "Problem file, or - for stdin")->required();
  app.footer("Commands: analyze bound dimfn prolong extract-dvariety darboux integrals height solve-ode reduce wedge-check run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::vector<std::string> rest = app.remaining();
  if (rest.empty()) {
    std::cerr << "error: missing command\n" << app.help();
    return 1;
  }
  const std::string command = rest.front();
  rest.erase(rest.begin());

  try {
    deltak::cli::RunOptions opts;
    opts.timings = timings;
    opts.seed = seed ? *seed : default_seed();
    if (!target.empty()) opts.target = target;
    const auto pf = deltak::cli::parse_problem(read_input(file));
    const auto report = deltak::cli::run_command(command, rest, pf, opts);
    if (as_json) {
      std::cout << report.to_json().dump(2) << '\n';
    } else {
      std::cout << deltak::cli::render_text(report);
    }
    return 0;
  } catch (const deltak::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const deltak::SignatureMismatch& e) {
    std::cerr << "type error: " << e.what() << '\n';
    return 1;
  } catch (const deltak::ParseError& e) {
    std::cerr << (file == "-" ? "<stdin>" : file) << ':' << e.line() << ':' << e.column() << ": parse error: " << e.what()
              << '\n';
    return 2;
  } catch (const deltak::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
