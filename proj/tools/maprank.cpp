#include <iostream>
#include <optional>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "mapspace/cli.hpp"

namespace {

std::optional<std::pair<int, int>> parse_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const int n = std::stoi(s);
      return std::make_pair(n, n);
    }
    return std::make_pair(std::stoi(s.substr(0, dots)),
                          std::stoi(s.substr(dots + 2)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational homotopy ranks of mapping space components"};
  mapspace::RunOptions options;
  std::string range;

  app.add_option("command", options.command,
                 "validate | betti | rank-pi1 | rank-pin | rank-null | f0-rank | "
                 "loop-rank | der-homology | inequality | structure")
      ->required();
  app.add_option("--file", options.files, "input file; repeat for several");
  app.add_option("--problem", options.problem, "problem or loop block to use");
  app.add_option("--model", options.model, "algebra block to use");
  app.add_option("--degree-range", range, "degree n, or a range a..b");
  app.add_flag("--machine", options.machine, "print one JSON object instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!range.empty()) {
    const auto r = parse_range(range);
    if (!r) {
      std::cerr << "error: bad --degree-range '" << range << "'\n";
      return 2;
    }
    options.degree_range = r;
  }

  const mapspace::RunResult result = mapspace::run_command(options);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
