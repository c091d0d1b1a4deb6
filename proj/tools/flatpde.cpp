#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flatpde/cli/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace flatpde::cli;
  CLI::App app{"Point-equivalence of second-order PDE systems to the flat system"};
  std::string command, input, format = "json";
  bool timings = false;
  RunOptions options;
  app.add_option("command", command, "check | synthesize | prolong | chern | pi-check | selftest")->required();
  app.add_option("input", input, "input document (optional for selftest)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", timings, "report milliseconds per phase");
  app.add_option("--max-degree", options.max_degree, "monomial degree cap of the selftest corpus")
      ->check(CLI::Range(1u, 6u));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (const char* seed = std::getenv("FLATPDE_SEED")) {
    try {
      options.seed = std::stoull(seed);
    } catch (const std::exception&) {
      std::cerr << "error: FLATPDE_SEED must be a nonnegative integer\n";
      return 2;
    }
  }

  try {
    const Command cmd = command_from_string(command);
    std::optional<InputDocument> doc;
    if (!input.empty()) doc = parse(read_file(input));
    else if (cmd != Command::selftest) throw std::invalid_argument(command + " needs an input file");
    const Report r = run(cmd, doc, options);
    std::cout << render_report(r, format == "json" ? Format::json : Format::text, timings);
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
