#include "rootsheaf/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Root stacks, parabolic sheaves and finitely presented monoids"};
  std::string command;
  std::vector<std::string> rest;
  rootsheaf::DocumentOptions options;
  std::string commands;
  for (const auto& c : rootsheaf::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + commands)->required();
  app.add_option("args", rest, "Document file ('-' for stdin) followed by declaration names or a point");
  app.add_option("--rule-budget", options.limits.rule_budget, "Rule limit for monoid completion")
      ->capture_default_str();
  app.add_option("--search-bound", options.search_bound, "Extra degree searched by bounded semi-decisions")
      ->capture_default_str();
  app.add_option("--piece-height", options.piece_height, "Word degree up to which the algebra map is checked")
      ->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string text;
  if (command != "selftest") {
    if (rest.empty()) {
      std::cout << "command = " << command << "\nerror = input\nmessage = missing document file\n";
      return 2;
    }
    const std::string path = rest.front();
    rest.erase(rest.begin());
    std::stringstream buffer;
    if (path == "-") {
      buffer << std::cin.rdbuf();
    } else {
      std::ifstream in(path);
      if (!in) {
        std::cout << "command = " << command << "\nerror = input\nmessage = cannot read " << path << "\n";
        return 2;
      }
      buffer << in.rdbuf();
    }
    text = buffer.str();
  }
  const auto result = rootsheaf::run_command(command, text, rest, options);
  std::cout << result.report;
  return result.exit_code;
}
