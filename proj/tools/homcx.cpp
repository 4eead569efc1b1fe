// Command-line front end: reads a session file (or stdin for "-") and prints
// either the JSON document or its text rendering.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

#include "homcx/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Graded resolutions, Ext/Tor and reducible-complexity certificates over quotient rings"};
  std::string input;
  homcx::cli::RunOptions opts;
  std::string cache_dir;
  bool json = false, print = false;
  app.add_option("session", input, "Session file, or - for standard input")->required();
  app.add_option("--max-degree", opts.config.max_degree, "Internal degree cap D")->capture_default_str();
  app.add_option("--max-hdeg", opts.config.max_hdeg, "Homological degree cap H")->capture_default_str();
  app.add_option("--seed", opts.config.seed, "Seed for randomized searches")->capture_default_str();
  app.add_flag("--json", json, "Print the JSON document instead of text");
  app.add_option("--cache-dir", cache_dir, "Directory for the on-disk resolution cache");
  app.add_flag("--print", print, "Parse, print the canonical session text and exit");
  CLI11_PARSE(app, argc, argv);
  if (!cache_dir.empty()) opts.cache_dir = cache_dir;

  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "homcx: cannot read " << input << "\n";
      return 2;
    }
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  homcx::cli::Session session;
  try {
    session = homcx::cli::parse_session(text);
  } catch (const homcx::cli::ParseError& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return 2;
  }
  if (print) {
    std::cout << homcx::cli::print_session(session);
    return 0;
  }
  auto out = homcx::cli::run_session(session, opts);
  for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
  if (json)
    std::cout << out.document.dump(2) << "\n";
  else
    std::cout << homcx::cli::render_text(out.document);
  return out.had_errors ? 1 : 0;
}
