// kproj <command> [input files] [--window=a..b] [--depth=d] [--bound=N] [--seed=s] [--degree=j]
//       [--format=text|machine] [--output=file]
// Inputs are document files; "-" reads stdin.  Exit 0 success, 1 property
// failure (a counterexample document is written), 2 usage or parse error.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kproj/commands.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    os << in.rdbuf();
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace kproj;
  CLI::App app{"Exact checks for complexes of free modules over Z, Z/n and F_p"};
  app.set_version_flag("--version", doc::kVersion);
  std::string command, window, format = "text", output;
  std::vector<std::string> files;
  cli::Flags flags;
  std::optional<int> depth, bound, degree;
  std::optional<unsigned> seed;

  std::string names;
  for (const auto& n : cli::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("inputs", files, "input documents (- for stdin)");
  app.add_option("--window", window, "degree window a..b");
  app.add_option("--depth", depth, "resolution or decomposition depth");
  app.add_option("--bound", bound, "projective dimension bound N (split-check)");
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--degree", degree, "cycle degree (flat-cert on a complex)");
  app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("-o,--output", output, "write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsageError;
  }

  flags.depth = depth;
  flags.bound = bound;
  flags.seed = seed;
  flags.degree = degree;
  if (!window.empty()) {
    flags.window = cli::parse_window(window);
    if (!flags.window) {
      std::cerr << "kproj: --window must look like a..b with a <= b\n";
      return cli::kUsageError;
    }
  }

  std::vector<doc::Document> inputs;
  for (const auto& f : files) {
    try {
      inputs.push_back(doc::parse_document(slurp(f)));
    } catch (const std::exception& e) {
      std::cerr << "kproj: " << f << ": " << e.what() << "\n";
      return cli::kUsageError;
    }
  }

  cli::CommandResult r = cli::run_command(command, inputs, flags);
  if (r.status == cli::kUsageError) {
    std::cerr << "kproj: " << r.error << "\n";
    return r.status;
  }
  const std::string text = doc::emit(*r.output, format == "machine" ? doc::Format::Machine : doc::Format::Text);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "kproj: cannot write " << output << "\n";
      return cli::kUsageError;
    }
  }
  return r.status;
}
