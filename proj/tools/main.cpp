#include "app.hpp"
#include "config.hpp"

#include "fractsob/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fractsob::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fractsob: exact graph approximations of self-similar fractals, "
      "renormalized Laplacians, spectral kernels, and Sobolev-scale probes"};
  app.set_help_flag("--help", "print usage");

  std::string command, config_path, out_dir = ".";
  app.add_option("command", command,
                 "one of: build, spectrum, kernel, decay, normal-deriv, algebra, "
                 "compose, region, checks")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir,
                 "artifact directory (created if missing; default .)");

  CLI11_PARSE(app, argc, argv);

  try {
    const fractsob::cli::RunConfig cfg =
        fractsob::cli::parse_config(config_path.empty() ? "{}" : slurp(config_path));
    return fractsob::cli::run(command, cfg, out_dir, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
