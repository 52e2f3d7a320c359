#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "czlab/commands.hpp"
#include "czlab/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Local Tb toolkit on discrete measures"};
  app.require_subcommand(1, 1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;

  for (const auto& name : czlab::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "overrides params.seed");
    sub->add_option("--threads", threads, "worker threads (default: CZLAB_THREADS or hardware)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (threads > 0) czlab::set_threads(threads);

  try {
    auto cfg = czlab::load_config(config_path);
    if (seed) cfg.params.seed = *seed;
    const auto res = czlab::run_to_directory(command, cfg, out_dir);
    std::cout << command << ": " << (res.pass ? "pass" : "FAIL") << " (" << out_dir << ")\n";
    return res.pass ? 0 : 1;
  } catch (const czlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
