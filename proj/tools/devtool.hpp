#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace CLI {
class App;
}

namespace wsts::cli {

struct DevtoolArgs {
  std::uint64_t seed = 2024;
  std::size_t count = 0;
  std::string check, nets, net, init, target, atoms = "a,b";
  std::size_t dimension = 4, transitions = 5, states = 4, alphabet = 2, size = 6;
  std::uint64_t max_entry = 3, box = 12, cap = 36;
  double omega = 0.0;
  bool bounded = false;
};

/// Registers the devtool subcommands on `dev`.
void add_devtool(CLI::App* dev, DevtoolArgs& a);

/// Runs whichever devtool subcommand was parsed; returns the exit code.
int run_devtool(const CLI::App* dev, const DevtoolArgs& a, std::ostream& out);

}  // namespace wsts::cli
