#include <string>
#include <vector>

#include "racgap/cli.hpp"

int main(int argc, char** argv) {
  return racgap::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
