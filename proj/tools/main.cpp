#include <exception>
#include <iostream>

#include "mtolab/cli.hpp"

int main(int argc, char** argv) {
  std::optional<mto::cli::ExperimentConfig> config;
  try {
    config = mto::cli::parse_arguments(argc, argv, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "mtolab: " << e.what() << "\n";
    return mto::cli::kExitUsage;
  }
  if (!config) return mto::cli::kExitOk;
  try {
    return mto::cli::run_command(*config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "mtolab: " << e.what() << "\n";
    return mto::cli::kExitUsage;
  }
}
