#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "baskafuzz/cli_io.hpp"
#include "baskafuzz/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Max-product truncated Baskakov approximation of fuzzy numbers"};
  app.set_version_flag("--version", std::string(baskafuzz::kVersion));
  std::string command;
  std::string spec;
  std::string out = ".";
  app.add_option("command", command, "approximate | metrics | verify | converge | sample")
      ->required()
      ->check(CLI::IsMember({"approximate", "metrics", "verify", "converge", "sample"}));
  app.add_option("--spec", spec, "JSON job file")->required();
  app.add_option("--out", out, "output directory (created if missing)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    baskafuzz::apply_thread_cap_from_env();
    const auto result = baskafuzz::run_file(baskafuzz::parse_command(command), spec, out);
    const auto& report = result.report;
    if (report.error_kind) {
      std::cerr << "baskafuzz: " << *report.error_message << "\n";
    } else {
      int failed = 0;
      for (const auto& check : report.checks) {
        if (check.asserted && !check.pass) {
          std::cerr << "FAIL " << check.name << ": " << check.measured << " " << check.relation << " "
                    << check.bound << " does not hold\n";
          ++failed;
        }
      }
      std::cout << report.command << ": " << report.checks.size() << " checks, " << failed << " failed\n";
    }
    for (const auto& path : result.written) std::cout << "wrote " << path.string() << "\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "baskafuzz: internal error: " << e.what() << "\n";
    return 4;
  }
}
