// qif-mzi: post-selected two-electron Mach-Zehnder simulator.
//
//   qif-mzi <mode> [--config FILE] [--key value ...] [--out PATH] [--format csv|json]
//
// Without --out the table goes to stdout and the summary to stderr.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "qif/config.hpp"
#include "qif/errors.hpp"
#include "qif/runner.hpp"
#include "qif/table.hpp"

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kConfig = 2, kDarkPort = 3, kIo = 4, kOther = 5 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qif::Error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Override flags are not declared to CLI11, so a bare value after one would be
// taken as the positional mode. Join such pairs into "--key=value" up front.
std::vector<std::string> join_override_values(int argc, char** argv) {
  static const std::set<std::string> declared = {"--config", "--out", "--format", "--help", "-h"};
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    const bool override_flag = arg.rfind("--", 0) == 0 && arg.size() > 2 &&
                               arg.find('=') == std::string::npos && !declared.contains(arg);
    if (override_flag && i + 1 < argc) arg += std::string("=") + argv[++i];
    args.push_back(std::move(arg));
  }
  return args;
}

qif::cli::Overrides collect_overrides(const std::vector<std::string>& extras) {
  qif::cli::Overrides out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() <= 2) {
      throw qif::ConfigError("unexpected argument '" + arg + "'", 0);
    }
    std::string key = arg.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else {
      if (i + 1 >= extras.size()) throw qif::ConfigError("option '" + arg + "' needs a value", 0);
      value = extras[++i];
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-selected two-electron Mach-Zehnder interference simulator"};
  app.allow_extras();

  std::string mode;
  std::string config_path;
  std::string out_path;
  std::string format;
  app.add_option("mode", mode, "distributions | decompose | sweep | ports | design | verify");
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out", out_path, "output table path (default: stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.footer("Any other '--key value' pair overrides the configuration file.");

  std::vector<std::string> args = join_override_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    qif::cli::Overrides overrides = collect_overrides(app.remaining());
    if (!mode.empty()) overrides.emplace_back("mode", mode);
    if (!out_path.empty()) overrides.emplace_back("out", out_path);
    if (!format.empty()) overrides.emplace_back("format", format);

    const qif::cli::RunConfig config = qif::cli::parse_config(text, overrides);
    const qif::cli::RunResult result = qif::cli::execute(config);

    if (config.out) {
      qif::cli::write_table(result.table, config.format, *config.out);
      for (const auto& line : result.summary) std::cout << line << '\n';
    } else {
      std::cout << qif::cli::render_table(result.table, config.format);
      for (const auto& line : result.summary) std::cerr << line << '\n';
    }
    return result.exit_code == 0 ? kOk : kVerifyFailed;
  } catch (const qif::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const qif::ZeroProbability& e) {
    std::cerr << "zero-probability error: " << e.what() << " (probability " << e.probability() << ")\n";
    return kDarkPort;
  } catch (const qif::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return kOther;
  }
}
