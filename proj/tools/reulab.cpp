// Command-line front end: run <config>, report <dir>, verify.
// Exit codes: 0 ok, 1 usage, 2 validation, 3 runtime abort.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "reulab/config_parse.hpp"
#include "reulab/scenario.hpp"
#include "reulab/verifiers.hpp"

namespace {

void print_usage(std::ostream& os) {
  os << "usage:\n"
     << "  reulab run <config> [--force] [--seed <u64>] [--threads <k>]\n"
     << "  reulab report <run-dir>\n"
     << "  reulab verify [--seed <u64>] [--out <dir>] [--ensemble <k>] [--n <grid>]\n";
}

struct Args {
  std::vector<std::string> positional;
  bool force = false;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out;
  int ensemble = 100;
  int n = 32;
};

bool parse_args(int argc, char** argv, Args& args, std::string& err) {
  for (int i = 2; i < argc; ++i) {
    const std::string a = argv[i];
    const auto need_value = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        err = std::string("flag ") + flag + " needs a value";
        return nullptr;
      }
      return argv[++i];
    };
    if (a == "--force") {
      args.force = true;
    } else if (a == "--seed") {
      const char* v = need_value("--seed");
      if (!v) return false;
      try {
        args.seed = std::stoull(v);
      } catch (...) {
        err = "--seed expects an unsigned integer";
        return false;
      }
    } else if (a == "--threads") {
      const char* v = need_value("--threads");
      if (!v) return false;
      args.threads = std::atoi(v);
      if (args.threads < 1) {
        err = "--threads expects a positive integer";
        return false;
      }
    } else if (a == "--out") {
      const char* v = need_value("--out");
      if (!v) return false;
      args.out = v;
    } else if (a == "--ensemble") {
      const char* v = need_value("--ensemble");
      if (!v) return false;
      args.ensemble = std::atoi(v);
    } else if (a == "--n") {
      const char* v = need_value("--n");
      if (!v) return false;
      args.n = std::atoi(v);
    } else if (!a.empty() && a[0] == '-') {
      err = "unknown flag " + a;
      return false;
    } else {
      args.positional.push_back(a);
    }
  }
  return true;
}

int cmd_run(const Args& args) {
  if (args.positional.size() != 1) {
    std::cerr << "run: expected exactly one <config> argument\n";
    return 1;
  }
  reulab::ScenarioSpec spec;
  try {
    spec = reulab::parse_config_file(args.positional[0]);
  } catch (const reulab::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  reulab::ExecuteOptions opts;
  opts.force = args.force;
  opts.seed = args.seed;
  opts.threads = args.threads;
  const reulab::ExecuteResult result = reulab::execute(spec, opts);
  std::cout << result.summary;
  if (result.status == 0) std::cout << "artifacts: " << result.output_dir << "\n";
  return result.status;
}

int cmd_report(const Args& args) {
  if (args.positional.size() != 1) {
    std::cerr << "report: expected exactly one <run-dir> argument\n";
    return 1;
  }
  try {
    const reulab::ReportResult result = reulab::report(args.positional[0]);
    std::cout << result.text;
    return result.ok ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(const Args& args) {
  try {
    const std::uint64_t seed = args.seed.value_or(1);
    const auto reports =
        reulab::run_lemma_suite(args.n, 2.0 * M_PI, args.ensemble, seed);
    for (const auto& r : reports) {
      std::cout << r.lemma_id << ": samples=" << r.samples << " min=" << r.min_ratio
                << " max=" << r.max_ratio << " median=" << r.median << " seed=" << r.seed << "\n";
    }
    if (!args.out.empty()) {
      reulab::write_reports_csv(args.out, reports);
      std::cout << "wrote " << args.out << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage(std::cerr);
    return 1;
  }
  const std::string verb = argv[1];
  if (verb == "--help" || verb == "-h" || verb == "help") {
    print_usage(std::cout);
    return 0;
  }

  Args args;
  std::string err;
  if (!parse_args(argc, argv, args, err)) {
    std::cerr << err << "\n";
    print_usage(std::cerr);
    return 1;
  }

  if (verb == "run") return cmd_run(args);
  if (verb == "report") return cmd_report(args);
  if (verb == "verify") return cmd_verify(args);

  std::cerr << "unknown verb '" << verb << "'\n";
  print_usage(std::cerr);
  return 1;
}
