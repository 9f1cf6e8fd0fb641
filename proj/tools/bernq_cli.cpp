// Experiment driver: writes one CSV report per subcommand.
//
// Settings are resolved as built-in defaults, then a --config key=value
// file, then explicit flags. Exit codes: 0 success, 2 usage error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bernq/errors.hpp"
#include "bernq/experiments.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double den = parse_number(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return parse_number(s.substr(0, slash)) / den;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (s.empty() || used != s.size()) throw std::invalid_argument("not a number: '" + raw + "'");
  return v;
}

int parse_int(const std::string& raw) {
  const std::string s = trim(raw);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (s.empty() || used != s.size() || v < INT_MIN || v > INT_MAX) {
    throw std::invalid_argument("not an integer: '" + raw + "'");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("not a boolean: '" + raw + "'");
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& raw, Parse parse) {
  std::vector<T> out;
  if (trim(raw).empty()) return out;
  std::stringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse(item));
  return out;
}

std::vector<double> number_list(const std::string& s) { return parse_list<double>(s, parse_number); }
std::vector<int> int_list(const std::string& s) { return parse_list<int>(s, parse_int); }

// key -> setter for one subcommand.
using Setters = std::map<std::string, std::function<void(const std::string&)>>;

struct Common {
  std::string out;
  bool timing = true;
};

void add_common(Setters& set, Common& common, int& threads) {
  set["out"] = [&](const std::string& v) { common.out = trim(v); };
  set["no-timing"] = [&](const std::string& v) { common.timing = !parse_bool(v); };
  set["threads"] = [&](const std::string& v) {
    threads = parse_int(v);
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  };
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::map<std::string, std::string> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key = value");
    }
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '[')) {
      value = value.substr(1, value.size() - 2);
    }
    values[trim(line.substr(0, eq))] = value;
  }
  return values;
}

// Registers every setter key as a string flag on the subcommand. Flags in
// `switches` take no value.
struct Command {
  CLI::App* app = nullptr;
  Setters set;
  std::map<std::string, std::string> given;
  std::vector<std::string> switches;
  std::string config;
  std::function<bernq::ExperimentReport()> run;
  Common common;
  int threads = 1;

  void bind() {
    app->add_option("--config", config, "key=value settings file");
    for (const auto& [key, fn] : set) {
      const std::string flag = "--" + key;
      if (std::find(switches.begin(), switches.end(), key) != switches.end()) {
        app->add_flag_callback(flag, [this, key] { given[key] = "true"; });
      } else {
        app->add_option_function<std::string>(flag, [this, key](const std::string& v) { given[key] = v; });
      }
    }
  }

  void resolve() {
    std::map<std::string, std::string> merged;
    if (!config.empty()) merged = read_config(config);
    for (const auto& [k, v] : given) merged[k] = v;
    for (const auto& [k, v] : merged) {
      const auto it = set.find(k);
      if (it == set.end()) throw std::invalid_argument("unknown setting '" + k + "'");
      it->second(v);
    }
  }
};

void write_report(const bernq::ExperimentReport& report, const Common& common) {
  if (common.out.empty()) {
    report.write_csv(std::cout, common.timing);
    return;
  }
  std::ofstream out(common.out);
  if (!out) throw std::invalid_argument("cannot open output file " + common.out);
  report.write_csv(out, common.timing);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernoulli generating function approximations: experiment driver"};
  app.require_subcommand(1);

  bernq::DeltaTableConfig delta;
  bernq::ScalarErrorConfig scalar;
  bernq::BvpConfig bvp;
  bernq::ArnoldiConfig arnoldi;

  std::vector<Command> commands(4);

  {
    Command& c = commands[0];
    c.app = app.add_subcommand("delta-table", "N^{7/2} ||R||_2 / |z|^4 for the p = 4 representation");
    c.set["z"] = [&](const std::string& v) { delta.z = number_list(v); };
    c.set["N"] = [&](const std::string& v) { delta.N = int_list(v); };
    c.set["K"] = [&](const std::string& v) { delta.K = parse_int(v); };
    add_common(c.set, c.common, c.threads);
    c.run = [&, &c = c] {
      delta.threads = c.threads;
      return bernq::cmd_delta_table(delta);
    };
  }
  {
    Command& c = commands[1];
    c.app = app.add_subcommand("scalar-error", "relative error of G_{p,N,ell}(tau, w) over a real w range");
    c.set["w-min"] = [&](const std::string& v) { scalar.w_min = parse_number(v); };
    c.set["w-max"] = [&](const std::string& v) { scalar.w_max = parse_number(v); };
    c.set["points"] = [&](const std::string& v) { scalar.points = parse_int(v); };
    c.set["N"] = [&](const std::string& v) { scalar.N = parse_int(v); };
    c.set["tau"] = [&](const std::string& v) { scalar.tau = number_list(v); };
    c.set["p"] = [&](const std::string& v) { scalar.p = int_list(v); };
    c.set["n"] = [&](const std::string& v) {
      scalar.p.clear();
      for (int n : int_list(v)) scalar.p.push_back(2 * n + 2);
    };
    c.set["ell"] = [&](const std::string& v) { scalar.ell = int_list(v); };
    c.set["alpha"] = [&](const std::string& v) { scalar.alpha = parse_number(v); };
    c.set["exp-file"] = [&](const std::string& v) { scalar.exp_file = trim(v); };
    add_common(c.set, c.common, c.threads);
    c.run = [&, &c = c] {
      scalar.threads = c.threads;
      return bernq::cmd_scalar_error(scalar);
    };
  }
  {
    Command& c = commands[2];
    c.app = app.add_subcommand("bvp-compare", "Lanc vs FastLanc on the discretized heat operator");
    c.set["grid"] = [&](const std::string& v) {
      const std::string g = trim(v);
      if (g == "uniform") {
        bvp.grid = bernq::BvpConfig::GridChoice::uniform;
      } else if (g == "geometric") {
        bvp.grid = bernq::BvpConfig::GridChoice::geometric;
      } else {
        throw std::invalid_argument("grid must be uniform or geometric");
      }
    };
    c.set["s"] = [&](const std::string& v) { bvp.s = parse_int(v); };
    c.set["a"] = [&](const std::string& v) { bvp.a = parse_number(v); };
    c.set["x1"] = [&](const std::string& v) { bvp.x1 = parse_number(v); };
    c.set["sigma"] = [&](const std::string& v) { bvp.sigma = parse_number(v); };
    c.set["tau"] = [&](const std::string& v) { bvp.tau = number_list(v); };
    c.set["N"] = [&](const std::string& v) { bvp.N = int_list(v); };
    c.set["n"] = [&](const std::string& v) { bvp.n = int_list(v); };
    c.set["ell"] = [&](const std::string& v) { bvp.ell = int_list(v); };
    c.set["p"] = [&](const std::string& v) { bvp.p = parse_int(v); };
    add_common(c.set, c.common, c.threads);
    c.run = [&, &c = c] {
      bvp.threads = c.threads;
      return bernq::cmd_bvp_compare(bvp);
    };
  }
  {
    Command& c = commands[3];
    c.app = app.add_subcommand("arnoldi-compare", "Arnoldi convergence and orthogonality vs FastLanc");
    c.set["test"] = [&](const std::string& v) { arnoldi.test = parse_int(v); };
    c.set["steps"] = [&](const std::string& v) { arnoldi.steps = parse_int(v); };
    c.set["s"] = [&](const std::string& v) { arnoldi.s = parse_int(v); };
    c.set["x1"] = [&](const std::string& v) { arnoldi.x1 = parse_number(v); };
    c.set["sigma"] = [&](const std::string& v) { arnoldi.sigma = parse_number(v); };
    c.set["tau"] = [&](const std::string& v) { arnoldi.tau = parse_number(v); };
    c.set["p"] = [&](const std::string& v) { arnoldi.p = parse_int(v); };
    c.set["N"] = [&](const std::string& v) { arnoldi.N = parse_int(v); };
    c.set["ell"] = [&](const std::string& v) { arnoldi.ell = parse_int(v); };
    c.set["reorth"] = [&](const std::string& v) { arnoldi.reorthogonalize = parse_bool(v); };
    add_common(c.set, c.common, c.threads);
    c.switches.push_back("reorth");
    c.run = [&] { return bernq::cmd_arnoldi_compare(arnoldi); };
  }
  for (Command& c : commands) {
    c.switches.push_back("no-timing");
    c.bind();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    for (Command& c : commands) {
      if (!c.app->parsed()) continue;
      c.resolve();
      const bernq::ExperimentReport report = c.run();
      write_report(report, c.common);
    }
  } catch (const bernq::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const bernq::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return EXIT_SUCCESS;
}
