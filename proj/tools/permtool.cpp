// permtool: run the leader, permuting and inversion algorithms on a file or on
// generated permutations and report access counts, space and time.
//
// Exit codes: 0 ok, 1 an oracle check failed, 2 usage or input error,
// 3 internal error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permtool/bench.hpp"
#include "permtool/invert_blocal.hpp"
#include "permtool/invert_logspace.hpp"
#include "permtool/permute.hpp"
#include "permtool/testkit/generators.hpp"
#include "permtool/testkit/oracles.hpp"
#include "permtool/text_io.hpp"

using namespace permtool;

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct options {
  std::string algo = "logspace";
  double epsilon = 0.5;
  std::size_t b = 0;
  std::size_t n = 0;
  std::string sizes = "1024..65536x2";
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::string input;
  std::string array;
  std::string output;
  std::string format = "json";
  std::string task = "leaders";
  bool check = false;
};

class emitter {
 public:
  explicit emitter(std::string format) : format_(std::move(format)) {}

  void emit(const run_report& r, const nlohmann::ordered_json& extra = {}) {
    if (format_ == "json") {
      auto j = to_json(r);
      for (const auto& [k, v] : extra.items()) j[k] = v;
      std::cout << j.dump() << '\n';
    } else if (format_ == "csv") {
      if (!header_done_) {
        std::cout << csv_header();
        for (const auto& [k, v] : extra.items()) std::cout << ',' << k;
        std::cout << '\n';
        header_done_ = true;
      }
      std::cout << to_csv(r);
      for (const auto& [k, v] : extra.items()) std::cout << ',' << (v.is_null() ? "" : v.dump());
      std::cout << '\n';
    } else {
      if (!header_done_) {
        std::printf("%-8s %-9s %9s %6s %12s %10s %8s %10s  %-16s %s\n", "command", "algo", "n", "b", "reads",
                    "writes", "peak", "seconds", "digest", "check");
        header_done_ = true;
      }
      std::printf("%-8s %-9s %9zu %6zu %12llu %10llu %8zu %10.4f  %-16s %s\n", r.command.c_str(), r.algo.c_str(),
                  r.n, r.b, static_cast<unsigned long long>(r.reads), static_cast<unsigned long long>(r.writes),
                  r.peak_words, r.elapsed_s, hex64(r.digest).c_str(), to_string(r.check));
      for (const auto& [k, v] : extra.items()) std::printf("  %s: %s\n", k.c_str(), v.dump().c_str());
    }
  }

 private:
  std::string format_;
  bool header_done_ = false;
};

std::vector<element_t> load_permutation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  try {
    return read_permutation(in);
  } catch (const parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

std::vector<std::string> load_array(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  try {
    return read_array(in);
  } catch (const parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

// The permutation for one trial: the input file, or a random one of size n.
std::vector<element_t> instance(const options& o, std::size_t n, std::size_t trial) {
  if (!o.input.empty()) return load_permutation(o.input);
  if (n == 0) throw usage_error("need --input or --n");
  return testkit::random_perm(n, testkit::derive_seed(o.seed, trial * 0x10000 + n));
}

leader_algo make_algo(const options& o, std::size_t n) {
  if (o.algo == "naive") return naive_algo{};
  if (o.algo == "logspace") return logspace_algo{};
  return blocal_algo{bparams::derive(n, o.epsilon, o.b)};
}

run_report base_report(const options& o, const std::string& command, std::size_t n, std::size_t trial) {
  run_report r;
  r.command = command;
  r.algo = o.algo;
  r.n = n;
  if (o.algo == "blocal") {
    const auto bp = bparams::derive(n, o.epsilon, o.b);
    r.b = bp.b;
    r.epsilon = o.epsilon;
  } else if (o.algo == "logspace") {
    r.b = 1;
  }
  r.seed = o.seed;
  r.trial = trial;
  return r;
}

void fill_counts(run_report& r, const perm_table& t, double seconds) {
  r.reads = t.stats().reads;
  r.writes = t.stats().writes;
  r.physical_probes = t.physical_probes();
  r.peak_words = t.meter().peak();
  r.elapsed_s = seconds;
}

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

run_report run_leaders_once(const options& o, const std::vector<element_t>& p, std::size_t trial,
                            nlohmann::ordered_json& extra) {
  auto r = base_report(o, "leaders", p.size(), trial);
  perm_table t(p);
  const auto algo = make_algo(o, p.size());
  const auto t0 = clock_type::now();
  const auto leaders = run_leaders(t, algo);
  fill_counts(r, t, since(t0));
  r.digest = digest(leaders);
  extra["leader_count"] = leaders.size();
  if (leaders.size() <= 64) extra["leaders"] = leaders;
  if (o.check) {
    std::vector<element_t> want;
    if (o.algo == "naive") {
      want = testkit::cycle_minima(p);
    } else {
      want = testkit::ref_leaders(p, r.b);
    }
    r.check = leaders == want ? oracle_check::pass : oracle_check::fail;
  }
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    for (auto x : leaders) out << x << '\n';
  }
  return r;
}

run_report run_permute_once(const options& o, const std::vector<element_t>& p, std::size_t trial) {
  auto r = base_report(o, "permute", p.size(), trial);
  std::vector<std::string> a;
  if (!o.array.empty()) {
    a = load_array(o.array);
    if (a.size() != p.size()) {
      throw usage_error("array has " + std::to_string(a.size()) + " entries, permutation has " +
                        std::to_string(p.size()));
    }
  } else {
    a.reserve(p.size());
    for (std::size_t k = 1; k <= p.size(); ++k) a.push_back(std::to_string(k));
  }
  const auto want = o.check ? testkit::ref_permute(a, p) : std::vector<std::string>{};
  perm_table t(p);
  const auto algo = make_algo(o, p.size());
  const auto t0 = clock_type::now();
  permute(std::span(a), t, algo);
  fill_counts(r, t, since(t0));
  r.digest = digest(a);
  if (o.check) r.check = a == want ? oracle_check::pass : oracle_check::fail;
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    write_array(out, a);
  }
  return r;
}

run_report run_invert_once(const options& o, const std::vector<element_t>& p, std::size_t trial) {
  if (o.algo == "naive") throw usage_error("invert supports --algo logspace or blocal");
  auto r = base_report(o, "invert", p.size(), trial);
  perm_table t(p);
  const auto t0 = clock_type::now();
  if (o.algo == "logspace") {
    run_invert_logspace(t);
  } else {
    run_invert_blocal(t, bparams::derive(p.size(), o.epsilon, o.b));
  }
  fill_counts(r, t, since(t0));
  const auto result = t.snapshot();
  r.digest = digest(result);
  if (o.check) {
    r.check = result == testkit::ref_inverse(p) && t.null_count() == 0 ? oracle_check::pass : oracle_check::fail;
  }
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    write_permutation(out, result);
  }
  return r;
}

run_report run_task(const options& o, const std::string& task, const std::vector<element_t>& p, std::size_t trial,
                    nlohmann::ordered_json& extra) {
  if (task == "leaders") return run_leaders_once(o, p, trial, extra);
  if (task == "permute") return run_permute_once(o, p, trial);
  return run_invert_once(o, p, trial);
}

int run_single(const options& o, const std::string& task) {
  emitter em(o.format);
  bool failed = false;
  const std::size_t trials = o.input.empty() ? o.trials : 1;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto p = instance(o, o.n, k);
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    const auto r = run_task(o, task, p, k, extra);
    failed |= r.check == oracle_check::fail;
    em.emit(r, extra);
  }
  return failed ? 1 : 0;
}

int run_bench(const options& o) {
  if (!o.input.empty()) throw usage_error("bench generates its own inputs; drop --input");
  const auto sizes = parse_sizes(o.sizes);
  std::vector<run_report> reports;
  std::map<std::size_t, double> reads_sum;
  bool failed = false;
  for (auto n : sizes) {
    for (std::size_t k = 0; k < o.trials; ++k) {
      const auto p = instance(o, n, k);
      nlohmann::ordered_json ignored = nlohmann::ordered_json::object();
      reports.push_back(run_task(o, o.task, p, k, ignored));
      reads_sum[n] += static_cast<double>(reports.back().reads);
      failed |= reports.back().check == oracle_check::fail;
    }
  }
  nlohmann::ordered_json extra;
  try {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, s] : reads_sum) pts.emplace_back(static_cast<double>(n), s / static_cast<double>(o.trials));
    extra["slope"] = fit_exponent(pts);
  } catch (const fit_error&) {
    extra["slope"] = nullptr;
  }
  emitter em(o.format);
  if (o.format == "table") {
    // one slope for the whole run, printed under the table
    for (const auto& r : reports) em.emit(r);
    std::printf("slope: %s\n", extra["slope"].dump().c_str());
  } else {
    for (const auto& r : reports) em.emit(r, extra);
  }
  return failed ? 1 : 0;
}

void add_common(CLI::App* sub, options& o, bool bench) {
  sub->add_option("--algo", o.algo, "naive, logspace or blocal")
      ->check(CLI::IsMember({"naive", "logspace", "blocal"}));
  sub->add_option("--epsilon", o.epsilon, "b = ceil(n^epsilon) for blocal")->check(CLI::Range(1e-6, 1.0));
  sub->add_option("--b", o.b, "fixed b for blocal, overrides --epsilon")->check(CLI::PositiveNumber);
  sub->add_option("--trials", o.trials, "instances per size")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "seed for generated inputs (default: $PERMTOOL_SEED or 1)");
  sub->add_option("--format", o.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_flag("--check", o.check, "compare against the reference oracles");
  if (bench) {
    sub->add_option("--sizes", o.sizes, "LO..HIxF, e.g. 1024..65536x2");
    sub->add_option("--task", o.task, "leaders, permute or invert")
        ->check(CLI::IsMember({"leaders", "permute", "invert"}));
  } else {
    sub->add_option("--n", o.n, "size of a generated permutation")->check(CLI::PositiveNumber);
    sub->add_option("--input", o.input, "permutation file: n, then pi(1) .. pi(n)");
    sub->add_option("--output", o.output, "write the result here");
  }
}

}  // namespace

int main(int argc, char** argv) {
  options o;
  if (const char* env = std::getenv("PERMTOOL_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "permtool: PERMTOOL_SEED is not an integer\n";
      return 2;
    }
  }
  CLI::App app("In-place permutation toolkit");
  app.require_subcommand(1);
  auto* leaders = app.add_subcommand("leaders", "report one leader per cycle");
  auto* perm = app.add_subcommand("permute", "permute a data array in place");
  auto* inv = app.add_subcommand("invert", "invert the permutation in place");
  auto* bench = app.add_subcommand("bench", "scaling runs over a range of sizes");
  add_common(leaders, o, false);
  add_common(perm, o, false);
  add_common(inv, o, false);
  add_common(bench, o, true);
  perm->add_option("--array", o.array, "data array file: one line of tokens");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (o.b != 0 && o.algo != "blocal") throw usage_error("--b only applies to --algo blocal");
    if (*leaders) return run_single(o, "leaders");
    if (*perm) return run_single(o, "permute");
    if (*inv) return run_single(o, "invert");
    return run_bench(o);
  } catch (const usage_error& e) {
    std::cerr << "permtool: " << e.what() << '\n';
    return 2;
  } catch (const contract_violation& e) {
    std::cerr << "permtool: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "permtool: internal error: " << e.what() << '\n';
    return 3;
  }
}
