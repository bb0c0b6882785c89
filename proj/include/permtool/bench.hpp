#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permtool/errors.hpp"
#include "permtool/value.hpp"

namespace permtool {

enum class oracle_check { skipped, pass, fail };

inline const char* to_string(oracle_check c) {
  switch (c) {
    case oracle_check::pass: return "pass";
    case oracle_check::fail: return "fail";
    default: return "skipped";
  }
}

struct run_report {
  std::string command;  // leaders, permute, invert
  std::string algo;
  std::size_t n = 0;
  std::size_t b = 0;    // 0 when the algorithm takes no b
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t physical_probes = 0;
  std::size_t peak_words = 0;
  double elapsed_s = 0.0;
  std::uint64_t digest = 0;
  oracle_check check = oracle_check::skipped;
};

inline std::string hex64(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, x >>= 4) s[static_cast<std::size_t>(k)] = digits[x & 0xf];
  return s;
}

inline nlohmann::ordered_json to_json(const run_report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["algo"] = r.algo;
  j["n"] = r.n;
  j["b"] = r.b;
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["trial"] = r.trial;
  j["reads"] = r.reads;
  j["writes"] = r.writes;
  j["physical_probes"] = r.physical_probes;
  j["peak_words"] = r.peak_words;
  j["elapsed_s"] = r.elapsed_s;
  j["digest"] = hex64(r.digest);
  j["oracle_check"] = to_string(r.check);
  return j;
}

inline std::string csv_header() {
  return "command,algo,n,b,epsilon,seed,trial,reads,writes,physical_probes,peak_words,elapsed_s,digest,oracle_check";
}

inline std::string to_csv(const run_report& r) {
  std::string s;
  s += r.command + ',' + r.algo + ',' + std::to_string(r.n) + ',' + std::to_string(r.b) + ',';
  s += nlohmann::json(r.epsilon).dump() + ',' + std::to_string(r.seed) + ',' + std::to_string(r.trial) + ',';
  s += std::to_string(r.reads) + ',' + std::to_string(r.writes) + ',' + std::to_string(r.physical_probes) + ',';
  s += std::to_string(r.peak_words) + ',' + nlohmann::json(r.elapsed_s).dump() + ',' + hex64(r.digest) + ',';
  s += to_string(r.check);
  return s;
}

// 64-bit FNV-1a, fed little-endian words or raw bytes.
class fnv1a64 {
 public:
  void bytes(std::string_view s) {
    for (unsigned char c : s) mix(c);
  }

  void word(std::uint64_t x) {
    for (int k = 0; k < 8; ++k, x >>= 8) mix(static_cast<unsigned char>(x & 0xff));
  }

  std::uint64_t value() const { return h_; }

 private:
  void mix(unsigned char c) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }

  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t digest(const std::vector<element_t>& v) {
  fnv1a64 h;
  h.word(v.size());
  for (auto x : v) h.word(x);
  return h.value();
}

inline std::uint64_t digest(const std::vector<std::string>& v) {
  fnv1a64 h;
  h.word(v.size());
  for (const auto& s : v) {
    h.word(s.size());
    h.bytes(s);
  }
  return h.value();
}

// Least-squares slope of log(y) against log(x).
inline double fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw fit_error("fit_exponent: need at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw fit_error("fit_exponent: coordinates must be positive and finite");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double m = static_cast<double>(points.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx < 1e-12) throw fit_error("fit_exponent: all x coordinates coincide");
  return sxy / sxx;
}

// "LO..HIxF": LO, LO*F, ... up to HI. A single integer is one size.
inline std::vector<std::size_t> parse_sizes(std::string_view spec) {
  auto num = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v == 0) {
      throw contract_violation("bad size list '" + std::string(spec) + "'");
    }
    return v;
  };
  const auto dots = spec.find("..");
  if (dots == std::string_view::npos) return {num(spec)};
  const auto x = spec.find('x', dots + 2);
  const std::size_t lo = num(spec.substr(0, dots));
  const std::size_t hi = num(spec.substr(dots + 2, x == std::string_view::npos ? spec.npos : x - dots - 2));
  const std::size_t f = x == std::string_view::npos ? 2 : num(spec.substr(x + 1));
  if (lo > hi || f < 2) throw contract_violation("bad size list '" + std::string(spec) + "'");
  std::vector<std::size_t> out;
  for (std::size_t s = lo; s <= hi; s *= f) {
    out.push_back(s);
    if (s > hi / f) break;
  }
  return out;
}

}  // namespace permtool
