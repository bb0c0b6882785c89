#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permtool/errors.hpp"
#include "permtool/space_meter.hpp"
#include "permtool/value.hpp"

namespace permtool {

struct access_stats {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;

  friend bool operator==(const access_stats&, const access_stats&) = default;
};

// Read-side oracle access to pi. `read` counts as one logical access.
template <class T>
concept permutation_oracle = requires(T& t, element_t i) {
  { t.size() } -> std::convertible_to<std::size_t>;
  { t.read(i) } -> std::same_as<value>;
  { t.meter() } -> std::same_as<space_meter&>;
};

template <class T>
concept mutable_permutation = permutation_oracle<T> && requires(T& t, element_t i, value v) {
  t.write(i, v);
};

// Index lists for the null simulation: bucket x holds every index whose logical
// value is the plain element x (x <= k). A slot physically holding x <= k whose
// index is absent from bucket x logically holds null_x.
class null_registry {
 public:
  null_registry() = default;
  null_registry(std::uint32_t k, std::uint32_t c)
      : k_(k), c_(c), slots_(std::size_t{k} * c, 0), counts_(k, 0) {}

  std::uint32_t types() const { return k_; }
  std::uint32_t multiplicity() const { return c_; }
  bool enabled() const { return k_ != 0; }

  // Registry footprint in words; drivers meter it for the span of a run.
  std::size_t words() const { return slots_.size() + counts_.size(); }

  // Returns the number of entries inspected.
  std::size_t find(std::uint32_t x, element_t i, bool& found) const {
    const auto* b = bucket(x);
    const std::uint32_t cnt = counts_[x - 1];
    for (std::uint32_t j = 0; j < cnt; ++j) {
      if (b[j] == i) {
        found = true;
        return j + 1;
      }
    }
    found = false;
    return cnt;
  }

  void insert(std::uint32_t x, element_t i) {
    std::uint32_t& cnt = counts_[x - 1];
    if (cnt >= c_) {
      throw multiplicity_error("value " + std::to_string(x) + " would occur more than " +
                               std::to_string(c_) + " times");
    }
    bucket(x)[cnt++] = i;
  }

  std::size_t erase(std::uint32_t x, element_t i) {
    auto* b = bucket(x);
    std::uint32_t& cnt = counts_[x - 1];
    for (std::uint32_t j = 0; j < cnt; ++j) {
      if (b[j] == i) {
        b[j] = b[cnt - 1];
        --cnt;
        return j + 1;
      }
    }
    return cnt;
  }

  std::uint32_t count(std::uint32_t x) const { return counts_[x - 1]; }

 private:
  element_t* bucket(std::uint32_t x) { return slots_.data() + std::size_t{x - 1} * c_; }
  const element_t* bucket(std::uint32_t x) const {
    return slots_.data() + std::size_t{x - 1} * c_;
  }

  std::uint32_t k_ = 0;
  std::uint32_t c_ = 0;
  std::vector<element_t> slots_;
  std::vector<std::uint32_t> counts_;
};

// Mutable store of pi on [n] with simulated typed nulls and instrumentation.
// Each physical slot holds one integer of [n]; nulls null_1..null_k are encoded
// through the registry, never as out-of-band values.
class perm_table {
 public:
  perm_table() = default;

  // `values[i-1]` is pi(i). Values must lie in [n]; they need not be distinct
  // (a table may hold partial structures built by tests).
  explicit perm_table(std::vector<element_t> values) : base_(std::move(values)) {
    const auto n = base_.size();
    if (n == 0) throw contract_violation("perm_table: n must be positive");
    if (n > UINT32_MAX - 1) throw contract_violation("perm_table: n too large");
    for (auto v : base_) {
      if (v < 1 || v > n) throw contract_violation("perm_table: value out of range");
    }
  }

  static perm_table identity(std::size_t n) {
    std::vector<element_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<element_t>(i + 1);
    return perm_table(std::move(v));
  }

  std::size_t size() const { return base_.size(); }

  value read(element_t i) {
    check_index(i);
    ++stats_.reads;
    return decode(i);
  }

  void write(element_t i, value v) {
    check_index(i);
    ++stats_.writes;
    ++probes_;
    std::uint32_t raw;
    if (v.is_null()) {
      const auto x = v.payload();
      if (x == 0 || x > registry_.types()) {
        throw contract_violation("write: null type " + std::to_string(x) + " not registered");
      }
      raw = x;
    } else {
      raw = v.payload();
      if (raw < 1 || raw > base_.size()) throw contract_violation("write: element out of range");
    }
    auto& slot = base_[i - 1];
    if (registry_.enabled()) {
      const bool was_plain = slot <= registry_.types() && is_registered(slot, i);
      const bool becomes_plain = v.is_element() && raw <= registry_.types();
      if (becomes_plain && !(was_plain && slot == raw)) {
        if (registry_.count(raw) >= registry_.multiplicity()) {
          throw multiplicity_error("value " + std::to_string(raw) + " would occur more than " +
                                   std::to_string(registry_.multiplicity()) + " times");
        }
      }
      if (was_plain) probes_ += registry_.erase(slot, i);
      if (becomes_plain) {
        registry_.insert(raw, i);
        ++probes_;
      }
    }
    slot = raw;
  }

  // Starts simulating k null types with plain-value multiplicity c. The current
  // content must be null-free (it is, since nulls cannot exist before this).
  void enable_nulls(std::uint32_t k, std::uint32_t c) {
    if (registry_.enabled()) throw contract_violation("nulls already enabled");
    if (k == 0 || k > base_.size()) throw contract_violation("enable_nulls: need 1 <= k <= n");
    if (c == 0) throw contract_violation("enable_nulls: need c >= 1");
    null_registry reg(k, c);
    for (std::size_t i = 0; i < base_.size(); ++i) {
      if (base_[i] <= k) reg.insert(base_[i], static_cast<element_t>(i + 1));
    }
    registry_ = std::move(reg);
  }

  // Stops the simulation; every slot must hold a plain element again.
  void disable_nulls() {
    if (null_count() != 0) throw contract_violation("disable_nulls: nulls remain");
    registry_ = null_registry();
  }

  const null_registry& registry() const { return registry_; }

  // Uncounted inspection for audits and tests.
  value peek(element_t i) const {
    check_index(i);
    return decode_quiet(i);
  }

  std::size_t null_count() const {
    std::size_t cnt = 0;
    for (std::size_t i = 1; i <= base_.size(); ++i) {
      if (decode_quiet(static_cast<element_t>(i)).is_null()) ++cnt;
    }
    return cnt;
  }

  // Plain content; throws if any slot is null.
  std::vector<element_t> snapshot() const {
    std::vector<element_t> out(base_.size());
    for (std::size_t i = 1; i <= base_.size(); ++i) {
      auto v = decode_quiet(static_cast<element_t>(i));
      if (v.is_null()) throw contract_violation("snapshot: slot " + std::to_string(i) + " is null");
      out[i - 1] = v.payload();
    }
    return out;
  }

  bool is_permutation() const {
    std::vector<bool> seen(base_.size() + 1, false);
    for (std::size_t i = 1; i <= base_.size(); ++i) {
      auto v = decode_quiet(static_cast<element_t>(i));
      if (v.is_null() || seen[v.payload()]) return false;
      seen[v.payload()] = true;
    }
    return true;
  }

  const access_stats& stats() const { return stats_; }
  std::uint64_t physical_probes() const { return probes_; }
  space_meter& meter() { return meter_; }
  const space_meter& meter() const { return meter_; }

  // Only between runs.
  void reset_stats() {
    stats_ = {};
    probes_ = 0;
  }

 private:
  void check_index(element_t i) const {
    if (i < 1 || i > base_.size()) {
      throw contract_violation("index " + std::to_string(i) + " outside [1, " +
                               std::to_string(base_.size()) + "]");
    }
  }

  bool is_registered(std::uint32_t x, element_t i) const {
    bool found = false;
    registry_.find(x, i, found);
    return found;
  }

  value decode(element_t i) {
    ++probes_;
    const auto raw = base_[i - 1];
    if (raw > registry_.types()) return value::of(raw);
    bool found = false;
    probes_ += registry_.find(raw, i, found);
    return found ? value::of(raw) : value::null(raw);
  }

  value decode_quiet(element_t i) const {
    const auto raw = base_[i - 1];
    if (raw > registry_.types()) return value::of(raw);
    return is_registered(raw, i) ? value::of(raw) : value::null(raw);
  }

  std::vector<element_t> base_;
  null_registry registry_;
  access_stats stats_;
  std::uint64_t probes_ = 0;
  space_meter meter_;
};

}  // namespace permtool
