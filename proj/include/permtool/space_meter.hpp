#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>

#include "permtool/errors.hpp"

namespace permtool {

// Counts auxiliary words owned by an algorithm run. A word is one integer of
// magnitude <= n (plus O(1) tag bits); flags and level counters count as one
// word each.
//
// Two ways to register words:
//  - scope(): stack-ordered, for locals and recursion frames. Releasing a scope
//    that is not the innermost live one is a metering error.
//  - charge: free-ordered, for data whose lifetime is not nested (pointer nodes
//    copied and handed back to callers). Copying a charge charges again.
class space_meter {
 public:
  class scope_token {
   public:
    scope_token() = default;
    scope_token(const scope_token&) = delete;
    scope_token& operator=(const scope_token&) = delete;
    scope_token(scope_token&& o) noexcept
        : meter_(std::exchange(o.meter_, nullptr)), words_(o.words_), depth_(o.depth_) {}
    scope_token& operator=(scope_token&& o) noexcept {
      if (this != &o) {
        drop();
        meter_ = std::exchange(o.meter_, nullptr);
        words_ = o.words_;
        depth_ = o.depth_;
      }
      return *this;
    }
    ~scope_token() { drop(); }

    // Throws metering_error if this is not the innermost live scope or was
    // already released.
    void release() {
      if (meter_ == nullptr) throw metering_error("scope released twice");
      if (meter_->depth_ != depth_) throw metering_error("scope released out of order");
      meter_->pop(words_);
      meter_ = nullptr;
    }

    bool active() const { return meter_ != nullptr; }

   private:
    friend class space_meter;
    scope_token(space_meter* m, std::size_t words, std::size_t depth)
        : meter_(m), words_(words), depth_(depth) {}

    void drop() noexcept {
      if (meter_ == nullptr) return;
      if (meter_->depth_ != depth_) meter_->faulted_ = true;
      meter_->pop(words_);
      meter_ = nullptr;
    }

    space_meter* meter_ = nullptr;
    std::size_t words_ = 0;
    std::size_t depth_ = 0;
  };

  class charge {
   public:
    charge() = default;
    charge(space_meter* m, std::size_t words) : meter_(m), words_(words) {
      if (meter_ != nullptr) meter_->add(words_);
    }
    charge(const charge& o) : charge(o.meter_, o.words_) {}
    charge& operator=(const charge& o) {
      if (this != &o) {
        if (o.meter_ != nullptr) o.meter_->add(o.words_);
        drop();
        meter_ = o.meter_;
        words_ = o.words_;
      }
      return *this;
    }
    charge(charge&& o) noexcept : meter_(std::exchange(o.meter_, nullptr)), words_(o.words_) {}
    charge& operator=(charge&& o) noexcept {
      if (this != &o) {
        drop();
        meter_ = std::exchange(o.meter_, nullptr);
        words_ = o.words_;
      }
      return *this;
    }
    ~charge() { drop(); }

   private:
    void drop() noexcept {
      if (meter_ != nullptr) meter_->sub(words_);
      meter_ = nullptr;
    }

    space_meter* meter_ = nullptr;
    std::size_t words_ = 0;
  };

  [[nodiscard]] scope_token scope(std::size_t words) {
    add(words);
    return scope_token(this, words, ++depth_);
  }

  std::size_t live() const { return live_; }
  std::size_t peak() const { return peak_; }
  // True if some scope was destroyed out of order without an explicit release().
  bool faulted() const { return faulted_; }

  // Only between runs.
  void reset() {
    if (live_ != 0 || depth_ != 0) throw metering_error("reset while words are live");
    peak_ = 0;
    faulted_ = false;
  }

 private:
  void add(std::size_t words) {
    live_ += words;
    peak_ = std::max(peak_, live_);
  }
  void sub(std::size_t words) noexcept {
    if (words > live_) {
      faulted_ = true;
      live_ = 0;
      return;
    }
    live_ -= words;
  }
  void pop(std::size_t words) noexcept {
    sub(words);
    --depth_;
  }

  std::size_t live_ = 0;
  std::size_t peak_ = 0;
  std::size_t depth_ = 0;
  bool faulted_ = false;
};

}  // namespace permtool
