#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hopfkit {

/// Where and how a check failed. Values are rendered in the exact text forms.
struct Witness {
  std::string location;             // e.g. "basis (x1, c)"
  std::vector<std::size_t> index;   // failing basis multi-index, lexicographically first
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  std::string check_name;
  bool passed = true;
  std::optional<Witness> witness;   // present iff !passed
  double timing_ms = 0.0;
  std::vector<VerificationReport> parts;

  static VerificationReport pass(std::string name) { return {std::move(name), true, std::nullopt, 0.0, {}}; }
  static VerificationReport fail(std::string name, Witness w) {
    return {std::move(name), false, std::move(w), 0.0, {}};
  }

  explicit operator bool() const noexcept { return passed; }

  /// Passes iff every part passes; the witness is the first failing part's.
  static VerificationReport combine(std::string name, std::vector<VerificationReport> parts) {
    VerificationReport r{std::move(name), true, std::nullopt, 0.0, std::move(parts)};
    for (const auto& p : r.parts) {
      r.timing_ms += p.timing_ms;
      if (!p.passed && r.passed) {
        r.passed = false;
        Witness w = *p.witness;
        w.location = p.check_name + ": " + w.location;
        r.witness = std::move(w);
      }
    }
    return r;
  }

  /// Depth-first search for a named sub-check.
  const VerificationReport* find(const std::string& name) const {
    if (check_name == name) return this;
    for (const auto& p : parts)
      if (const auto* f = p.find(name)) return f;
    return nullptr;
  }
};

/// Times a callable producing a report and stores the elapsed milliseconds.
template <class F>
VerificationReport timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = f();
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace hopfkit
