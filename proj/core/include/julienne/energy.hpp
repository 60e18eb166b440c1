#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace julienne {

/// Energy quantity stored as an integer count of femtojoules.
///
/// All burst costs are sums of per-task and per-packet terms. Keeping them in
/// integer units makes every sum exact and independent of evaluation order, so
/// incrementally maintained costs are bitwise equal to a fresh evaluation and
/// comparisons against a capacity bound are never perturbed by rounding.
/// The representable range is about +/-9.2 kJ.
class Energy {
 public:
  static constexpr std::int64_t kFemtoPerMicro = 1'000'000'000;
  static constexpr std::int64_t kFemtoPerNano = 1'000'000;

  constexpr Energy() = default;

  static constexpr Energy from_femtojoules(std::int64_t fj) { return Energy(fj); }
  /// Rounds to the nearest femtojoule.
  static Energy from_microjoules(double uj);
  static Energy from_nanojoules(double nj);

  static constexpr Energy zero() { return Energy(0); }
  static constexpr Energy max() { return Energy(std::numeric_limits<std::int64_t>::max()); }

  constexpr std::int64_t femtojoules() const { return fj_; }
  constexpr double microjoules() const {
    return static_cast<double>(fj_) / static_cast<double>(kFemtoPerMicro);
  }

  constexpr Energy& operator+=(Energy o) {
    fj_ += o.fj_;
    return *this;
  }
  constexpr Energy& operator-=(Energy o) {
    fj_ -= o.fj_;
    return *this;
  }
  friend constexpr Energy operator+(Energy a, Energy b) { return Energy(a.fj_ + b.fj_); }
  friend constexpr Energy operator-(Energy a, Energy b) { return Energy(a.fj_ - b.fj_); }
  friend constexpr Energy operator*(Energy a, std::int64_t n) { return Energy(a.fj_ * n); }
  friend constexpr Energy operator*(std::int64_t n, Energy a) { return Energy(a.fj_ * n); }

  friend constexpr auto operator<=>(Energy, Energy) = default;
  friend constexpr bool operator==(Energy, Energy) = default;

 private:
  constexpr explicit Energy(std::int64_t fj) : fj_(fj) {}

  std::int64_t fj_ = 0;
};

/// Exact decimal rendering in microjoules, trailing zeros trimmed ("131969.42").
std::string format_microjoules(Energy e);

/// Parses a decimal number (optionally with exponent) scaled by
/// 10^fraction_digits into an integer, rounding half away from zero.
/// Returns nullopt on malformed input or overflow.
std::optional<std::int64_t> parse_scaled_decimal(std::string_view text, int fraction_digits);

/// Decimal microjoules, e.g. "396" or "1.3". Negative values are accepted here;
/// callers enforce sign constraints.
std::optional<Energy> parse_microjoules(std::string_view text);
/// Decimal nanojoules, e.g. "7.6".
std::optional<Energy> parse_nanojoules(std::string_view text);

/// Energy with optional unit suffix: uJ (default), mJ, J, nJ. "132mJ" == 132000 uJ.
std::optional<Energy> parse_energy_with_unit(std::string_view text);

/// Shortest round-trip decimal for a double (std::to_chars).
std::string shortest_decimal(double value);

}  // namespace julienne
