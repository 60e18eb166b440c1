#include "julienne/energy.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>

namespace julienne {

Energy Energy::from_microjoules(double uj) {
  return Energy(std::llround(uj * static_cast<double>(kFemtoPerMicro)));
}

Energy Energy::from_nanojoules(double nj) {
  return Energy(std::llround(nj * static_cast<double>(kFemtoPerNano)));
}

std::string format_microjoules(Energy e) {
  std::int64_t fj = e.femtojoules();
  const bool negative = fj < 0;
  // Work in unsigned space so INT64_MIN does not overflow on negation.
  std::uint64_t mag = negative ? ~static_cast<std::uint64_t>(fj) + 1 : static_cast<std::uint64_t>(fj);
  const auto scale = static_cast<std::uint64_t>(Energy::kFemtoPerMicro);
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / scale);
  std::uint64_t frac = mag % scale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 9 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

std::optional<std::int64_t> parse_scaled_decimal(std::string_view text, int fraction_digits) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  int frac_len = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      mantissa += c;
      seen_digit = true;
      if (seen_point) ++frac_len;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return std::nullopt;
  int exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    pos = text.size();
  }
  if (pos != text.size()) return std::nullopt;

  const long shift = static_cast<long>(exponent) + fraction_digits - frac_len;
  if (shift > 30 || shift < -400) {
    // Either clearly overflowing or rounds to zero; distinguish by mantissa.
    if (shift < -400) return 0;
    if (mantissa.find_first_not_of('0') == std::string::npos) return 0;
    return std::nullopt;
  }
  bool round_up = false;
  if (shift < 0) {
    const auto drop = static_cast<std::size_t>(-shift);
    if (drop >= mantissa.size()) {
      round_up = drop == mantissa.size() && mantissa.front() >= '5';
      mantissa.clear();
    } else {
      round_up = mantissa[mantissa.size() - drop] >= '5';
      mantissa.resize(mantissa.size() - drop);
    }
  } else {
    mantissa.append(static_cast<std::size_t>(shift), '0');
  }
  std::uint64_t value = 0;
  constexpr auto kLimit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  for (char c : mantissa) {
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (value > (kLimit - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
  }
  if (round_up) ++value;
  if (value > kLimit) return std::nullopt;
  const auto result = static_cast<std::int64_t>(value);
  return negative ? -result : result;
}

std::optional<Energy> parse_microjoules(std::string_view text) {
  auto fj = parse_scaled_decimal(text, 9);
  if (!fj) return std::nullopt;
  return Energy::from_femtojoules(*fj);
}

std::optional<Energy> parse_nanojoules(std::string_view text) {
  auto fj = parse_scaled_decimal(text, 6);
  if (!fj) return std::nullopt;
  return Energy::from_femtojoules(*fj);
}

std::optional<Energy> parse_energy_with_unit(std::string_view text) {
  struct Suffix {
    std::string_view name;
    int fraction_digits;
  };
  // Longest suffixes first so "mJ" is not mistaken for "J".
  static constexpr Suffix kSuffixes[] = {
      {"uJ", 9}, {"µJ", 9}, {"mJ", 12}, {"nJ", 6}, {"J", 15},
  };
  for (const auto& s : kSuffixes) {
    if (text.size() > s.name.size() && text.ends_with(s.name)) {
      auto fj = parse_scaled_decimal(text.substr(0, text.size() - s.name.size()), s.fraction_digits);
      if (!fj) return std::nullopt;
      return Energy::from_femtojoules(*fj);
    }
  }
  return parse_microjoules(text);
}

std::string shortest_decimal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace julienne
