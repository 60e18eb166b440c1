#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "julienne/app_model.hpp"

namespace julienne::adl {

// Application Description Language: a line-oriented manifest of a flattened
// task sequence.
//
//   # comment
//   energy startup_uJ=9
//   nvm read  base_uJ=1.3 per_byte_nJ=7.6
//   nvm write base_uJ=0.9 per_byte_nJ=6.2
//   packet img 9600
//   task sense energy_uJ=131900 reads=- writes=img
//   repeat i 0..4 {
//     packet res_$i 8
//     task cnn_${i} energy_uJ=396 reads=img writes=res_$i
//   }
//
// Repeat ranges are half-open. `$var` and `${var}` are substituted in task
// and packet names; nested repeats expand outer-first.

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
};

enum class ErrorKind {
  syntax,
  unknown_directive,
  duplicate_packet,
  duplicate_task,
  undefined_packet,
  duplicate_writer,
  read_before_write,
  bad_number,
  bad_repeat_range,
};

std::string_view error_kind_name(ErrorKind kind);

struct ParseError {
  SourcePosition position;
  ErrorKind kind = ErrorKind::syntax;
  std::string message;
};

struct ParseWarning {
  SourcePosition position;
  std::string message;
};

struct ParseResult {
  std::optional<Application> application;
  std::vector<ParseError> errors;
  std::vector<ParseWarning> warnings;

  bool ok() const { return application.has_value(); }
};

/// Parses and validates a whole file. Never stops at the first problem: all
/// detectable errors are reported. On success the application passes validate().
ParseResult parse(std::string_view text);

/// ADL text that parses back to an equal Application. Repeats are written out
/// flat and energies as exact decimals, so output is byte-stable.
std::string serialize(const Application& app);

/// "<line>:<column>: <kind>: <message>"
std::string format_error(const ParseError& error);

}  // namespace julienne::adl
