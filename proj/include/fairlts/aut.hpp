#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fairlts/lts.hpp"

namespace fairlts {

struct ParseError : std::runtime_error {
  ParseError(int line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

/// Reads the Aldebaran text format:
///
///   des (<init>,<#transitions>,<#states>)
///   alphabet: <label> <label> ...        (optional, before transitions)
///   (<src>,"<label>",<dst>)              (quotes optional for identifiers)
///
/// `#`-prefixed lines and blank lines are ignored; \r\n is accepted. The
/// declared initial state is recorded by the format but carries no
/// meaning here, since every query names its process explicitly. The
/// alphabet is the sorted set of labels seen in transitions plus any
/// labels declared on the extension line.
Lts parse_aut(std::string_view text);

/// Deterministic inverse of parse_aut: transitions sorted by
/// (src, label, dst), labels always quoted, unused letters listed on an
/// `alphabet:` line, `\n` endings, initial state written as 0.
std::string write_aut(const Lts& lts);

}  // namespace fairlts
