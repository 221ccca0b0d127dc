#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fillfam {

// Every failure the library reports deliberately.  Anything else escaping a
// public entry point is a bug.
enum class Errc {
  invalid_argument,   // malformed input, bad sizes, kind mismatches
  comparable_nodes,   // precedence asked for on a prefix-comparable pair
  not_downward_closed,
  not_skew,
  not_increasing,     // config lacks the required staircase structure
  precondition,       // a stated operation precondition does not hold
  budget_exceeded,    // enumeration or search budget ran out
  unattainable,       // no object with the requested property exists
  search_failed,      // bounded search ended honestly without a witness
  parse_error,
  internal,           // invariant the library itself promised was violated
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::string detail_json = "{}")
      : std::runtime_error(std::move(message)),
        code_(code),
        detail_(std::move(detail_json)) {}

  Errc code() const { return code_; }
  // Machine-readable payload (JSON object text), e.g. a witness config.
  const std::string& detail() const { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] inline void fail(Errc code, std::string message,
                              std::string detail_json = "{}") {
  throw Error(code, std::move(message), std::move(detail_json));
}

}  // namespace fillfam
