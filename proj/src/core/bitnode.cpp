#include "fillfam/bitnode.hpp"

#include <algorithm>

namespace fillfam {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::comparable_nodes: return "comparable_nodes";
    case Errc::not_downward_closed: return "not_downward_closed";
    case Errc::not_skew: return "not_skew";
    case Errc::not_increasing: return "not_increasing";
    case Errc::precondition: return "precondition";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::unattainable: return "unattainable";
    case Errc::search_failed: return "search_failed";
    case Errc::parse_error: return "parse_error";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

std::size_t meet_length(const BitNode& s, const BitNode& t) {
  std::size_t n = std::min(s.length(), t.length());
  std::size_t i = 0;
  while (i < n && s.str()[i] == t.str()[i]) ++i;
  return i;
}

BitNode meet(const BitNode& s, const BitNode& t) {
  return s.prefix(meet_length(s, t));
}

bool precedes(const BitNode& s, const BitNode& t) {
  if (s.comparable(t))
    fail(Errc::comparable_nodes,
         "precedence undefined for comparable nodes '" + s.str() + "' and '" +
             t.str() + "'");
  std::size_t w = meet_length(s, t);
  return s.bit(w) == 0;  // s goes left at the meet, t goes right
}

bool lex_less_points(const BitNode& a, const BitNode& b) {
  if (a.length() != b.length())
    fail(Errc::invalid_argument,
         "points of different depth are not comparable: '" + a.str() +
             "' vs '" + b.str() + "'");
  return a.str() < b.str();
}

}  // namespace fillfam
