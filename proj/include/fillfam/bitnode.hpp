#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include "fillfam/errors.hpp"

namespace fillfam {

// A node of the dyadic tree 2^<omega: a finite 0/1 word.  Stored as an ASCII
// '0'/'1' string, which doubles as the wire format.
//
// Three orders matter and must not be confused:
//   * prefix order  s.is_prefix_of(t)        s below t on the same branch
//   * precedence    precedes(s, t)           s branches left of t (incomparable only)
//   * shortlex      operator<                container order, length then lex
// For words of equal length, shortlex, lex and precedence all agree.
class BitNode {
 public:
  BitNode() = default;
  explicit BitNode(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_)
      if (c != '0' && c != '1')
        fail(Errc::parse_error, "bitstring with non-0/1 character: " + bits_);
  }

  static BitNode empty() { return BitNode(); }

  std::size_t length() const { return bits_.size(); }
  bool is_root() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  const std::string& str() const { return bits_; }

  BitNode child(int b) const { return BitNode(bits_ + (b ? '1' : '0')); }
  BitNode prefix(std::size_t len) const { return BitNode(bits_.substr(0, len)); }
  BitNode parent() const {
    if (is_root()) fail(Errc::invalid_argument, "root node has no parent");
    return prefix(length() - 1);
  }

  // Append `pad` copies of bit b (leftmost/rightmost branch padding).
  BitNode extended(std::size_t pad, int b = 0) const {
    return BitNode(bits_ + std::string(pad, b ? '1' : '0'));
  }
  BitNode concat(const BitNode& t) const { return BitNode(bits_ + t.bits_); }

  bool is_prefix_of(const BitNode& t) const {
    return length() <= t.length() &&
           t.bits_.compare(0, bits_.size(), bits_) == 0;
  }
  bool comparable(const BitNode& t) const {
    return is_prefix_of(t) || t.is_prefix_of(*this);
  }

  friend bool operator==(const BitNode& a, const BitNode& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const BitNode& a, const BitNode& b) {
    return a.bits_ != b.bits_;
  }
  // Shortlex.  Equal-length words compare lexicographically, which is also
  // their precedence order, so sorted point lists are precedence-sorted.
  friend bool operator<(const BitNode& a, const BitNode& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.bits_ < b.bits_;
  }
  friend bool operator>(const BitNode& a, const BitNode& b) { return b < a; }
  friend bool operator<=(const BitNode& a, const BitNode& b) { return !(b < a); }
  friend bool operator>=(const BitNode& a, const BitNode& b) { return !(a < b); }

 private:
  std::string bits_;
};

// Longest common prefix.  meet(s, s) = s.
BitNode meet(const BitNode& s, const BitNode& t);
std::size_t meet_length(const BitNode& s, const BitNode& t);

// Left-to-right branching order: s precedes t when s passes through w^0 and
// t through w^1 at their meet w.  Defined only for incomparable pairs;
// prefix-comparable input is an error, since such nodes sit on one branch.
bool precedes(const BitNode& s, const BitNode& t);

// Lexicographic order restricted to equal-length words (point order).
// Unequal lengths are an error: points of different depth never compare.
bool lex_less_points(const BitNode& a, const BitNode& b);

}  // namespace fillfam
