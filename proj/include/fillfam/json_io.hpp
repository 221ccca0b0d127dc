#pragma once

#include <memory>
#include <string>

#include "fillfam/dyadic.hpp"
#include "fillfam/family.hpp"
#include "fillfam/norms.hpp"

namespace fillfam {

// Reads {"depth": D, "members": [["0101", "0110"], ...]} and returns the
// downward closure of the listed configs.  Unreadable files and malformed
// JSON raise parse_error (with the byte position when known); points whose
// length differs from the declared depth raise invalid_argument.  Whether
// the closure added members is visible through ExplicitFamily.
std::unique_ptr<Family> load_family_file(const std::string& path);

// {"depth": d, "hostDepth": D, "labels": {"": "00", "0": "000", ...}}.
// Serialization is structural: a loaded tree is not validated here, so the
// checking commands can inspect broken label maps.
std::string tree_to_json(const RegularDyadicTree& t);
RegularDyadicTree tree_from_json(const std::string& text);
RegularDyadicTree load_tree_file(const std::string& path);

// {"depth": D, "coefficients": {"0101": "3/2", "0110": -2, ...}}.
// Coefficients may be integers or "p/q" strings; anything inexact is
// rejected so reported norms stay exact.
SupportedVector vector_from_json(const std::string& text);
SupportedVector load_vector_file(const std::string& path);

}  // namespace fillfam
