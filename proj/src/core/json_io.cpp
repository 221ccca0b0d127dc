#include "fillfam/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fillfam/builtin_families.hpp"
#include "fillfam/errors.hpp"

namespace fillfam {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json parse(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse_error, what + ": " + e.what(),
         "{\"byte\":" + std::to_string(e.byte) + "}");
  }
}

std::size_t require_depth(const ordered_json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("depth"))
    fail(Errc::parse_error, what + " needs an object with a \"depth\" key");
  const auto& d = j["depth"];
  if (!d.is_number_unsigned() || d.get<std::uint64_t>() == 0)
    fail(Errc::parse_error, what + ": \"depth\" must be a positive integer");
  return d.get<std::size_t>();
}

}  // namespace

std::unique_ptr<Family> load_family_file(const std::string& path) {
  const std::string what = "family file " + path;
  ordered_json j = parse(read_file(path), what);
  std::size_t depth = require_depth(j, what);
  if (!j.contains("members") || !j["members"].is_array())
    fail(Errc::parse_error, what + ": \"members\" must be an array");
  std::vector<PointConfig> members;
  for (const auto& m : j["members"]) {
    if (!m.is_array())
      fail(Errc::parse_error, what + ": each member must be an array");
    std::vector<BitNode> pts;
    pts.reserve(m.size());
    for (const auto& w : m) {
      if (!w.is_string())
        fail(Errc::parse_error, what + ": each point must be a bitstring");
      pts.emplace_back(w.get<std::string>());
    }
    members.push_back(PointConfig::make(depth, std::move(pts)));
  }
  return std::make_unique<ExplicitFamily>(depth, members, path);
}

std::string tree_to_json(const RegularDyadicTree& t) {
  ordered_json j;
  j["depth"] = t.depth;
  j["hostDepth"] = t.host_depth;
  ordered_json labels = ordered_json::object();
  for (const auto& [s, lab] : t.labels) labels[s] = lab.str();
  j["labels"] = std::move(labels);
  return j.dump(2) + "\n";
}

RegularDyadicTree tree_from_json(const std::string& text) {
  ordered_json j = parse(text, "tree JSON");
  RegularDyadicTree t;
  t.depth = require_depth(j, "tree JSON");
  if (!j.contains("hostDepth") || !j["hostDepth"].is_number_unsigned())
    fail(Errc::parse_error, "tree JSON: \"hostDepth\" must be an integer");
  t.host_depth = j["hostDepth"].get<std::size_t>();
  if (!j.contains("labels") || !j["labels"].is_object())
    fail(Errc::parse_error, "tree JSON: \"labels\" must be an object");
  for (const auto& [s, lab] : j["labels"].items()) {
    BitNode key(s);  // rejects non-0/1 characters
    if (!lab.is_string())
      fail(Errc::parse_error, "tree JSON: label of \"" + s +
                                  "\" must be a bitstring");
    t.labels[key.str()] = BitNode(lab.get<std::string>());
  }
  return t;
}

RegularDyadicTree load_tree_file(const std::string& path) {
  return tree_from_json(read_file(path));
}

SupportedVector vector_from_json(const std::string& text) {
  ordered_json j = parse(text, "vector JSON");
  std::size_t depth = require_depth(j, "vector JSON");
  if (!j.contains("coefficients") || !j["coefficients"].is_object())
    fail(Errc::parse_error, "vector JSON: \"coefficients\" must be an object");
  std::vector<std::pair<BitNode, Rat>> entries;
  for (const auto& [w, c] : j["coefficients"].items()) {
    Rat a;
    if (c.is_number_integer() && !c.is_number_float()) {
      a = Rat(c.get<std::int64_t>());
    } else if (c.is_string()) {
      try {
        a = Rat::parse(c.get<std::string>());
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        fail(Errc::parse_error, "vector JSON: coefficient of \"" + w +
                                    "\" is not an integer or \"p/q\"");
      }
    } else {
      fail(Errc::parse_error, "vector JSON: coefficient of \"" + w +
                                  "\" must be an integer or a \"p/q\" string");
    }
    entries.emplace_back(BitNode(w), a);
  }
  return SupportedVector::make(depth, std::move(entries));
}

SupportedVector load_vector_file(const std::string& path) {
  return vector_from_json(read_file(path));
}

}  // namespace fillfam
