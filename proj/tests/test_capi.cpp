// Exercises the shared library through the C surface only.

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "fillfam.h"
#include "json.hpp"
#include "test_util.hpp"

using nlohmann::json;

namespace {

json take(char* out) {
  CHECK(out != nullptr);
  json j = json::parse(out);
  ff_string_free(out);
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

void test_version_and_errors() {
  CHECK(std::strcmp(ff_version(), "0.1.0") == 0);
  CHECK(std::string(ff_last_error()) == "{}");

  ff_family* f = nullptr;
  CHECK(ff_family_open("no-such-family:what=ever", &f) != FF_OK);
  json err = json::parse(ff_last_error());
  CHECK(err.contains("code") && err.contains("message"));

  char* out = nullptr;
  CHECK(ff_types_json(1, &out) == FF_INVALID_ARGUMENT);
  err = json::parse(ff_last_error());
  CHECK(err["code"] == "invalid_argument");

  CHECK(ff_types_json(3, &out) == FF_OK);
  CHECK(std::string(ff_last_error()) == "{}");  // success clears the slot
  take(out);
}

void test_family_handles() {
  ff_family* sch = nullptr;
  CHECK(ff_family_open("schreier", &sch) == FF_OK);
  CHECK(ff_family_kind(sch) == 1);
  CHECK(std::string(ff_family_name(sch)).find("schreier") == 0);

  int member = -1;
  const int64_t one[] = {0};
  CHECK(ff_family_member_nat(sch, one, 1, &member) == FF_OK && member == 1);
  const int64_t pair[] = {0, 1};
  CHECK(ff_family_member_nat(sch, pair, 2, &member) == FF_OK && member == 0);
  const int64_t high[] = {2, 3, 4};
  CHECK(ff_family_member_nat(sch, high, 3, &member) == FF_OK && member == 1);
  ff_family_close(sch);

  ff_family* cap = nullptr;
  CHECK(ff_family_open("size-cap:2,depth=4", &cap) == FF_OK);
  CHECK(ff_family_kind(cap) == 0);
  CHECK(ff_family_depth(cap) == 4);
  CHECK(ff_family_closure_added(cap) == 0);
  const char* two[] = {"0000", "0100"};
  CHECK(ff_family_member(cap, two, 2, &member) == FF_OK && member == 1);
  const char* three[] = {"0000", "0100", "1000"};
  CHECK(ff_family_member(cap, three, 3, &member) == FF_OK && member == 0);
  ff_family_close(cap);
}

void test_family_file() {
  const std::string path = "/tmp/ff_capi_even.json";
  write_file(path,
             "{\"depth\": 4, \"members\": [[\"0000\", \"0001\", \"0010\", "
             "\"0011\", \"1000\", \"1001\", \"1010\", \"1011\"]]}");
  ff_family* f = nullptr;
  CHECK(ff_family_open(path.c_str(), &f) == FF_OK);
  CHECK(ff_family_kind(f) == 0);
  CHECK(ff_family_depth(f) == 4);
  CHECK(ff_family_closure_added(f) == 255);
  int member = -1;
  const char* inside[] = {"0000", "1011"};
  CHECK(ff_family_member(f, inside, 2, &member) == FF_OK && member == 1);
  const char* outside[] = {"0100"};
  CHECK(ff_family_member(f, outside, 1, &member) == FF_OK && member == 0);
  ff_family_close(f);

  ff_family* bad = nullptr;
  CHECK(ff_family_open("/tmp/ff_capi_missing.json", &bad) == FF_PARSE_ERROR);
}

void test_types_and_extraction() {
  char* out = nullptr;
  CHECK(ff_types_json(4, &out) == FF_OK);
  json types = take(out);
  CHECK(types["k"] == 4);
  CHECK(types["count"] == 6);
  CHECK(types["types"].size() == 6);
  CHECK(types["types"][0] == json::parse("[0,0,0]"));
  CHECK(types["verified"] == true);

  const char* staircase[] = {"00000000", "00010000", "01000000", "01001000",
                             "10000000", "10000100", "10100000", "10100010"};
  CHECK(ff_type_of_json(staircase, 8, &out) == FF_OK);
  json tau = take(out);
  CHECK(tau["k"] == 8);

  int inc = -1;
  CHECK(ff_check_increasing(staircase, 8, &inc) == FF_OK && inc == 1);
  const char* square[] = {"00", "01", "10", "11"};
  CHECK(ff_check_increasing(square, 4, &inc) == FF_OK && inc == 0);

  CHECK(ff_extract_increasing_json(staircase, 8, staircase, 8, 1, &out) ==
        FF_OK);
  json ext = take(out);
  CHECK(ext["H"] == json::parse("[\"00000000\",\"10000000\"]"));
  CHECK(ext["levels"] == json::parse("[0]"));

  const char* h2[] = {"0000000000000000", "0001000000000000",
                      "1000000000000000", "1000010000000000"};
  CHECK(ff_extract_type_json(h2, 4, "[0,1]", &out) == FF_OK);
  json typed = take(out);
  CHECK(typed["typeOf"] == json::parse("[0,1]"));
  CHECK(typed["I"].size() == 3);
  for (const auto& w : typed["I"]) {
    bool found = false;
    for (const char* cand : h2) found = found || w == cand;
    CHECK(found);
  }

  ff_family* all = nullptr;
  CHECK(ff_family_open("all:depth=16", &all) == FF_OK);
  CHECK(ff_typed_member_json(all, "", 3, "[0,1]", 4, 0, &out) == FF_OK);
  json tm = take(out);
  CHECK(tm["typeOf"] == json::parse("[0,1]"));
  CHECK(tm["member"].size() == 3);
  ff_family_close(all);
}

void test_density_reports() {
  ff_family* sch = nullptr;
  CHECK(ff_family_open("schreier", &sch) == FF_OK);
  char* out = nullptr;

  CHECK(ff_density_json(sch, "", 3, 0, 0, 1, &out) == FF_OK);
  json den = take(out);
  CHECK(den["values"].size() == 3);
  CHECK(den["values"][0]["value"] == 1);
  CHECK(den["values"][2]["value"] == 2);
  CHECK(den["values"][2]["mode"] == "exact");

  CHECK(ff_filling_json(sch, "0..8", "1/2", 4, 0, 0, 1, &out) == FF_OK);
  json fil = take(out);
  CHECK(fil["filling"] == true);
  CHECK(fil["eps"] == "1/2");

  CHECK(ff_half_filling_json(sch, "0..20", 4, 0, &out) == FF_OK);
  json half = take(out);
  CHECK(half["found"] == true);
  CHECK(half["subset"] == json::parse("[0,1,2,3]"));
  ff_family_close(sch);

  ff_family* all = nullptr;
  CHECK(ff_family_open("all:depth=4", &all) == FF_OK);
  CHECK(ff_star_probe_json(all, "", 2, 0, 0, 1, &out) == FF_OK);
  json star = take(out);
  CHECK(star["points"].size() == 1);
  CHECK(star["points"][0]["density"] == 4);
  ff_family_close(all);

  ff_family* fre = nullptr;
  CHECK(ff_family_open("fremlin:f=sqrt,levels=2,depth=6", &fre) == FF_OK);
  CHECK(ff_fremlin_json(fre, 6, &out) == FF_OK);
  json frem = take(out);
  CHECK(frem["caps"] == json::parse("[6,10,18]"));
  CHECK(frem["bounds"].size() == 6);
  CHECK(frem["bounds"][0]["bound"] == 1);
  ff_family_close(fre);
}

void test_trees_and_verdicts() {
  ff_tree* ident = nullptr;
  CHECK(ff_tree_identity(3, 4, &ident) == FF_OK);
  int valid = -1;
  CHECK(ff_tree_validate(ident, &valid) == FF_OK && valid == 1);
  char* out = nullptr;
  CHECK(ff_tree_json(ident, &out) == FF_OK);
  json tj = take(out);
  CHECK(tj["hostDepth"] == 4);
  CHECK(tj["labels"][""] == "");
  ff_tree_close(ident);

  ff_family* fre = nullptr;
  CHECK(ff_family_open("fremlin:f=sqrt,levels=2,depth=6", &fre) == FF_OK);
  ff_tree* built = nullptr;
  CHECK(ff_tree_build(fre, 3, 6, 0, &built) == FF_OK);
  CHECK(ff_tree_json(built, &out) == FF_OK);
  json bj = take(out);
  CHECK(bj["labels"][""] == "00");
  CHECK(bj["labels"]["110"] == "00110");

  CHECK(ff_decides_json(built, fre, 3, 0, &out) == FF_OK);
  json dec = take(out);
  CHECK(dec["complete"] == true);
  CHECK(dec["mixed"] == 0);
  CHECK(dec["maxTrapped"] == 8);
  ff_tree_close(built);

  size_t sizes[] = {6, 10, 18};
  ff_tree* graded = nullptr;
  CHECK(ff_tree_graded(fre, sizes, 3, 2, 6, 0, &graded) == FF_OK);
  CHECK(ff_tree_json(graded, &out) == FF_OK);
  json gj = take(out);
  CHECK(gj["labels"][""] == "00");
  CHECK(gj["labels"]["11"] == "0011");
  ff_tree_close(graded);
  ff_family_close(fre);

  ff_tree* t46 = nullptr;
  CHECK(ff_tree_identity(4, 6, &t46) == FF_OK);
  ff_family* cap = nullptr;
  CHECK(ff_family_open("size-cap:2,depth=6", &cap) == FF_OK);
  CHECK(ff_trapped_json(t46, cap, "1/4", 3, 0, &out) == FF_OK);
  json trap = take(out);
  CHECK(trap["size"] == 2);
  CHECK(trap["indices"] == json::parse("[\"000\",\"001\"]"));
  ff_family_close(cap);
  ff_tree_close(t46);

  ff_tree* t44 = nullptr;
  CHECK(ff_tree_identity(4, 4, &t44) == FF_OK);
  const char* roots[] = {"00", "01", "10", "11"};
  CHECK(ff_measure_json(t44, roots, 4, &out) == FF_OK);
  json mj = take(out);
  CHECK(mj["measure"] == "1");
  CHECK(mj["count"] == 16);
  ff_tree_close(t44);

  const std::string even_tree =
      "{\"depth\": 3, \"hostDepth\": 4, \"labels\": {\"\": \"\", "
      "\"0\": \"00\", \"1\": \"10\", \"00\": \"000\", \"01\": \"001\", "
      "\"10\": \"100\", \"11\": \"101\"}}";
  ff_tree* handmade = nullptr;
  CHECK(ff_tree_parse(even_tree.c_str(), &handmade) == FF_OK);
  CHECK(ff_tree_validate(handmade, &valid) == FF_OK && valid == 1);
  ff_family* even = nullptr;
  CHECK(ff_family_open("/tmp/ff_capi_even.json", &even) == FF_OK);
  CHECK(ff_limit_set_json(handmade, even, "1", 2, 1, 0, &out) == FF_OK);
  json lim = take(out);
  CHECK(lim["roots"] == json::parse("[\"00\",\"10\"]"));
  CHECK(lim["count"] == 8);
  CHECK(lim["measure"] == "1");
  ff_family_close(even);
  ff_tree_close(handmade);
}

void test_norm_reports() {
  ff_family* all = nullptr;
  CHECK(ff_family_open("all:depth=4", &all) == FF_OK);
  char* out = nullptr;

  CHECK(ff_norm_json(all,
                     "{\"depth\": 4, \"coefficients\": "
                     "{\"0000\": 2, \"1000\": \"3/2\"}}",
                     0, &out) == FF_OK);
  json norm = take(out);
  CHECK(norm["lower"] == "7/2");
  CHECK(norm["exact"] == true);
  CHECK(norm["witness"] == json::parse("[\"0000\",\"1000\"]"));

  const char* six[] = {"0000", "0001", "0010", "0100", "1000", "1100"};
  CHECK(ff_non_summability_json(all, six, 6, 5, 0, &out) == FF_OK);
  json ns = take(out);
  CHECK(ns["minAverage"] == "1");
  CHECK(ns["indices"] == json::parse("[0,1,2,3,4,5]"));
  CHECK(ns["exhaustive"] == true);
  ff_family_close(all);

  ff_family* cap1 = nullptr;
  CHECK(ff_family_open("size-cap:1,depth=4", &cap1) == FF_OK);
  CHECK(ff_cesaro_json(cap1, nullptr, 7, 0, &out) == FF_OK);
  json ces = take(out);
  CHECK(ces["rows"].size() == 8);
  CHECK(ces["rows"][7]["value"] == "1/8");
  CHECK(ces["thresholds"]["3"] == 1);
  ff_family_close(cap1);
}

}  // namespace

int main() {
  RUN_TEST(test_version_and_errors);
  RUN_TEST(test_family_handles);
  RUN_TEST(test_family_file);
  RUN_TEST(test_types_and_extraction);
  RUN_TEST(test_density_reports);
  RUN_TEST(test_trees_and_verdicts);
  RUN_TEST(test_norm_reports);
  return test_summary();
}
