// Built-in families, the member search engines, and the density layer.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "fillfam/builtin_families.hpp"
#include "fillfam/density.hpp"
#include "fillfam/errors.hpp"
#include "fillfam/json_io.hpp"
#include "fillfam/rng.hpp"
#include "fillfam/search.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fillfam;

namespace {

PointConfig cfg(std::size_t depth, const std::vector<std::string>& words) {
  std::vector<BitNode> pts;
  for (const std::string& w : words) pts.emplace_back(w);
  return PointConfig::make(depth, std::move(pts));
}

NatSet nats(std::vector<std::int64_t> v) { return NatSet::make(std::move(v)); }

oracle::MemberFn<BitNode> bits_member(const Family& fam, std::size_t depth) {
  return [&fam, depth](const std::vector<BitNode>& sub) {
    return fam.member_points(depth, sub);
  };
}

oracle::MemberFn<std::int64_t> nat_member(const Family& fam) {
  return [&fam](const std::vector<std::int64_t>& sub) {
    return fam.member_nat(sub);
  };
}

// Exhaustively checks that every subset of every member found inside a few
// random configurations is again a member.
void check_heredity_bits(const Family& fam, std::size_t depth,
                         std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t most = std::min<std::size_t>(std::size_t(1) << depth, 11);
  for (std::size_t t = 0; t < trials; ++t) {
    PointConfig c = gen::random_config(rng, depth, 2 + rng.below(most - 1));
    PointConfig w = max_member_within(fam, c).witness;
    CHECK(fam.member(w));
    std::size_t m = w.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i)) idx.push_back(i);
      CHECK_MSG(fam.member(w.subset_by_indices(idx)),
                fam.name() + " lost a subset of a member");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- ground sets

static void test_natset() {
  NatSet s = nats({5, 1, 3});
  CHECK(s.elems == (std::vector<std::int64_t>{1, 3, 5}));
  CHECK_FAILS(NatSet::make({1, 1, 2}), Errc::invalid_argument);
  CHECK_FAILS(NatSet::make({-1, 2}), Errc::invalid_argument);
  CHECK(NatSet::range(2, 5).elems == (std::vector<std::int64_t>{2, 3, 4, 5}));
  CHECK(NatSet::range(3, 2).empty());  // hi = lo - 1 is the empty range
  CHECK_FAILS(NatSet::range(5, 2), Errc::invalid_argument);
  CHECK_FAILS(NatSet::range(-1, 3), Errc::invalid_argument);
  CHECK(s.subset_by_indices({0, 2}) == nats({1, 5}));
  CHECK_FAILS(s.subset_by_indices({3}), Errc::invalid_argument);
  CHECK(ground_size(Ground(s)) == 3);
  CHECK(ground_size(Ground(PointConfig::full_cube(3))) == 8);
}

// ---------------------------------------------------------------- schreier

static void test_schreier_membership() {
  SchreierFamily f;
  CHECK(f.member(nats({})));
  CHECK(f.member(nats({0})));
  CHECK(f.member(nats({1, 7})));
  CHECK(!f.member(nats({0, 1})));
  CHECK(!f.member(nats({1, 5, 9})));
  CHECK(f.member(nats({2, 5, 9})));
  CHECK(f.member(nats({3, 4, 5, 6})));
  CHECK(!f.member(nats({3, 4, 5, 6, 7})));
  CHECK_FAILS(f.member(cfg(2, {"00"})), Errc::invalid_argument);
  CHECK_FAILS(f.ground_depth(), Errc::invalid_argument);
  CHECK(!f.determination_depth().has_value());
}

static void test_schreier_search() {
  SchreierFamily f;
  Rng rng(11);
  for (std::size_t t = 0; t < 60; ++t) {
    std::size_t n = 2 + rng.below(9);
    std::vector<std::int64_t> pool;
    for (std::size_t i : rng.sample_indices(30, n))
      pool.push_back(static_cast<std::int64_t>(i));
    NatSet c = nats(pool);
    auto res = max_member_within(f, c);
    CHECK(res.exact);
    std::vector<std::int64_t> want = oracle::max_member<std::int64_t>(
        nat_member(f), c.elems);
    CHECK_MSG(res.witness.elems == want, "schreier max member mismatch");
    std::size_t m = res.witness.size();
    CHECK(has_member_at_least(f, c, m));
    CHECK(!has_member_at_least(f, c, m + 1));
  }
  // {2,3,4}: the whole set is the largest member and the least such
  auto res = max_member_within(f, nats({2, 3, 4}));
  CHECK(res.witness == nats({2, 3, 4}));
  // {0,1,2}: best size is 2, least witness {1,2}
  CHECK(max_member_within(f, nats({0, 1, 2})).witness == nats({1, 2}));
}

static void test_schreier_density() {
  SchreierFamily f;
  for (std::size_t n = 1; n <= 6; ++n) {
    Ground g(NatSet::range(0, 2 * static_cast<std::int64_t>(n)));
    DensityValue dv = density(f, g, n);
    CHECK(dv.mode == DensityMode::exact);
    CHECK_MSG(dv.value == static_cast<std::int64_t>((n + 1) / 2),
              "schreier density at n = " + std::to_string(n));
    if (n <= 5) {
      long want = oracle::density<std::int64_t>(
          nat_member(f), std::get<NatSet>(g).elems, n);
      CHECK(dv.value == want);
    }
    // the minimizer attains the reported value
    CHECK(std::get<NatSet>(dv.minimizer_member).size() ==
          static_cast<std::size_t>(dv.value));
    CHECK(max_member_within(f, std::get<NatSet>(dv.minimizer)).witness.size() ==
          static_cast<std::size_t>(dv.value));
  }
  CHECK_FAILS(density(f, Ground(nats({0, 1})), 0), Errc::invalid_argument);
  CHECK_FAILS(density(f, Ground(nats({0, 1})), 3), Errc::invalid_argument);
  CHECK_FAILS(density(f, Ground(PointConfig::full_cube(2)), 1),
              Errc::invalid_argument);
}

// ---------------------------------------------------------------- trivial families

static void test_all_and_size_cap() {
  AllFamily ab(GroundKind::bits, 4);
  CHECK(ab.member(cfg(4, {"0000", "1111"})));
  CHECK(ab.determination_depth() == std::optional<std::size_t>(0));
  CHECK(ab.ground_depth() == 4);
  CHECK_FAILS(ab.member(nats({1})), Errc::invalid_argument);

  AllFamily an(GroundKind::nat, 0);
  CHECK(an.member(nats({0, 5, 9})));
  CHECK(!an.determination_depth().has_value());
  CHECK_FAILS(an.ground_depth(), Errc::invalid_argument);

  SizeCapFamily sc(3, GroundKind::nat, 0);
  CHECK(sc.member(nats({1, 2, 3})));
  CHECK(!sc.member(nats({1, 2, 3, 4})));
  CHECK_FAILS(SizeCapFamily(0, GroundKind::nat, 0), Errc::invalid_argument);

  // d(n) = min(n, cap); bits side goes through the truncation-class engine
  SizeCapFamily scb(2, GroundKind::bits, 3);
  for (std::size_t n = 1; n <= 5; ++n) {
    DensityValue dv = density(scb, Ground(PointConfig::full_cube(3)), n);
    CHECK(dv.value == static_cast<std::int64_t>(std::min<std::size_t>(n, 2)));
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    DensityValue dv = density(sc, Ground(NatSet::range(0, 6)), n);
    CHECK(dv.value == static_cast<std::int64_t>(std::min<std::size_t>(n, 3)));
  }

  // classed search over the single depth-0 class returns the least points
  auto res = max_member_within(scb, PointConfig::full_cube(3));
  CHECK(res.witness == cfg(3, {"000", "001"}));
  auto ra = max_member_within(ab, PointConfig::full_cube(4));
  CHECK(ra.witness == PointConfig::full_cube(4));
}

// ---------------------------------------------------------------- thresholds

static void test_thresholds() {
  // honest scan for the square root: violations end at 5, 19, 71, 271
  ThresholdSequence t = slow_thresholds(SlowFunc::sqrt_ceil, 4);
  CHECK(t.values == (std::vector<std::int64_t>{1, 6, 20, 72, 272}));
  CHECK(t.cert == ThresholdCert::envelope);
  CHECK(verify_thresholds(t));

  // declared-monotone scan stops at the first fitting index
  ThresholdSequence tm = slow_thresholds(SlowFunc::sqrt_ceil, 4, 0, true);
  CHECK(tm.values == (std::vector<std::int64_t>{1, 4, 16, 64, 256}));
  CHECK(tm.cert == ThresholdCert::monotone_declared);
  CHECK(verify_thresholds(tm));

  // constant 1: ratio 1/i is provably non-increasing, first dip is final
  ThresholdSequence t1 = slow_thresholds(SlowFunc::one, 4);
  CHECK(t1.values == (std::vector<std::int64_t>{1, 2, 4, 8, 16}));
  CHECK(t1.cert == ThresholdCert::envelope);
  CHECK(verify_thresholds(t1));

  // bit length: also provably non-increasing ratio
  ThresholdSequence tl = slow_thresholds(SlowFunc::log2_ceil, 4);
  CHECK(tl.values == (std::vector<std::int64_t>{1, 6, 20, 48, 112}));
  CHECK(verify_thresholds(tl));

  // zero levels
  CHECK(slow_thresholds(SlowFunc::sqrt_ceil, 0).values ==
        (std::vector<std::int64_t>{1}));

  // a horizon that cannot settle the level
  CHECK_FAILS(slow_thresholds(SlowFunc::sqrt_ceil, 2, 10),
              Errc::unattainable);
  // horizon wide enough for the envelope: still fully certified
  ThresholdSequence th = slow_thresholds(SlowFunc::sqrt_ceil, 2, 100);
  CHECK(th.values == (std::vector<std::int64_t>{1, 6, 20}));
  CHECK(th.cert == ThresholdCert::envelope);
  // horizon past the violations but short of the envelope: flagged
  ThresholdSequence tsh = slow_thresholds(SlowFunc::sqrt_ceil, 2, 25);
  CHECK(tsh.values == (std::vector<std::int64_t>{1, 6, 20}));
  CHECK(tsh.cert == ThresholdCert::horizon);
  CHECK(tsh.horizon == 25);
  CHECK(verify_thresholds(tsh));

  // tampered sequences fail verification
  ThresholdSequence bad = t;
  bad.values[1] = 7;
  CHECK(!verify_thresholds(bad));
  bad = t;
  bad.values[0] = 2;
  CHECK(!verify_thresholds(bad));

  CHECK_FAILS(slow_thresholds(SlowFunc::sqrt_ceil, 13),
              Errc::invalid_argument);
  CHECK_FAILS(slow_thresholds(SlowFunc::sqrt_ceil, 2, -1),
              Errc::invalid_argument);
  CHECK_FAILS(slow_func_value(SlowFunc::one, 0), Errc::invalid_argument);
  CHECK(slow_func_value(SlowFunc::sqrt_ceil, 10) == 4);
  CHECK(slow_func_value(SlowFunc::sqrt_ceil, 16) == 4);
  CHECK(slow_func_value(SlowFunc::log2_ceil, 8) == 4);
  CHECK(slow_func_parse("sqrt") == SlowFunc::sqrt_ceil);
  CHECK_FAILS(slow_func_parse("cube"), Errc::invalid_argument);
}

// ---------------------------------------------------------------- fremlin

static void test_fremlin_membership() {
  FremlinFamily f(SlowFunc::sqrt_ceil, 6, 3);
  CHECK(f.thresholds().values == (std::vector<std::int64_t>{1, 6, 20, 72, 272}));
  CHECK(f.caps() == (std::vector<std::int64_t>{6, 10, 18, 34}));
  CHECK(f.max_caps() == (std::vector<std::int64_t>{6, 10, 18, 34}));
  CHECK(f.determination_depth() == std::optional<std::size_t>(3));

  CHECK(f.member(cfg(6, {})));
  CHECK(f.member(cfg(6, {"101010"})));

  // seven points spread over both halves exceed the level-0 cap of six
  PointConfig spread = cfg(6, {"000000", "000001", "000010", "000011",
                               "000100", "000101", "100000"});
  CHECK(!f.member(spread));
  CHECK(f.member(spread.subset_by_indices({0, 1, 2, 3, 4, 5})));

  // eleven points under the same length-1 word need the level-1 cap of ten
  std::vector<std::string> half;
  for (int i = 0; i < 6; ++i)
    half.push_back("10" + std::string{char('0' + (i >> 2 & 1)),
                                      char('0' + (i >> 1 & 1)),
                                      char('0' + (i & 1))});
  for (int i = 0; i < 5; ++i)
    half.push_back("11" + std::string{char('0' + (i >> 2 & 1)),
                                      char('0' + (i >> 1 & 1)),
                                      char('0' + (i & 1))});
  std::vector<std::string> half6;
  for (std::string& w : half) half6.push_back(w + "0");
  PointConfig eleven = cfg(6, half6);
  CHECK(eleven.common_prefix_length() == 1);
  CHECK(!f.member(eleven));
  CHECK(f.member(eleven.subset_by_indices({0, 1, 2, 3, 4, 5, 6, 7, 8, 9})));

  // a full length-2 block holds sixteen points, under the level-2 cap of 18
  std::vector<std::string> block;
  for (int i = 0; i < 16; ++i) {
    std::string w = "11";
    for (int b = 3; b >= 0; --b) w += char('0' + (i >> b & 1));
    block.push_back(w);
  }
  CHECK(f.member(cfg(6, block)));
  // a full half holds 32 > 10
  std::vector<std::string> full_half;
  for (int i = 0; i < 32; ++i) {
    std::string w = "1";
    for (int b = 4; b >= 0; --b) w += char('0' + (i >> b & 1));
    full_half.push_back(w);
  }
  CHECK(!f.member(cfg(6, full_half)));

  check_heredity_bits(f, 6, 60, 21);

  CHECK_FAILS(FremlinFamily(SlowFunc::sqrt_ceil, 3, 3), Errc::precondition);
  CHECK_FAILS(FremlinFamily(SlowFunc::sqrt_ceil, 2, 3), Errc::precondition);
}

static void test_fremlin_bound() {
  FremlinFamily f(SlowFunc::sqrt_ceil, 6, 3);
  CHECK(f.certified_density_bound(1) == 1);
  CHECK(f.certified_density_bound(5) == 5);
  CHECK(f.certified_density_bound(6) == 3);
  CHECK(f.certified_density_bound(7) == 4);
  CHECK(f.certified_density_bound(19) == 10);
  CHECK(f.certified_density_bound(20) == 5);
  CHECK(f.certified_density_bound(71) == 18);
  CHECK(f.certified_density_bound(72) == 9);
  CHECK(f.certified_density_bound(271) == 34);
  CHECK_FAILS(f.certified_density_bound(272), Errc::precondition);
  CHECK_FAILS(f.certified_density_bound(0), Errc::invalid_argument);
  for (std::int64_t n = 1; n < 272; ++n)
    CHECK_MSG(f.certified_density_bound(n) >=
                  slow_func_value(SlowFunc::sqrt_ceil, n),
              "bound under f at n = " + std::to_string(n));
}

static void test_fremlin_density() {
  // levels 2, depth 4: caps 6, 10, 18; the cube has 16 points
  FremlinFamily f(SlowFunc::sqrt_ceil, 4, 2);
  CHECK(f.caps() == (std::vector<std::int64_t>{6, 10, 18}));
  Ground g(PointConfig::full_cube(4));
  std::vector<std::int64_t> want = {1, 2, 3, 4, 5, 6, 6, 6,
                                    6, 6, 6, 6, 7, 7, 8, 8};
  for (std::size_t n = 1; n <= 16; ++n) {
    DensityValue dv = density(f, g, n);
    CHECK_MSG(dv.value == want[n - 1],
              "fremlin density at n = " + std::to_string(n));
    CHECK(dv.mode == DensityMode::exact);
    if (n < static_cast<std::size_t>(f.thresholds().values.back()))
      CHECK(dv.value >= f.certified_density_bound(static_cast<std::int64_t>(n)));
  }
  // the certified bound is tight at the full cube: 8 = ceil(16/2)
  CHECK(f.certified_density_bound(16) == 8);

  for (std::size_t n = 1; n <= 4; ++n) {
    long o = oracle::density<BitNode>(bits_member(f, 4),
                                      PointConfig::full_cube(4).points, n);
    CHECK(o == want[n - 1]);
  }

  // search witnesses agree with the subset-sweep oracle, least list included
  Rng rng(31);
  for (std::size_t t = 0; t < 100; ++t) {
    PointConfig c = gen::random_config(rng, 4, 2 + rng.below(11));
    auto res = max_member_within(f, c);
    CHECK(res.exact);
    std::vector<BitNode> want_w =
        oracle::max_member<BitNode>(bits_member(f, 4), c.points);
    CHECK_MSG(res.witness.points == want_w, "classed witness mismatch");
    CHECK(has_member_at_least(f, c, res.witness.size()));
    CHECK(!has_member_at_least(f, c, res.witness.size() + 1));
  }
}

// ---------------------------------------------------------------- half space

static void test_half_space() {
  HalfSpaceFamily f(3);
  CHECK(f.member(cfg(3, {})));
  CHECK(f.member(cfg(3, {"100"})));
  CHECK(f.member(cfg(3, {"000", "001", "010"})));
  CHECK(!f.member(cfg(3, {"000", "100"})));
  CHECK(!f.member(cfg(3, {"011", "100", "101"})));
  check_heredity_bits(f, 3, 40, 5);

  Ground g(PointConfig::full_cube(3));
  std::vector<std::int64_t> want = {1, 1, 1, 1, 1, 2, 3, 4};
  for (std::size_t n = 1; n <= 8; ++n) {
    DensityValue dv = density(f, g, n);
    CHECK_MSG(dv.value == want[n - 1],
              "half-space density at n = " + std::to_string(n));
    if (n <= 4) {
      long o = oracle::density<BitNode>(bits_member(f, 3),
                                        PointConfig::full_cube(3).points, n);
      CHECK(o == want[n - 1]);
    }
  }
  // minimizer for n = 4: the first class split reaching the minimum keeps
  // one point in the '0' half and three in the '1' half
  DensityValue dv = density(f, g, 4);
  CHECK(std::get<PointConfig>(dv.minimizer) ==
        cfg(3, {"000", "100", "101", "110"}));
  CHECK(std::get<PointConfig>(dv.minimizer_member) == cfg(3, {"000"}));
}

// ---------------------------------------------------------------- monotone meets

static void test_strongly_monotone_membership() {
  StronglyMonotoneFamily f(6);
  CHECK(f.member(cfg(3, {})));
  CHECK(f.member(cfg(3, {"010"})));
  CHECK(f.member(cfg(3, {"000", "111"})));
  CHECK(f.member(cfg(3, {"000", "010", "011"})));  // meets 1 < 2
  CHECK(f.member(cfg(3, {"000", "001", "011", "111"})));  // meets 2 > 1 > 0
  CHECK(!f.member(cfg(3, {"000", "010", "100", "110"})));  // meets 1, 0, 1
  CHECK(f.has_monotone_meets());

  // any three points are a member: consecutive meets never tie
  Rng rng(77);
  for (std::size_t t = 0; t < 200; ++t) {
    PointConfig c = gen::random_config(rng, 2 + rng.below(5), 3);
    CHECK_MSG(f.member_points(c.depth, c.points), "3-point set rejected");
  }
}

static void test_strongly_monotone_search() {
  StronglyMonotoneFamily f(6);
  // frozen witness: the least 3-subset of the depth-2 cube works
  auto r = max_member_within(f, PointConfig::full_cube(2));
  CHECK(r.witness == cfg(2, {"00", "01", "10"}));
  // the full depth-6 cube carries a chain of 7 points and no more
  auto r6 = max_member_within(f, PointConfig::full_cube(6));
  CHECK(r6.witness.size() == 7);
  CHECK(f.member(r6.witness));

  Rng rng(13);
  for (std::size_t t = 0; t < 150; ++t) {
    std::size_t depth = 3 + rng.below(4);
    std::size_t n = std::min<std::size_t>(2 + rng.below(9),
                                          std::size_t(1) << depth);
    PointConfig c = gen::random_config(rng, depth, n);
    auto res = max_member_within(f, c);
    std::vector<BitNode> want =
        oracle::max_member<BitNode>(bits_member(f, depth), c.points);
    CHECK_MSG(res.witness.points == want, "chain witness mismatch");
  }
  check_heredity_bits(f, 5, 40, 3);
}

static void test_strongly_monotone_density() {
  StronglyMonotoneFamily f(6);
  Ground g(PointConfig::full_cube(6));
  DensityValue d4 = density(f, g, 4);
  CHECK(d4.value == 3);
  CHECK(max_member_within(f, std::get<PointConfig>(d4.minimizer))
            .witness.size() == 3);
  DensityValue d64 = density(f, g, 64);
  CHECK(d64.value == 7);
}

// ---------------------------------------------------------------- explicit lists

static void test_explicit_family() {
  std::vector<PointConfig> members = {cfg(2, {"00", "01"}), cfg(2, {"01", "10"})};
  ExplicitFamily f(2, members, "pair-list");
  CHECK(f.member_count() == 6);  // {}, {00}, {01}, {10}, {00,01}, {01,10}
  CHECK(f.added_by_closure() == 4);
  CHECK(f.member(cfg(2, {})));
  CHECK(f.member(cfg(2, {"01", "10"})));
  CHECK(!f.member(cfg(2, {"00", "10"})));
  CHECK(!f.member(cfg(2, {"11"})));
  CHECK(f.determination_depth() == std::optional<std::size_t>(2));

  // deeper queries are answered on truncations
  CHECK(f.member(cfg(4, {"0000", "0111"})));
  CHECK(f.member(cfg(4, {"0000", "0001"})));  // both truncate to 00
  CHECK(!f.member(cfg(4, {"0000", "1011"})));
  CHECK_FAILS(f.member(cfg(1, {"0"})), Errc::precondition);

  // closing the closure adds nothing
  ExplicitFamily g(2, f.members_sorted(), "again");
  CHECK(g.member_count() == 6);
  CHECK(g.added_by_closure() == 0);

  ExplicitFamily e(3, {}, "empty");
  CHECK(e.member_count() == 1);
  CHECK(e.member(cfg(3, {})));
  CHECK(!e.member(cfg(3, {"000"})));

  CHECK_FAILS(ExplicitFamily(3, {cfg(2, {"00"})}, "x"), Errc::invalid_argument);

  // search agrees with the oracle on the list family
  Rng rng(9);
  for (std::size_t t = 0; t < 40; ++t) {
    PointConfig c = gen::random_config(rng, 2, 1 + rng.below(4));
    auto res = max_member_within(f, c);
    std::vector<BitNode> want =
        oracle::max_member<BitNode>(bits_member(f, 2), c.points);
    CHECK(res.witness.points == want);
  }
}

// ---------------------------------------------------------------- factory

static void test_make_family() {
  std::vector<std::string> specs = {
      "schreier",
      "all:kind=nat",
      "all:kind=bits,depth=6",
      "size-cap:3,kind=nat",
      "size-cap:2,kind=bits,depth=5",
      "fremlin:f=sqrt,levels=2,depth=6",
      "fremlin:f=log2,levels=1,depth=4",
      "fremlin:f=sqrt,levels=2,depth=8,assume-monotone",
      "half-space:depth=4",
      "strongly-monotone:depth=6",
  };
  for (const std::string& s : specs) {
    auto fam = make_family(s);
    CHECK_MSG(fam->name() == s, "name round trip for " + s);
    CHECK(make_family(fam->name())->name() == s);
  }
  CHECK(make_family("all")->name() == "all:kind=bits,depth=8");
  CHECK(make_family("fremlin")->name() == "fremlin:f=sqrt,levels=2,depth=8");
  CHECK(make_family("half-space")->name() == "half-space:depth=8");

  CHECK_FAILS(make_family(""), Errc::invalid_argument);
  CHECK_FAILS(make_family("schreier:depth=3"), Errc::invalid_argument);
  CHECK_FAILS(make_family("size-cap"), Errc::invalid_argument);
  CHECK_FAILS(make_family("size-cap:abc"), Errc::parse_error);
  CHECK_FAILS(make_family("size-cap:0"), Errc::invalid_argument);
  CHECK_FAILS(make_family("all:kind=qux"), Errc::parse_error);
  CHECK_FAILS(make_family("fremlin:f=cube"), Errc::invalid_argument);
  CHECK_FAILS(make_family("fremlin:wat"), Errc::invalid_argument);
  CHECK_FAILS(make_family("half-space:depth=x"), Errc::parse_error);
  CHECK_FAILS(make_family("half-space:foo=1"), Errc::invalid_argument);
  CHECK_FAILS(make_family("no-such-family-file.json"), Errc::parse_error);
}

// ---------------------------------------------------------------- budgets

static void test_search_budget() {
  SizeCapFamily f(3, GroundKind::nat, 0);
  NatSet c = NatSet::range(0, 10);
  auto res = max_member_within(f, c, SearchBudget{2});
  CHECK(!res.exact);
  CHECK(res.queries == 2);
  CHECK(max_member_within(f, c).exact);
  CHECK(has_member_at_least(f, c, 0, SearchBudget{1}));
  CHECK(has_member_at_least(f, c, 2));
  CHECK(!has_member_at_least(f, c, 4));
  CHECK_FAILS(has_member_at_least(f, c, 4, SearchBudget{2}),
              Errc::budget_exceeded);

  SizeCapFamily fb(3, GroundKind::bits, 5);
  auto rb = max_member_within(fb, PointConfig::full_cube(5), SearchBudget{2});
  CHECK(!rb.exact);
  CHECK_FAILS(
      has_member_at_least(fb, PointConfig::full_cube(5), 4, SearchBudget{2}),
      Errc::budget_exceeded);
}

// ---------------------------------------------------------------- density modes

static void test_density_modes() {
  SchreierFamily f;
  Ground g(NatSet::range(0, 12));
  DensityValue exact = density(f, g, 4);
  CHECK(exact.value == 2);

  DensityOptions opt;
  opt.sampled = true;
  opt.samples = 50;
  opt.seed = 7;
  DensityValue s1 = density(f, g, 4, opt);
  DensityValue s2 = density(f, g, 4, opt);
  CHECK(s1.mode == DensityMode::upper_bound);
  CHECK(s1.value >= exact.value);
  CHECK(s1.value == s2.value);
  CHECK(std::get<NatSet>(s1.minimizer) == std::get<NatSet>(s2.minimizer));

  DensityOptions tiny;
  tiny.max_configs = 100;
  CHECK_FAILS(density(f, Ground(NatSet::range(0, 20)), 10, tiny),
              Errc::budget_exceeded);

  // per-configuration budget exhaustion surfaces as an error too
  DensityOptions starved;
  starved.budget = SearchBudget{3};
  CHECK_FAILS(density(f, g, 4, starved), Errc::budget_exceeded);
}

static void test_filling_checks() {
  SchreierFamily f;
  Ground g(NatSet::range(0, 12));
  FillingReport ok = eps_filling_check(f, g, Rat(1, 2), 6);
  CHECK(ok.filling);
  CHECK(ok.heredity_sampled);
  CHECK(ok.points.size() == 6);
  for (const FillingPoint& p : ok.points) {
    CHECK(p.value == static_cast<std::int64_t>((p.n + 1) / 2));
    CHECK(p.ok);
  }

  FillingReport bad = eps_filling_check(f, g, Rat(2, 3), 3);
  CHECK(!bad.filling);
  CHECK(bad.points[0].ok);
  CHECK(!bad.points[1].ok);  // d(2)/2 = 1/2 < 2/3

  TargetReport t1 =
      target_filling_check(f, Ground(NatSet::range(0, 10)), {1, 1, 2, 2, 3});
  CHECK(t1.ok);
  CHECK(t1.points.size() == 5);
  for (const TargetPoint& p : t1.points) CHECK(p.exhaustive);

  TargetReport t2 = target_filling_check(f, Ground(NatSet::range(0, 10)), {1, 2});
  CHECK(!t2.ok);
  CHECK(t2.points[0].ok);
  CHECK(!t2.points[1].ok);
  CHECK(t2.points[1].counterexample.has_value());
  CHECK(std::get<NatSet>(*t2.points[1].counterexample) == nats({0, 1}));
}

static void test_star_probe() {
  auto all = make_family("all:kind=bits,depth=6");
  Ground g(PointConfig::full_cube(6));
  auto pts = density_star_probe(*all, g, 5);
  CHECK(pts.size() == 4);  // n = 2..5, sizes 4..32
  for (const StarProbePoint& p : pts) {
    CHECK(p.mode == DensityMode::exact);
    CHECK(p.density == static_cast<std::int64_t>(std::size_t(1) << p.n));
    double expect = static_cast<double>(p.n) / std::log2(double(p.n));
    CHECK(std::fabs(p.value - expect) < 1e-12);
  }

  StronglyMonotoneFamily sm(4);
  auto smp = density_star_probe(sm, Ground(PointConfig::full_cube(4)), 2);
  CHECK(smp.size() == 1);
  CHECK(smp[0].density == 3);
  CHECK(std::fabs(smp[0].value - std::log2(3.0)) < 1e-12);

  // beyond the exact cap the probe falls back to sampling
  SchreierFamily sf;
  DensityOptions opt;
  opt.samples = 60;
  auto sp = density_star_probe(sf, Ground(NatSet::range(0, 300)), 3, opt);
  CHECK(sp.size() == 2);
  CHECK(sp[0].mode == DensityMode::upper_bound);  // C(301,4) is past the cap
  CHECK(sp[0].density >= 1 && sp[0].density <= 4);
  CHECK(sp[1].density >= 1 && sp[1].density <= 8);
  auto sp2 = density_star_probe(sf, Ground(NatSet::range(0, 300)), 3, opt);
  CHECK(sp[0].density == sp2[0].density && sp[1].density == sp2[1].density);

  CHECK_FAILS(density_star_probe(sf, Ground(NatSet::range(0, 300)), 1),
              Errc::invalid_argument);
}

static void test_half_filling_subset() {
  SchreierFamily f;
  auto b = half_filling_subset(f, Ground(NatSet::range(0, 20)), 4);
  CHECK(b.has_value());
  CHECK(std::get<NatSet>(*b) == nats({0, 1, 2, 3}));

  HalfSpaceFamily h(3);
  auto bh = half_filling_subset(h, Ground(PointConfig::full_cube(3)), 4);
  CHECK(bh.has_value());
  CHECK(std::get<PointConfig>(*bh) == cfg(3, {"000", "001", "010", "011"}));

  SizeCapFamily one(1, GroundKind::nat, 0);
  CHECK(!half_filling_subset(one, Ground(NatSet::range(0, 5)), 3).has_value());
  CHECK(half_filling_subset(one, Ground(NatSet::range(0, 5)), 2).has_value());

  CHECK_FAILS(half_filling_subset(f, Ground(NatSet::range(0, 20)), 9),
              Errc::precondition);
  CHECK_FAILS(half_filling_subset(f, Ground(NatSet::range(0, 2)), 4),
              Errc::invalid_argument);
}

static void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

static void test_family_file_loading() {
  const std::string good = "/tmp/fillfam_family_good.json";
  write_file(good,
             "{\"depth\": 4, \"members\": [[\"0101\", \"0110\"], "
             "[\"1000\"]]}\n");
  std::unique_ptr<Family> fam = load_family_file(good);
  CHECK(fam->kind() == GroundKind::bits);
  CHECK(fam->ground_depth() == 4);
  CHECK(fam->member(cfg(4, {"0101", "0110"})));
  CHECK(fam->member(cfg(4, {"0110"})));
  CHECK(fam->member(cfg(4, {})));
  CHECK(!fam->member(cfg(4, {"0101", "1000"})));
  auto* exp = dynamic_cast<ExplicitFamily*>(fam.get());
  CHECK(exp != nullptr);
  CHECK(exp->member_count() == 5);
  CHECK(exp->added_by_closure() == 3);

  const std::string mixed = "/tmp/fillfam_family_mixed.json";
  write_file(mixed, "{\"depth\": 4, \"members\": [[\"010\"]]}");
  CHECK_FAILS(load_family_file(mixed), Errc::invalid_argument);

  const std::string empty = "/tmp/fillfam_family_empty.json";
  write_file(empty, "{\"depth\": 3, \"members\": []}");
  std::unique_ptr<Family> just_empty = load_family_file(empty);
  CHECK(just_empty->member(cfg(3, {})));
  CHECK(!just_empty->member(cfg(3, {"000"})));
  CHECK(dynamic_cast<ExplicitFamily*>(just_empty.get())->member_count() == 1);

  CHECK_FAILS(load_family_file("/tmp/fillfam_no_such_file.json"),
              Errc::parse_error);

  const std::string broken = "/tmp/fillfam_family_broken.json";
  write_file(broken, "{\"depth\": 4, \"members\": [[\"0101\"");
  CHECK_FAILS(load_family_file(broken), Errc::parse_error);

  const std::string chars = "/tmp/fillfam_family_chars.json";
  write_file(chars, "{\"depth\": 4, \"members\": [[\"01a1\"]]}");
  CHECK_FAILS(load_family_file(chars), Errc::parse_error);

  const std::string nodepth = "/tmp/fillfam_family_nodepth.json";
  write_file(nodepth, "{\"members\": []}");
  CHECK_FAILS(load_family_file(nodepth), Errc::parse_error);

  // a bare path handed to the registry reaches the loader
  std::unique_ptr<Family> via_spec = make_family(good);
  CHECK(via_spec->member(cfg(4, {"0101", "0110"})));
}

int main() {
  RUN_TEST(test_natset);
  RUN_TEST(test_schreier_membership);
  RUN_TEST(test_schreier_search);
  RUN_TEST(test_schreier_density);
  RUN_TEST(test_all_and_size_cap);
  RUN_TEST(test_thresholds);
  RUN_TEST(test_fremlin_membership);
  RUN_TEST(test_fremlin_bound);
  RUN_TEST(test_fremlin_density);
  RUN_TEST(test_half_space);
  RUN_TEST(test_strongly_monotone_membership);
  RUN_TEST(test_strongly_monotone_search);
  RUN_TEST(test_strongly_monotone_density);
  RUN_TEST(test_explicit_family);
  RUN_TEST(test_make_family);
  RUN_TEST(test_search_budget);
  RUN_TEST(test_density_modes);
  RUN_TEST(test_filling_checks);
  RUN_TEST(test_star_probe);
  RUN_TEST(test_half_filling_subset);
  RUN_TEST(test_family_file_loading);
  return test_summary();
}
