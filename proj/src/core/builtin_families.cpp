#include "fillfam/builtin_families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

#include "fillfam/errors.hpp"

namespace fillfam {

namespace {

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}

}  // namespace

bool SchreierFamily::member_nat(const std::vector<std::int64_t>& pts) const {
  if (pts.empty()) return true;
  return static_cast<std::int64_t>(pts.size()) <= pts.front() + 1;
}

std::string AllFamily::name() const {
  if (kind_ == GroundKind::nat) return "all:kind=nat";
  return "all:kind=bits,depth=" + std::to_string(depth_);
}

bool AllFamily::member_points(std::size_t, const std::vector<BitNode>&) const {
  if (kind_ != GroundKind::bits) return Family::member_points(0, {});
  return true;
}

bool AllFamily::member_nat(const std::vector<std::int64_t>&) const {
  if (kind_ != GroundKind::nat) return Family::member_nat({});
  return true;
}

std::size_t AllFamily::ground_depth() const {
  if (kind_ != GroundKind::bits) return Family::ground_depth();
  return depth_;
}

std::optional<std::size_t> AllFamily::determination_depth() const {
  if (kind_ == GroundKind::bits) return 0;
  return std::nullopt;
}

SizeCapFamily::SizeCapFamily(std::size_t cap, GroundKind kind,
                             std::size_t depth)
    : cap_(cap), kind_(kind), depth_(depth) {
  if (cap < 1)
    fail(Errc::invalid_argument, "size cap must be at least 1");
}

std::string SizeCapFamily::name() const {
  std::string s = "size-cap:" + std::to_string(cap_);
  if (kind_ == GroundKind::nat) return s + ",kind=nat";
  return s + ",kind=bits,depth=" + std::to_string(depth_);
}

bool SizeCapFamily::member_points(std::size_t,
                                  const std::vector<BitNode>& pts) const {
  if (kind_ != GroundKind::bits) return Family::member_points(0, {});
  return pts.size() <= cap_;
}

bool SizeCapFamily::member_nat(const std::vector<std::int64_t>& pts) const {
  if (kind_ != GroundKind::nat) return Family::member_nat({});
  return pts.size() <= cap_;
}

std::size_t SizeCapFamily::ground_depth() const {
  if (kind_ != GroundKind::bits) return Family::ground_depth();
  return depth_;
}

std::optional<std::size_t> SizeCapFamily::determination_depth() const {
  if (kind_ == GroundKind::bits) return 0;
  return std::nullopt;
}

std::int64_t slow_func_value(SlowFunc f, std::int64_t i) {
  if (i < 1) fail(Errc::invalid_argument, "size function needs i >= 1");
  switch (f) {
    case SlowFunc::one:
      return 1;
    case SlowFunc::sqrt_ceil: {
      std::int64_t r = isqrt(i);
      return r * r < i ? r + 1 : r;
    }
    case SlowFunc::log2_ceil:
      return std::bit_width(static_cast<std::uint64_t>(i));
  }
  fail(Errc::internal, "unhandled size function");
}

const char* slow_func_name(SlowFunc f) {
  switch (f) {
    case SlowFunc::one:
      return "one";
    case SlowFunc::sqrt_ceil:
      return "sqrt";
    case SlowFunc::log2_ceil:
      return "log2";
  }
  return "?";
}

SlowFunc slow_func_parse(const std::string& s) {
  if (s == "one") return SlowFunc::one;
  if (s == "sqrt") return SlowFunc::sqrt_ceil;
  if (s == "log2") return SlowFunc::log2_ceil;
  fail(Errc::invalid_argument, "unknown size function '" + s +
                                   "' (expected one, sqrt or log2)");
}

const char* threshold_cert_name(ThresholdCert c) {
  switch (c) {
    case ThresholdCert::monotone_declared:
      return "monotone-declared";
    case ThresholdCert::horizon:
      return "horizon";
    case ThresholdCert::envelope:
      return "envelope";
  }
  return "?";
}

namespace {

// f(i)/i never rises again once it passes under a power-of-two bound: true
// by inspection for f == 1, and for the bit-length function because the
// ratio is non-increasing inside each power-of-two block and across block
// boundaries (m+1)/2^m <= m/(2^m - 1).
bool ratio_provably_monotone(SlowFunc f) {
  return f == SlowFunc::one || f == SlowFunc::log2_ceil;
}

// Whether a non-increasing envelope of f(i)/i is at most 2^-k at i = h,
// which settles every index beyond h.  For the square root the envelope is
// (sqrt(i)+1)/i; for the others the ratio itself serves.
bool envelope_below(SlowFunc f, std::size_t k, std::int64_t h) {
  switch (f) {
    case SlowFunc::one:
      return h >= (std::int64_t(1) << k);
    case SlowFunc::log2_ceil:
      return (slow_func_value(f, h) << k) <= h;
    case SlowFunc::sqrt_ceil:
      return ((isqrt(h) + 2) << k) <= h;
  }
  fail(Errc::internal, "unhandled size function");
}

void check_func_sane(SlowFunc f, std::int64_t i) {
  std::int64_t v = slow_func_value(f, i);
  if (v < 1 || v > i)
    fail(Errc::invalid_argument,
         std::string("size function ") + slow_func_name(f) +
             " leaves 1 <= f(i) <= i at i = " + std::to_string(i));
}

}  // namespace

ThresholdSequence slow_thresholds(SlowFunc f, std::size_t count,
                                  std::int64_t horizon, bool monotone_ratio) {
  if (count > 12)
    fail(Errc::invalid_argument,
         "threshold scan supports at most 12 levels, got " +
             std::to_string(count));
  if (horizon < 0) fail(Errc::invalid_argument, "negative horizon");

  ThresholdSequence out;
  out.func = f;
  out.values = {1};
  out.horizon = 1;
  bool first_dip_valid = monotone_ratio || ratio_provably_monotone(f);
  bool all_enveloped = true;

  for (std::size_t k = 1; k <= count; ++k) {
    std::int64_t prev = out.values.back();
    std::int64_t nk;
    if (first_dip_valid) {
      // ratio never rises again: the first fitting index is final
      std::int64_t cap = horizon > 0 ? horizon : (std::int64_t(1) << 26);
      std::int64_t i = prev + 1;
      while (i <= cap && (slow_func_value(f, i) << k) > i) {
        check_func_sane(f, i);
        ++i;
      }
      if (i > cap)
        fail(Errc::unattainable,
             "threshold " + std::to_string(k) + " not reached by index " +
                 std::to_string(cap));
      nk = i;
      out.horizon = std::max(out.horizon, i);
    } else {
      std::int64_t h = horizon;
      if (h == 0) {
        h = 64;
        while (!envelope_below(f, k, h)) h *= 2;
      } else if (!envelope_below(f, k, h)) {
        all_enveloped = false;
      }
      std::int64_t last_violation = 0;
      for (std::int64_t i = 1; i <= h; ++i) {
        check_func_sane(f, i);
        if ((slow_func_value(f, i) << k) > i) last_violation = i;
      }
      if (last_violation >= h)
        fail(Errc::unattainable,
             "ratio still above 2^-" + std::to_string(k) + " at the horizon " +
                 std::to_string(h));
      nk = std::max(prev + 1, last_violation + 1);
      out.horizon = std::max(out.horizon, h);
    }
    out.values.push_back(nk);
  }

  if (first_dip_valid)
    out.cert = monotone_ratio ? ThresholdCert::monotone_declared
                              : ThresholdCert::envelope;
  else
    out.cert = all_enveloped ? ThresholdCert::envelope : ThresholdCert::horizon;
  return out;
}

bool verify_thresholds(const ThresholdSequence& t) {
  if (t.values.empty() || t.values.front() != 1) return false;
  for (std::size_t i = 1; i < t.values.size(); ++i)
    if (t.values[i] <= t.values[i - 1]) return false;
  std::int64_t horizon =
      t.cert == ThresholdCert::horizon ? t.horizon : 0;
  bool monotone = t.cert == ThresholdCert::monotone_declared;
  ThresholdSequence redo =
      slow_thresholds(t.func, t.values.size() - 1, horizon, monotone);
  return redo.values == t.values;
}

FremlinFamily::FremlinFamily(SlowFunc f, std::size_t depth, std::size_t levels,
                             bool monotone_ratio)
    : depth_(depth), levels_(levels) {
  if (depth <= levels)
    fail(Errc::precondition,
         "cube depth " + std::to_string(depth) +
             " leaves no room under level " + std::to_string(levels));
  thresholds_ = slow_thresholds(f, levels + 1, 0, monotone_ratio);
  for (std::size_t k = 0; k <= levels; ++k) {
    std::int64_t cap =
        ceil_div(thresholds_.values[k + 1], std::int64_t(1) << k);
    caps_.push_back(cap);
    max_caps_.push_back(std::max(cap, max_caps_.empty() ? cap
                                                        : max_caps_.back()));
  }
}

std::string FremlinFamily::name() const {
  std::string s = std::string("fremlin:f=") + slow_func_name(thresholds_.func) +
                  ",levels=" + std::to_string(levels_) +
                  ",depth=" + std::to_string(depth_);
  if (thresholds_.cert == ThresholdCert::monotone_declared)
    s += ",assume-monotone";
  return s;
}

bool FremlinFamily::member_points(std::size_t,
                                  const std::vector<BitNode>& pts) const {
  if (pts.empty()) return true;
  std::size_t shared = meet_length(pts.front(), pts.back());
  std::size_t k = std::min(levels_, shared);
  return static_cast<std::int64_t>(pts.size()) <= max_caps_[k];
}

std::int64_t FremlinFamily::certified_density_bound(std::int64_t n) const {
  if (n < 1) fail(Errc::invalid_argument, "density bound needs n >= 1");
  const std::vector<std::int64_t>& nk = thresholds_.values;
  if (n >= nk.back())
    fail(Errc::precondition,
         "bound certified only for n < " + std::to_string(nk.back()) +
             "; got n = " + std::to_string(n));
  std::size_t k = 0;
  while (k + 1 < nk.size() && nk[k + 1] <= n) ++k;
  return ceil_div(n, std::int64_t(1) << k);
}

std::string HalfSpaceFamily::name() const {
  return "half-space:depth=" + std::to_string(depth_);
}

bool HalfSpaceFamily::member_points(std::size_t,
                                    const std::vector<BitNode>& pts) const {
  if (pts.size() <= 1) return true;
  // sorted, so only the last point can leave the '0' half
  return pts.back().bit(0) == 0;
}

std::string StronglyMonotoneFamily::name() const {
  return "strongly-monotone:depth=" + std::to_string(depth_);
}

bool StronglyMonotoneFamily::member_points(
    std::size_t, const std::vector<BitNode>& pts) const {
  if (pts.size() <= 2) return true;
  bool increasing = true, decreasing = true;
  std::size_t prev = meet_length(pts[0], pts[1]);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    std::size_t cur = meet_length(pts[i], pts[i + 1]);
    if (cur <= prev) increasing = false;
    if (cur >= prev) decreasing = false;
    prev = cur;
  }
  return increasing || decreasing;
}

ExplicitFamily::ExplicitFamily(std::size_t depth,
                               const std::vector<PointConfig>& members,
                               std::string label)
    : depth_(depth), label_(std::move(label)) {
  std::set<std::vector<std::string>> input;
  for (const PointConfig& m : members) {
    if (m.depth != depth_ && !m.empty())
      fail(Errc::invalid_argument,
           "member depth " + std::to_string(m.depth) +
               " differs from family depth " + std::to_string(depth_));
    if (m.size() > 20)
      fail(Errc::invalid_argument,
           "explicit member of " + std::to_string(m.size()) +
               " points; closure supports at most 20");
    std::vector<std::string> words;
    for (const BitNode& p : m.points) words.push_back(p.str());
    input.insert(std::move(words));
  }

  for (const std::vector<std::string>& words : input) {
    std::size_t n = words.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i)) sub.push_back(words[i]);
      members_.insert(std::move(sub));
    }
  }
  members_.insert(std::vector<std::string>{});  // the empty set always belongs
  added_by_closure_ = members_.size() - input.size();
}

bool ExplicitFamily::member_points(std::size_t depth,
                                   const std::vector<BitNode>& pts) const {
  if (depth < depth_)
    fail(Errc::precondition,
         "query depth " + std::to_string(depth) + " below family depth " +
             std::to_string(depth_));
  std::set<std::string> trunc;
  for (const BitNode& p : pts) trunc.insert(p.str().substr(0, depth_));
  return members_.count(
             std::vector<std::string>(trunc.begin(), trunc.end())) > 0;
}

std::vector<PointConfig> ExplicitFamily::members_sorted() const {
  std::vector<PointConfig> out;
  for (const std::vector<std::string>& words : members_) {
    std::vector<BitNode> pts;
    for (const std::string& w : words) pts.emplace_back(w);
    out.push_back(PointConfig::make(depth_, std::move(pts)));
  }
  return out;
}

// ---------------------------------------------------------------- factory

std::unique_ptr<Family> load_family_file(const std::string& path);  // json_io

namespace {

struct SpecParams {
  std::map<std::string, std::string> kv;
  std::vector<std::string> bare;
};

SpecParams parse_params(const std::string& s) {
  SpecParams p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) {
      std::size_t eq = tok.find('=');
      if (eq == std::string::npos)
        p.bare.push_back(tok);
      else
        p.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return p;
}

std::size_t parse_size(const std::string& what, const std::string& v) {
  try {
    std::size_t used = 0;
    long long n = std::stoll(v, &used);
    if (used != v.size() || n < 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    fail(Errc::parse_error, "bad " + what + " value '" + v + "'");
  }
}

GroundKind parse_kind(const std::string& v) {
  if (v == "bits") return GroundKind::bits;
  if (v == "nat") return GroundKind::nat;
  fail(Errc::parse_error, "bad kind '" + v + "' (expected bits or nat)");
}

void reject_unknown(const SpecParams& p,
                    std::initializer_list<const char*> known) {
  for (const auto& [k, v] : p.kv) {
    bool ok = false;
    for (const char* name : known)
      if (k == name) ok = true;
    if (!ok)
      fail(Errc::invalid_argument, "unknown family parameter '" + k + "'");
  }
}

}  // namespace

std::unique_ptr<Family> make_family(const std::string& spec) {
  if (spec.empty()) fail(Errc::invalid_argument, "empty family spec");
  std::size_t colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  SpecParams p = colon == std::string::npos
                     ? SpecParams{}
                     : parse_params(spec.substr(colon + 1));

  auto depth_or = [&](std::size_t dflt) {
    auto it = p.kv.find("depth");
    return it == p.kv.end() ? dflt : parse_size("depth", it->second);
  };

  if (head == "schreier") {
    reject_unknown(p, {});
    if (!p.bare.empty())
      fail(Errc::invalid_argument, "schreier takes no parameters");
    return std::make_unique<SchreierFamily>();
  }
  if (head == "all") {
    reject_unknown(p, {"kind", "depth"});
    GroundKind kind = p.kv.count("kind") ? parse_kind(p.kv.at("kind"))
                                         : GroundKind::bits;
    return std::make_unique<AllFamily>(kind, depth_or(8));
  }
  if (head == "size-cap") {
    reject_unknown(p, {"kind", "depth"});
    if (p.bare.size() != 1)
      fail(Errc::invalid_argument, "size-cap needs a cap, e.g. size-cap:2");
    std::size_t cap = parse_size("cap", p.bare[0]);
    GroundKind kind = p.kv.count("kind") ? parse_kind(p.kv.at("kind"))
                                         : GroundKind::bits;
    return std::make_unique<SizeCapFamily>(cap, kind, depth_or(8));
  }
  if (head == "fremlin") {
    reject_unknown(p, {"f", "levels", "depth"});
    SlowFunc f = p.kv.count("f") ? slow_func_parse(p.kv.at("f"))
                                 : SlowFunc::sqrt_ceil;
    std::size_t levels =
        p.kv.count("levels") ? parse_size("levels", p.kv.at("levels")) : 2;
    bool monotone = false;
    for (const std::string& b : p.bare) {
      if (b == "assume-monotone")
        monotone = true;
      else
        fail(Errc::invalid_argument, "unknown fremlin flag '" + b + "'");
    }
    return std::make_unique<FremlinFamily>(f, depth_or(8), levels, monotone);
  }
  if (head == "half-space") {
    reject_unknown(p, {"depth"});
    return std::make_unique<HalfSpaceFamily>(depth_or(8));
  }
  if (head == "strongly-monotone") {
    reject_unknown(p, {"depth"});
    return std::make_unique<StronglyMonotoneFamily>(depth_or(8));
  }
  return load_family_file(spec);
}

}  // namespace fillfam
