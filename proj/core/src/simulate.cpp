#include "gca/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gca/debruijn.hpp"
#include "gca/decide.hpp"
#include "gca/error.hpp"
#include "gca/io.hpp"
#include "gca/limits.hpp"

namespace gca {

using nlohmann::json;

namespace {

// p lies strictly beyond q in the escape direction of `side`.
bool beyond(FrontSide side, std::optional<long long> p, long long q) {
  if (!p) return false;
  return side == FrontSide::Left ? *p > q : *p < q;
}

json opt_json(const std::optional<long long>& v) { return v ? json(*v) : json(nullptr); }

// Iterates of one configuration in both time directions, computed on demand.
class Orbit {
 public:
  Orbit(const Dynamics& d, FrontSide side, Configuration c) : d_(d), side_(side) {
    fwd_.push_back(c);
    bwd_.push_back(std::move(c));
  }

  const Configuration& at(long long n) {
    if (n >= 0) {
      while (static_cast<long long>(fwd_.size()) <= n) fwd_.push_back(apply(d_.forward, fwd_.back()));
      return fwd_[n];
    }
    if (!d_.backward) throw Error(ErrorKind::NotInjective, "backward iterates need an inverse");
    while (static_cast<long long>(bwd_.size()) <= -n)
      bwd_.push_back(apply(*d_.backward, bwd_.back()));
    return bwd_[-n];
  }

  std::optional<long long> pos_at(long long n) { return pos(side_, at(n)); }

  // F^{m - i} (lower) or F^{m + i} (upper) stays at or behind the position of
  // F^m for i = 0..kf.
  bool angular_at(long long m, int kf, bool lower) {
    auto p = pos_at(m);
    if (!p) return true;
    for (int i = 0; i <= kf; ++i)
      if (beyond(side_, pos_at(lower ? m - i : m + i), *p)) return false;
    return true;
  }

 private:
  const Dynamics& d_;
  FrontSide side_;
  std::deque<Configuration> fwd_, bwd_;
};

void require_decided_expansive(const Gca& f) {
  auto r = decide_expansive(f);
  if (r.combined.answer != Answer::Yes)
    throw Error(ErrorKind::InvalidArgument,
                "precondition: rule is not decided expansive (" + std::string(to_string(r.combined.answer)) + ")");
}

std::size_t germ_family_size(std::size_t n, int width) {
  std::size_t count = n - 1;
  for (int i = 1; i < width; ++i) {
    if (count > (std::size_t{1} << 40) / n) return count * n;
    count *= n;
  }
  return 2 * count;
}

}  // namespace

std::string to_string(FrontSide s) { return s == FrontSide::Left ? "left" : "right"; }

json FrontConfig::to_json() const {
  return {{"side", to_string(side)}, {"k", k}, {"config", config_to_json(config)}};
}

FrontConfig make_left_front(long long k, std::vector<Elem> core, std::vector<Elem> tail) {
  if (core.empty() || core.back() == FiniteGroup::identity())
    throw Error(ErrorKind::NotAFront, "symbol at position " + std::to_string(k) + " is e");
  if (tail.empty()) throw Error(ErrorKind::NotAFront, "empty tail period");
  long long start = k - static_cast<long long>(core.size()) + 1;
  auto c = Configuration::eventually_periodic(std::move(tail), std::move(core), start, {0});
  return {FrontSide::Left, k, std::move(c)};
}

FrontConfig make_right_front(long long k, std::vector<Elem> core, std::vector<Elem> tail) {
  if (core.empty() || core.front() == FiniteGroup::identity())
    throw Error(ErrorKind::NotAFront, "symbol at position " + std::to_string(k) + " is e");
  if (tail.empty()) throw Error(ErrorKind::NotAFront, "empty tail period");
  auto c = Configuration::eventually_periodic({0}, std::move(core), k, std::move(tail));
  return {FrontSide::Right, k, std::move(c)};
}

FrontConfig as_front(FrontSide side, const Configuration& c) {
  auto p = pos(side, c);
  if (!p) throw Error(ErrorKind::NotAFront, "configuration is not a " + to_string(side) + " front");
  return {side, *p, c};
}

std::optional<long long> pos(FrontSide side, const Configuration& c) {
  return side == FrontSide::Left ? c.rightmost_nonidentity() : c.leftmost_nonidentity();
}

Dynamics Dynamics::of(const Gca& f, bool want_inverse) {
  Dynamics d{f, std::nullopt};
  if (want_inverse) d.backward = invert(f);
  return d;
}

json FrontTrajectory::to_json() const {
  json j{{"side", to_string(side)}, {"k", k}};
  j["forward"] = json::array();
  for (auto& p : forward) j["forward"].push_back(opt_json(p));
  if (backward) {
    j["backward"] = json::array();
    for (auto& p : *backward) j["backward"].push_back(opt_json(p));
  }
  j["escapedAt"] = opt_json(escaped_at);
  return j;
}

FrontTrajectory trajectory(const Dynamics& d, const FrontConfig& c, int horizon) {
  if (horizon < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be non-negative");
  Orbit orbit(d, c.side, c.config);
  FrontTrajectory t{c.side, c.k, {}, std::nullopt, std::nullopt};
  for (int i = 0; i <= horizon; ++i) t.forward.push_back(orbit.pos_at(i));
  if (d.reversible()) {
    t.backward.emplace();
    for (int i = 0; i <= horizon; ++i) t.backward->push_back(orbit.pos_at(-i));
  }
  for (int n = 1; n <= horizon && !t.escaped_at; ++n) {
    if (beyond(c.side, t.forward[n], c.k))
      t.escaped_at = n;
    else if (t.backward && beyond(c.side, (*t.backward)[n], c.k))
      t.escaped_at = -n;
  }
  return t;
}

std::optional<int> escape_time(const Dynamics& d, const FrontConfig& c, int horizon) {
  Orbit orbit(d, c.side, c.config);
  for (int i = 1; i <= horizon; ++i) {
    if (beyond(c.side, orbit.pos_at(i), c.k)) return i;
    if (d.reversible() && beyond(c.side, orbit.pos_at(-i), c.k)) return i;
  }
  return std::nullopt;
}

std::vector<FrontConfig> front_germs(const FiniteGroup& g, FrontSide side, int width) {
  if (width < 1) throw Error(ErrorKind::InvalidArgument, "germ width must be at least 1");
  const std::size_t n = g.order();
  if (n < 2) return {};
  if (germ_family_size(n, width) / 2 > limits().germ_count)
    throw Error(ErrorKind::SizeLimit, "germ family exceeds germ_count");
  std::vector<FrontConfig> out;
  std::vector<Elem> free(width - 1, 0);
  for (;;) {
    for (Elem lead = 1; lead < n; ++lead) {
      std::vector<Elem> core;
      if (side == FrontSide::Left) {
        core = free;
        core.push_back(lead);
        out.push_back(make_left_front(0, std::move(core)));
      } else {
        core.push_back(lead);
        core.insert(core.end(), free.begin(), free.end());
        out.push_back(make_right_front(0, std::move(core)));
      }
    }
    // Odometer over the free cells, last cell fastest.
    int i = width - 2;
    while (i >= 0 && ++free[i] == n) free[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

int adaptive_germ_width(const FiniteGroup& g, int requested) {
  int w = std::max(requested, 1);
  while (w > 1 && germ_family_size(g.order(), w) > limits().germ_count) --w;
  return w;
}

KfEstimate estimate_kF(const Dynamics& d, int germ_width, int horizon) {
  KfEstimate est;
  est.germ_width = adaptive_germ_width(d.forward.group(), germ_width);
  est.horizon = horizon;
  int worst = 0;
  for (auto side : {FrontSide::Left, FrontSide::Right}) {
    for (auto& germ : front_germs(d.forward.group(), side, est.germ_width)) {
      ++est.germs;
      auto m = escape_time(d, germ, horizon);
      if (!m) {
        est.stuck = germ;
        return est;
      }
      worst = std::max(worst, *m);
    }
  }
  if (est.germs > 0) est.k = worst;
  return est;
}

bool is_lower_angular(const Dynamics& d, const FrontConfig& c, int kf) {
  Orbit orbit(d, c.side, c.config);
  return orbit.angular_at(0, kf, true);
}

bool is_upper_angular(const Dynamics& d, const FrontConfig& c, int kf) {
  Orbit orbit(d, c.side, c.config);
  return orbit.angular_at(0, kf, false);
}

json PropertyReport::to_json() const {
  return {{"property", property},
          {"fronts", fronts},
          {"checks", checks},
          {"ok", ok()},
          {"violations", violations}};
}

PropertyReport check_l1(const Gca& f, const std::vector<FrontConfig>& fronts, int kf, int horizon,
                        bool require_decided) {
  if (require_decided) require_decided_expansive(f);
  auto d = Dynamics::of(f);
  PropertyReport rep{"angular-progress", fronts.size(), 0, {}};
  const int reach = horizon - kf;
  for (auto& c : fronts) {
    Orbit orbit(d, c.side, c.config);
    // Upper angular: walking backward from any i < 0, some later backward
    // step within kf goes beyond the current position. Lower angular mirrored
    // with forward steps from i > 0.
    for (bool lower : {false, true}) {
      if (!orbit.angular_at(0, kf, lower)) continue;
      const int dir = lower ? 1 : -1;
      for (int s = 1; s <= reach; ++s) {
        const long long i = dir * s;
        auto here = orbit.pos_at(i);
        ++rep.checks;
        bool found = false;
        for (int j = 1; j <= kf && !found; ++j)
          if (here && beyond(c.side, orbit.pos_at(i + dir * j), *here)) found = true;
        if (!found)
          rep.violations.push_back(
              {{"front", c.to_json()}, {"clause", lower ? "lower" : "upper"}, {"i", i}});
      }
    }
  }
  return rep;
}

PropertyReport check_noangular(const Gca& f, const std::vector<FrontConfig>& fronts, int kf,
                               int horizon, bool require_decided) {
  if (require_decided) require_decided_expansive(f);
  auto d = Dynamics::of(f);
  PropertyReport rep{"no-lower-angular-after-escape", fronts.size(), 0, {}};
  const long long slack = static_cast<long long>(kf) * d.backward->radius();
  for (auto& c : fronts) {
    Orbit orbit(d, c.side, c.config);
    const long long threshold = c.side == FrontSide::Left ? c.k + slack : c.k - slack;
    for (int n = 1; n <= horizon; ++n) {
      auto p = orbit.pos_at(-n);
      if (!beyond(c.side, p, threshold)) continue;
      ++rep.checks;
      if (orbit.angular_at(-n, kf, true))
        rep.violations.push_back({{"front", c.to_json()}, {"n", n}, {"pos", *p}});
    }
  }
  return rep;
}

std::string Dyadic::to_string() const {
  if (zero) return "0";
  if (exponent == 0) return "1";
  if (exponent < 63) return "1/" + std::to_string(1ULL << exponent);
  return "2^-" + std::to_string(exponent);
}

double Dyadic::value() const { return zero ? 0.0 : std::ldexp(1.0, static_cast<int>(-exponent)); }

Dyadic distance(const Configuration& a, const Configuration& b) {
  auto e = distance_exponent(a, b);
  if (!e) return {};
  return {false, *e};
}

SpacetimeGrid spacetime(const Gca& f, const Configuration& c, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");
  const long long cone = static_cast<long long>(f.radius()) * (steps - 1);
  const long long from = c.core_start() - cone;
  const long long to = c.core_end() + cone + (c.core().empty() ? 1 : 0);
  const long long width = to - from;
  if (width * steps > 4'000'000) throw Error(ErrorKind::SizeLimit, "space-time grid too large");
  SpacetimeGrid grid{from, {}};
  Configuration cur = c;
  for (int t = 0; t < steps; ++t) {
    if (t > 0) cur = apply(f, cur);
    std::vector<Elem> row(width);
    for (long long x = 0; x < width; ++x) row[x] = cur.at(from + x);
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

std::string render_ascii(const SpacetimeGrid& grid) {
  static const std::string glyphs =
      ".123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out;
  for (auto& row : grid.rows) {
    for (Elem v : row) out.push_back(v < glyphs.size() ? glyphs[v] : '#');
    out.push_back('\n');
  }
  return out;
}

std::array<unsigned char, 3> ppm_palette(Elem i) {
  static constexpr std::array<std::array<unsigned char, 3>, 12> colors{{
      {0, 0, 0},
      {230, 25, 75},
      {60, 180, 75},
      {0, 130, 200},
      {255, 225, 25},
      {145, 30, 180},
      {70, 240, 240},
      {245, 130, 48},
      {240, 50, 230},
      {128, 128, 0},
      {0, 128, 128},
      {128, 0, 0},
  }};
  if (i == 0) return {255, 255, 255};
  return colors[(i - 1) % colors.size()];
}

std::string render_ppm(const SpacetimeGrid& grid) {
  const std::size_t h = grid.rows.size();
  const std::size_t w = h ? grid.rows.front().size() : 0;
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + 3 * w * h);
  for (auto& row : grid.rows)
    for (Elem v : row)
      for (unsigned char ch : ppm_palette(v)) out.push_back(static_cast<char>(ch));
  return out;
}

std::string to_string(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::LooksExpansive: return "looksExpansive";
    case OracleOutcome::Refuted: return "refutedBy";
    case OracleOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

json OracleResult::to_json() const {
  json j{{"outcome", to_string(outcome)},
         {"mode", mode == OracleMode::Expansive ? "expansive" : "positive"},
         {"germWidth", germ_width},
         {"horizon", horizon},
         {"germs", germs},
         {"latestEscape", latest_escape},
         {"note", note}};
  if (refuted_by) j["refutedBy"] = refuted_by->to_json();
  return j;
}

OracleResult front_escape_oracle(const Gca& f, int germ_width, int horizon, OracleMode mode) {
  auto d = Dynamics::of(f, mode == OracleMode::Expansive);
  OracleResult r;
  r.mode = mode;
  r.horizon = horizon;
  r.germ_width = adaptive_germ_width(f.group(), germ_width);
  r.note = "bounded-horizon germ sweep; a refutation holds only up to the horizon";
  for (auto side : {FrontSide::Left, FrontSide::Right}) {
    for (auto& germ : front_germs(f.group(), side, r.germ_width)) {
      ++r.germs;
      auto m = escape_time(d, germ, horizon);
      if (!m) {
        r.outcome = OracleOutcome::Refuted;
        r.refuted_by = germ;
        return r;
      }
      r.latest_escape = std::max(r.latest_escape, *m);
    }
  }
  r.outcome = 2 * r.latest_escape > horizon ? OracleOutcome::Inconclusive
                                            : OracleOutcome::LooksExpansive;
  return r;
}

}  // namespace gca
