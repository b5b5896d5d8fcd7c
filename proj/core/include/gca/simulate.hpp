#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gca/configuration.hpp"
#include "gca/rule.hpp"

namespace gca {

// Empirical layer: fronts and their positions under iteration.
//
// Sign convention: σ(c)_i = c_{i+1}, so the shift moves a left front's content
// to the left (forward positions k-1, k-2, ...) and its inverse moves it right.
// A left front escapes when its position exceeds the start k, a right front
// when it drops below k, whichever power direction achieves it.

enum class FrontSide { Left, Right };
std::string to_string(FrontSide s);

// Left front: c_k != e and c_i = e for i > k. Right front mirrored.
struct FrontConfig {
  FrontSide side = FrontSide::Left;
  long long k = 0;
  Configuration config;

  nlohmann::json to_json() const;
};

// `core` occupies [k-|core|+1, k] and its last symbol sits at k; `tail` is the
// period repeated to the left of the core. Throws NotAFront.
FrontConfig make_left_front(long long k, std::vector<Elem> core, std::vector<Elem> tail = {0});
// `core` occupies [k, k+|core|-1], first symbol at k; `tail` repeats to the right.
FrontConfig make_right_front(long long k, std::vector<Elem> core, std::vector<Elem> tail = {0});
// Validates an arbitrary configuration as a front on the given side.
FrontConfig as_front(FrontSide side, const Configuration& c);

// Front position, absent for e^Z. A configuration that is not a front on
// `side` (non-e tail on the wrong end) has no position either.
std::optional<long long> pos(FrontSide side, const Configuration& c);

// A rule together with its inverse when it is injective.
struct Dynamics {
  Gca forward;
  std::optional<Gca> backward;

  // `want_inverse` runs invert(f); errors propagate.
  static Dynamics of(const Gca& f, bool want_inverse = true);
  bool reversible() const { return backward.has_value(); }
};

struct FrontTrajectory {
  FrontSide side = FrontSide::Left;
  long long k = 0;
  std::vector<std::optional<long long>> forward;                 // i = 0..horizon
  std::optional<std::vector<std::optional<long long>>> backward;  // entry i is step -i
  std::optional<long long> escaped_at;  // first signed step by |n|, +n tried before -n

  nlohmann::json to_json() const;
};

FrontTrajectory trajectory(const Dynamics& d, const FrontConfig& c, int horizon);

// m(c): least i >= 1 with F^i(c) or F^-i(c) beyond k, within horizon. Uses
// only forward iterates when `d` has no inverse.
std::optional<int> escape_time(const Dynamics& d, const FrontConfig& c, int horizon);

// All fronts at k = 0 whose core has the given width and whose tail is e.
std::vector<FrontConfig> front_germs(const FiniteGroup& g, FrontSide side, int width);

// Largest width <= requested whose two-sided germ family stays under
// limits().germ_count.
int adaptive_germ_width(const FiniteGroup& g, int requested);

struct KfEstimate {
  std::optional<int> k;  // absent when some germ never escapes
  int germ_width = 0;
  int horizon = 0;
  std::size_t germs = 0;
  std::optional<FrontConfig> stuck;  // first germ that failed
};

// Empirical bound for the escape-time constant: max escape time over
// the germ family. Sound only over that family.
KfEstimate estimate_kF(const Dynamics& d, int germ_width = 6, int horizon = 40);

// Lower: F^-i(c) stays on its side of k for i = 0..kF. Upper: same with F^i.
// The lower check needs an inverse (throws NotInjective).
bool is_lower_angular(const Dynamics& d, const FrontConfig& c, int kf);
bool is_upper_angular(const Dynamics& d, const FrontConfig& c, int kf);

struct PropertyReport {
  std::string property;
  std::size_t fronts = 0;
  std::size_t checks = 0;  // non-vacuous instances
  std::vector<nlohmann::json> violations;

  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

// Throws Error(InvalidArgument) when the rule is not decided expansive, unless
// `require_decided` is false (injectivity is still needed).
PropertyReport check_l1(const Gca& f, const std::vector<FrontConfig>& fronts, int kf, int horizon,
                        bool require_decided = true);
PropertyReport check_noangular(const Gca& f, const std::vector<FrontConfig>& fronts, int kf,
                               int horizon, bool require_decided = true);

// Exact Tychonoff distance: zero, or 2^-exponent.
struct Dyadic {
  bool zero = true;
  long long exponent = 0;

  std::string to_string() const;  // "0", "1", "1/8"
  double value() const;
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    if (a.zero || b.zero) return a.zero && !b.zero;
    return a.exponent > b.exponent;
  }
};
Dyadic distance(const Configuration& a, const Configuration& b);

struct SpacetimeGrid {
  long long first_column = 0;
  std::vector<std::vector<Elem>> rows;  // row t is F^t(c), t = 0..steps-1
};

// Columns cover the core widened by the light cone. Throws SizeLimit above
// four million cells.
SpacetimeGrid spacetime(const Gca& f, const Configuration& c, int steps);
// '.' for e, then 1-9, a-z, A-Z by element index; '#' past that.
std::string render_ascii(const SpacetimeGrid& grid);
// Binary P6, one pixel per cell, colors from ppm_palette().
std::string render_ppm(const SpacetimeGrid& grid);
// RGB of element index i; e is white, others cycle through twelve colors.
std::array<unsigned char, 3> ppm_palette(Elem i);

enum class OracleMode { Expansive, Positive };
enum class OracleOutcome { LooksExpansive, Refuted, Inconclusive };
std::string to_string(OracleOutcome o);

struct OracleResult {
  OracleOutcome outcome = OracleOutcome::Inconclusive;
  OracleMode mode = OracleMode::Expansive;
  int germ_width = 0;
  int horizon = 0;
  std::size_t germs = 0;
  int latest_escape = 0;
  std::optional<FrontConfig> refuted_by;
  std::string note;

  nlohmann::json to_json() const;
};

// Exhaustive germ sweep. Refuted when some germ never escapes within the
// horizon (a counterexample only for that horizon). Inconclusive when every
// germ escapes but one needs more than half the horizon.
OracleResult front_escape_oracle(const Gca& f, int germ_width = 6, int horizon = 40,
                                 OracleMode mode = OracleMode::Expansive);

}  // namespace gca
