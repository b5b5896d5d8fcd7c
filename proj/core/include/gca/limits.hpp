#pragma once

#include <cstddef>
#include <string>

namespace gca {

// Size caps for the exhaustive procedures. Values come from defaults,
// optionally overridden by the GCA_SIZE_LIMITS environment variable, e.g.
//   GCA_SIZE_LIMITS="max_order=5000,debruijn_vertices=40000"
struct Limits {
  std::size_t max_order = 10000;           // build_group
  std::size_t subgroup_order = 400;        // subgroups()
  std::size_t endo_order = 400;            // endomorphisms()
  std::size_t endo_generators = 3;         // endomorphisms()
  std::size_t debruijn_vertices = 20000;   // is_injective / is_surjective
  std::size_t subset_states = 200000;      // surjectivity determinization
  int compose_radius = 64;                 // compose / power
  int invert_radius = 32;                  // invert
  std::size_t linear_variables = 20000;    // trapped-window systems
  int det_dimension = 8;                   // det / adjugate / char_poly
  int shift_power_cap = 16;                // empirical F^K search
  std::size_t germ_count = 20000;          // simulation germ sweeps
};

// Process-wide limits. The first call reads GCA_SIZE_LIMITS.
const Limits& limits();

// Replaces the process-wide limits. Call before any worker threads start.
void set_limits(const Limits& l);

// Parses a "key=value,key=value" list on top of `base`. Throws
// Error(InvalidArgument) for unknown keys or malformed values.
Limits parse_limits(const std::string& text, Limits base = {});

}  // namespace gca
