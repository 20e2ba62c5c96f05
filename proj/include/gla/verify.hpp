#pragma once

#include <cstdint>
#include <ostream>

namespace gla {

// Seeded invariant sweep across every module, emitting one line per check:
//   check <name> pass
//   check <name> FAIL <witness>
// Output is deterministic in (seed, trials, cap). Returns true iff all pass.
bool run_verification(std::uint64_t seed, int trials, std::uint64_t cap,
                      std::ostream& out);

}  // namespace gla
