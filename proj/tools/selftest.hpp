#pragma once

namespace adoption::tools {

/// Prints PASS/FAIL per check; returns 0 when all pass.
int run_selftest();

}  // namespace adoption::tools
