#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splitdde {

struct SelftestOptions {
    int trials = 100;
    std::uint64_t seed = 20240607;
    /// Replace the dist-auto generator with a non-contractive one.
    bool inject_noncontractive = false;
    /// Treat a non-contractive generator as a stability failure.
    bool strict = false;
    /// Declare a delay bound below the true sup ||Phi(t)|| for dist-nonauto.
    bool misdeclare_phi_bound = false;
};

struct SelftestCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelftestResult {
    std::vector<SelftestCheck> checks;

    [[nodiscard]] bool all_pass() const;
};

/// Oracle Richardson checks, stability witnesses, shift nilpotency and
/// linearity of both factor semigroups on random states.
[[nodiscard]] SelftestResult run_selftest(const SelftestOptions& opts = {});

}  // namespace splitdde
