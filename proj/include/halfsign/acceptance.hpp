#ifndef HALFSIGN_ACCEPTANCE_HPP
#define HALFSIGN_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "halfsign/errors.hpp"

namespace halfsign::accept {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool hard = true;
    bool passed = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;  // 0 for advisory criteria
    std::string detail;
};

struct Summary {
    std::vector<CriterionResult> results;
    int hard_failures = 0;
    int advisory_warnings = 0;
};

/// Runs every criterion, printing one line per criterion to `out` as it
/// finishes. `seed` drives the random windows and sets.
Summary run_acceptance(std::ostream& out, u64 seed = 0);

}  // namespace halfsign::accept

#endif
