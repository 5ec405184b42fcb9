/**
 * @file suites.hpp
 * @brief Named verification suites shared by the command line and the
 * acceptance binary. Each suite returns one record per check.
 */
#ifndef ETB_SUITES_HPP
#define ETB_SUITES_HPP

#include "etb/budget.hpp"
#include "etb/ring.hpp"

#include <string>
#include <vector>

namespace etb {

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult
{
    std::string suite;
    std::string ring;
    int rank = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    /// First failing check, or nullptr.
    const CheckResult* first_failure() const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const Ring& ring, int rank, const Budget& budget = Budget::from_env());

SuiteResult equivalence_suite(const Ring& ring, int n, const Budget& budget);
SuiteResult polyhedral_suite(const Ring& ring, int n, const Budget& budget);
SuiteResult spectral_suite(const Ring& ring, int n, const Budget& budget);
SuiteResult grassmann_suite(const Ring& ring, int max_n, const Budget& budget);
SuiteResult group_suite(const Ring& ring, int n, const Budget& budget);

}  // namespace etb

#endif
