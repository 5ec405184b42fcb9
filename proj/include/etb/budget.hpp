#ifndef ETB_BUDGET_HPP
#define ETB_BUDGET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace etb {

/// Thrown when an enumeration would exceed its configured cap. Callers are
/// expected to surface this rather than truncate silently.
class BudgetExceeded : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Budget
{
    std::uint64_t vectors = 10'000'000;    // candidate vectors scanned by line enumeration
    std::uint64_t simplices = 5'000'000;   // simplices stored by any one complex
    std::uint64_t group = 1'000'000;       // elements of an enumerated matrix group

    /// Defaults overridden by ETB_BUDGET, a comma separated list such as
    /// "vectors=1000,simplices=20000,group=500". Unknown keys are rejected.
    static Budget from_env();
    static Budget parse(const std::string& text);
    static Budget parse(const std::string& text, Budget base);

    void check_vectors(std::uint64_t n, const char* what) const;
    void check_simplices(std::uint64_t n, const char* what) const;
    void check_group(std::uint64_t n, const char* what) const;
};

}  // namespace etb

#endif
