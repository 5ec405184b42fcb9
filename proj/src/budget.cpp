#include "etb/budget.hpp"

#include <cstdlib>
#include <sstream>

namespace etb {

Budget Budget::from_env()
{
    const char* env = std::getenv("ETB_BUDGET");
    if (env == nullptr || *env == '\0')
        return {};
    return parse(env);
}

Budget Budget::parse(const std::string& text)
{
    return parse(text, Budget{});
}

Budget Budget::parse(const std::string& text, Budget base)
{
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("budget entry '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        std::uint64_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("budget value for '" + key + "' is not a number");
        }
        if (key == "vectors")
            base.vectors = value;
        else if (key == "simplices")
            base.simplices = value;
        else if (key == "group")
            base.group = value;
        else
            throw std::invalid_argument("unknown budget key '" + key + "'");
    }
    return base;
}

void Budget::check_vectors(std::uint64_t n, const char* what) const
{
    if (n > vectors)
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(n) +
                             " candidate vectors exceeds budget " + std::to_string(vectors));
}

void Budget::check_simplices(std::uint64_t n, const char* what) const
{
    if (n > simplices)
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(n) +
                             " simplices exceeds budget " + std::to_string(simplices));
}

void Budget::check_group(std::uint64_t n, const char* what) const
{
    if (n > group)
        throw BudgetExceeded(std::string(what) + ": group order exceeds budget " +
                             std::to_string(group));
}

}  // namespace etb
