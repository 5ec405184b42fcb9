#include "oracles.hpp"

#include <bit>
#include <stdexcept>

namespace etb::oracle {

bool is_k_simplex(const FiniteRing& ring, const std::vector<Vec>& vectors, int n)
{
    const int m = static_cast<int>(vectors.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        if (std::popcount(mask) > n)
            continue;
        std::vector<Vec> sub;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i))
                sub.push_back(vectors[i]);
        if (!completes_to_basis(ring, sub, n))
            return false;
    }
    return true;
}

PreBloch pre_bloch(unsigned q)
{
    for (unsigned d = 2; d * d <= q; ++d)
        if (q % d == 0)
            throw std::invalid_argument("pre_bloch oracle needs a prime");
    const long p = q;
    auto mod = [p](long x) { return ((x % p) + p) % p; };
    auto inv = [&](long x) {
        for (long y = 1; y < p; ++y)
            if (mod(x * y) == 1)
                return y;
        throw std::logic_error("no inverse");
    };
    // generator of x in {2, ..., q-1} is x - 2
    const int g = static_cast<int>(q) - 2;
    std::vector<std::vector<Integer>> cols;
    auto add = [&](std::vector<std::pair<long, int>> terms) {
        std::vector<Integer> c(static_cast<std::size_t>(g), 0);
        for (auto [x, s] : terms)
            c[static_cast<std::size_t>(x - 2)] += s;
        cols.push_back(std::move(c));
    };
    for (long x = 2; x < p; ++x) {
        add({{x, 1}, {inv(x), 1}});
        add({{x, 1}, {mod(1 - x), 1}});
        for (long y = 2; y < p; ++y) {
            if (x == y)
                continue;
            long a = mod(y * inv(x));
            long b = mod(mod(1 - inv(x)) * inv(mod(1 - inv(y))));
            long c = mod(mod(1 - x) * inv(mod(1 - y)));
            add({{x, 1}, {y, -1}, {a, 1}, {b, -1}, {c, 1}});
        }
    }
    PreBloch out;
    out.generators = g;
    out.relations = static_cast<int>(cols.size());
    // rows = generators
    std::vector<std::vector<Integer>> a(static_cast<std::size_t>(g), std::vector<Integer>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < g; ++i)
            a[i][j] = cols[j][i];
    auto factors = g > 0 ? dense_smith(a) : std::vector<Integer>{};
    out.rank = g - static_cast<int>(factors.size());
    for (auto& f : factors)
        if (f > 1)
            out.torsion.push_back(f);
    return out;
}

}  // namespace etb::oracle
