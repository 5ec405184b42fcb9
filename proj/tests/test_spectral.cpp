#include "doctest.h"
#include "etb/spectral.hpp"

using namespace etb;

namespace {

struct Et
{
    FreeModule v;
    EPoset e;
    SimplicialComplex nerve;
    CellStructure cs;
    FilteredComplex fc;

    Et(const char* ring, int n)
        : v(FiniteRing::make(ring), n), e(v), nerve(e.poset().nerve()), cs(e, nerve), fc(filter_et(e, cs))
    {
    }
};

std::vector<int> level_counts(const FilteredComplex& fc)
{
    std::vector<int> out(static_cast<std::size_t>(fc.max_level() + 1), 0);
    for (const auto& l : fc.levels)
        for (int x : l)
            ++out[x];
    return out;
}

}  // namespace

TEST_CASE("field linear algebra")
{
    Coefficients q, f2{2};
    std::vector<FVec> rows{{1, 1, 0}, {0, 1, 1}};
    CHECK(kernel(rows, 3, q).size() == 1);
    CHECK(rank({{1, 1}, {1, -1}}, 2, q) == 2);
    CHECK(rank({{1, 1}, {1, 1}}, 2, f2) == 1);
    CHECK(rank({{1, 1}, {1, -1}}, 2, Coefficients::parse("fp:2")) == 1);
    auto c = solve({{1, 0, 1}, {0, 1, 1}}, {2, 3, 5}, 3, q);
    REQUIRE(c);
    CHECK(*c == FVec{2, 3});
    CHECK_FALSE(solve({{1, 0, 1}}, {0, 1, 0}, 3, q));
    CHECK_THROWS(Coefficients::parse("fp:4"));
    CHECK(Coefficients::parse("fp:3").to_string() == "fp:3");
}

TEST_CASE("filtration levels")
{
    Et et("fq:2", 3);
    CHECK(level_counts(et.fc) == std::vector<int>{42, 21, 28});
    Et small("fq:2", 2);
    CHECK(level_counts(small.fc) == std::vector<int>{3, 3});
}

TEST_CASE("spectral sequence of ET(F_2^2)")
{
    Et et("fq:2", 2);
    auto ss = run_spectral(et.fc, {});
    CHECK(ss.page(1).dim(0, 0) == 3);
    CHECK(ss.page(1).dim(1, 0) == 3);
    CHECK(ss.page(2).dim(0, 0) == 1);
    CHECK(ss.page(2).dim(1, 0) == 1);
    CHECK(ss.infinity().r == 2);
    CHECK(ss.homology == std::vector<int>{1, 1});
    CHECK(ss.converges());
}

TEST_CASE("single level filtration")
{
    auto k = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}, {0, 2}});
    FilteredComplex fc{k.chain_complex(), {{0, 0, 0}, {0, 0, 0}}};
    auto ss = run_spectral(fc, {});
    CHECK(ss.pages.size() == 1);
    CHECK(ss.page(1).dim(0, 0) == 1);
    CHECK(ss.page(1).dim(0, 1) == 1);
    CHECK(ss.converges());
}

TEST_CASE("filtration that raises levels is rejected")
{
    auto k = SimplicialComplex::from_maximal(2, {{0, 1}});
    FilteredComplex fc{k.chain_complex(), {{0, 1}, {0}}};
    CHECK_THROWS_AS(fc.validate(), std::logic_error);
}

TEST_CASE("E1 agrees with the structural count")
{
    for (auto [ring, n] : {std::pair{"fq:2", 2}, std::pair{"fq:3", 2}, std::pair{"fq:2", 3}, std::pair{"zmod:4", 2}}) {
        CAPTURE(ring);
        CAPTURE(n);
        Et et(ring, n);
        for (Coefficients k : {Coefficients{0}, Coefficients{2}}) {
            auto ss = run_spectral(et.fc, k);
            CHECK(ss.converges());
            for (int s = 0; s < n; ++s) {
                auto expected = e1_structural(FiniteRing::make(ring), n, s, k);
                for (int r = 0; r < n; ++r) {
                    CHECK(ss.page(1).dim(r, s) == expected[r]);
                    // vanishing outside the range, except the corner (n-1, 0)
                    if (r + s >= n - 1 && !(r == n - 1 && s == 0))
                        CHECK(expected[r] == 0);
                }
            }
        }
    }
    CHECK(e1_structural(FiniteRing::make("fq:2"), 2, 0, {}) == std::vector<int>{3, 3});
    CHECK(e1_structural(FiniteRing::make("fq:3"), 2, 0, {}) == std::vector<int>{4, 6});
}

TEST_CASE("d1 equals the connecting map")
{
    Et et("fq:2", 3);
    for (Coefficients k : {Coefficients{0}, Coefficients{2}, Coefficients{3}}) {
        auto ss = run_spectral(et.fc, k);
        for (int p = 1; p <= 2; ++p)
            for (int n = 1; n <= 2; ++n)
                CHECK(ss.page(1).rank(p, n - p) == connecting_rank(et.fc, p, n, k));
    }
}

TEST_CASE("spectral sequence of ET(F_2^3)")
{
    using Table = std::map<std::pair<int, int>, int>;
    auto nonzero = [](const SpectralPage& pg) {
        Table t;
        for (const auto& [pq, d] : pg.dims)
            if (d)
                t[pq] = d;
        return t;
    };
    Et et("fq:2", 3);
    auto f2 = run_spectral(et.fc, {2});
    CHECK(f2.converges());
    REQUIRE(f2.pages.size() == 3);
    CHECK(nonzero(f2.page(1)) == Table{{{0, 0}, 7}, {{0, 1}, 7}, {{1, 0}, 21}, {{2, 0}, 28}});
    CHECK(f2.page(1).rank(1, 0) == 6);
    CHECK(f2.page(1).rank(2, 0) == 15);
    CHECK(nonzero(f2.page(2)) == Table{{{0, 0}, 1}, {{0, 1}, 7}, {{2, 0}, 13}});
    CHECK(f2.page(2).rank(2, 0) == 6);
    CHECK(nonzero(f2.page(3)) == Table{{{0, 0}, 1}, {{0, 1}, 1}, {{2, 0}, 7}});
    CHECK(f2.homology == std::vector<int>{1, 1, 7});

    auto q = run_spectral(et.fc, {});
    CHECK(q.converges());
    CHECK(nonzero(q.page(2)) == Table{{{0, 0}, 1}, {{0, 1}, 7}, {{2, 0}, 13}});
    CHECK(q.page(2).rank(2, 0) == 7);
    CHECK(nonzero(q.infinity()) == Table{{{0, 0}, 1}, {{2, 0}, 6}});
    CHECK(q.homology == std::vector<int>{1, 0, 6});
}

TEST_CASE("bottom row is the general position complex")
{
    for (auto [ring, n] : {std::pair{"fq:2", 2}, std::pair{"fq:3", 2}, std::pair{"fq:2", 3}}) {
        CAPTURE(ring);
        auto rep = bottom_row_check(FiniteRing::make(ring), n, {});
        CHECK(rep.passed());
        CHECK(rep.e2_pattern);
    }
    auto rep = bottom_row_check(FiniteRing::make("fq:2"), 3, {});
    CHECK(rep.chain_dims == std::vector<int>{7, 21, 28});
    CHECK(rep.e2_dims[0] == 1);
    CHECK(rep.e2_dims[1] == 0);
}
