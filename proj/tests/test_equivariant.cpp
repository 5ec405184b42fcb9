#include "doctest.h"
#include "etb/equivariant.hpp"

#include <algorithm>
#include <numeric>

using namespace etb;

namespace {

std::size_t order(const char* ring, int n, GroupFlavor flavor = GroupFlavor::FullGL)
{
    return enumerate_group(FiniteRing::make(ring), n, flavor).size();
}

bool same_elements(std::vector<Matrix> a, std::vector<Matrix> b)
{
    auto key = [](const Matrix& m) { return m.encode(); };
    std::vector<std::vector<std::uint32_t>> ka, kb;
    std::transform(a.begin(), a.end(), std::back_inserter(ka), key);
    std::transform(b.begin(), b.end(), std::back_inserter(kb), key);
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

// every subset of at most k + 1 lines, as a complex on the lines of A^2
SimplicialComplex all_subsets(int vertices, int k)
{
    std::vector<Simplex> top;
    std::vector<int> pick(static_cast<std::size_t>(vertices), 0);
    std::fill(pick.end() - (k + 1), pick.end(), 1);
    do {
        Simplex s;
        for (int i = 0; i < vertices; ++i)
            if (pick[i])
                s.push_back(i);
        top.push_back(s);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return SimplicialComplex::from_maximal(vertices, top);
}

ZGModule line_chain_module(FreeModule& v, const SimplicialComplex& k, int d, const std::vector<Matrix>& gens)
{
    ZGModule m;
    m.dim = static_cast<int>(k.simplices(d).size());
    for (const auto& g : gens)
        m.actions.push_back(simplicial_chain_map(k, k, act_on_lines(v, g), d));
    return m;
}

}  // namespace

TEST_CASE("group orders agree with brute force")
{
    CHECK(order("fq:2", 2) == 6);
    CHECK(order("fq:3", 2) == 48);
    CHECK(order("fq:2", 3) == 168);
    CHECK(brute_force_gl(FiniteRing::make("fq:2"), 2).size() == 6);
    CHECK(brute_force_gl(FiniteRing::make("fq:3"), 2).size() == 48);
    CHECK(brute_force_gl(FiniteRing::make("fq:2"), 3).size() == 168);
    for (const char* r : {"fq:2", "fq:3", "zmod:4"}) {
        auto ring = FiniteRing::make(r);
        CHECK(same_elements(enumerate_group(ring, 2, GroupFlavor::FullGL), brute_force_gl(ring, 2)));
    }
    CHECK(same_elements(enumerate_group(FiniteRing::make("fq:2"), 3, GroupFlavor::FullGL),
                        brute_force_gl(FiniteRing::make("fq:2"), 3)));
    // SL_2(F_3) is generated by elementary matrices
    CHECK(order("fq:3", 2, GroupFlavor::Elementary) == 24);
    CHECK(order("fq:3", 2, GroupFlavor::Diagonal) == 4);
    CHECK(order("fq:2", 3, GroupFlavor::Permutation) == 6);
}

TEST_CASE("budget stops group enumeration")
{
    Budget tiny;
    tiny.group = 10;
    CHECK_THROWS_AS(enumerate_group(FiniteRing::make("fq:3"), 2, GroupFlavor::FullGL, tiny), BudgetExceeded);
}

TEST_CASE("stabilizers of the standard splitting")
{
    auto check = [](const char* r, int n, std::size_t expected) {
        auto ring = FiniteRing::make(r);
        FreeModule v(ring, n);
        Splitting std_split;
        for (int i = 0; i < n; ++i) {
            Vec e(static_cast<std::size_t>(n), ring->zero());
            e[i] = ring->one();
            std_split.lines.push_back(*v.lines().index_of(e));
        }
        std::sort(std_split.lines.begin(), std_split.lines.end());
        auto group = enumerate_group(ring, n, GroupFlavor::FullGL);
        CHECK(stabilizer_of_splitting(v, std_split, group).size() == expected);
    };
    check("fq:3", 2, 8);
    check("fq:2", 3, 6);
    check("fq:5", 1, 4);
    check("fq:4", 2, 18);
}

TEST_CASE("the transposition on FL(F_2^2)")
{
    auto ring = FiniteRing::make("fq:2");
    FreeModule v(ring, 2);
    auto flags = v.flags();
    REQUIRE(flags.size() == 3);
    Matrix t(ring, 2, 2);
    t.at(0, 1) = ring->one();
    t.at(1, 0) = ring->one();
    auto perm = permute_flags(v, t, flags);
    int fixed = 0;
    for (int i = 0; i < 3; ++i) {
        CHECK(perm[perm[i]] == i);
        fixed += perm[i] == i;
    }
    CHECK(fixed == 1);
    int diag = *v.lines().index_of(Vec{ring->one(), ring->one()});
    for (int i = 0; i < 3; ++i)
        if (perm[i] == i)
            CHECK(v.as_line(flags[i].steps[0]) == diag);
}

TEST_CASE("actions are functorial and scalars act trivially")
{
    auto ring = FiniteRing::make("fq:3");
    FreeModule v(ring, 2);
    auto flags = v.flags();
    auto splittings = v.splittings();
    EPoset e(v);
    auto group = enumerate_group(ring, 2, GroupFlavor::FullGL);
    for (std::size_t a = 0; a < group.size(); a += 5)
        for (std::size_t b = 0; b < group.size(); b += 7) {
            auto pa = permute_e(e, group[a]), pb = permute_e(e, group[b]), pab = permute_e(e, group[a] * group[b]);
            for (int i = 0; i < e.size(); ++i)
                CHECK(pab[i] == pa[pb[i]]);
        }
    auto scalar = Matrix::identity(ring, 2);
    scalar.at(0, 0) = scalar.at(1, 1) = RingElement{2};
    std::vector<int> id(static_cast<std::size_t>(e.size()));
    std::iota(id.begin(), id.end(), 0);
    CHECK(permute_e(e, scalar) == id);
    id.resize(flags.size());
    CHECK(permute_flags(v, scalar, flags) == id);
    id.resize(splittings.size());
    std::iota(id.begin(), id.end(), 0);
    CHECK(permute_splittings(v, scalar, splittings) == id);
}

TEST_CASE("coinvariants of small modules")
{
    ZGModule triv{3, {}};
    SparseIntMatrix id(3, 3);
    for (int i = 0; i < 3; ++i)
        id.add(i, i, 1);
    triv.actions.push_back(id);
    CHECK(coinvariants(triv).betti == 3);
    SparseIntMatrix neg(1, 1);
    neg.add(0, 0, -1);
    auto h = coinvariants(ZGModule{1, {neg}});
    CHECK(h.betti == 0);
    CHECK(h.torsion == std::vector<Integer>{2});
}

TEST_CASE("coinvariants on oriented triples of lines in F_5^2")
{
    auto ring = FiniteRing::make("fq:5");
    FreeModule v(ring, 2);
    auto k = all_subsets(v.lines().size(), 2);
    auto h = coinvariants(line_chain_module(v, k, 2, group_generators(ring, 2, GroupFlavor::FullGL)));
    CHECK(h.betti == 0);
    CHECK(h.torsion == std::vector<Integer>{2});
}

TEST_CASE("coinvariants do not depend on the generating set")
{
    auto ring = FiniteRing::make("fq:3");
    FreeModule v(ring, 2);
    auto k = all_subsets(v.lines().size(), 3);
    auto all = enumerate_group(ring, 2, GroupFlavor::FullGL);
    for (int d = 0; d <= 3; ++d) {
        auto small = coinvariants(line_chain_module(v, k, d, group_generators(ring, 2, GroupFlavor::FullGL)));
        auto full = coinvariants(line_chain_module(v, k, d, all));
        CHECK(small.betti == full.betti);
        CHECK(small.torsion == full.torsion);
    }
}

TEST_CASE("elementary matrices act trivially on the stabilized image")
{
    auto r = elementary_triviality_check(FiniteRing::make("fq:2"), 2, 1);
    CHECK(r.source_rank == 1);
    CHECK(r.generators.size() == 6);
    CHECK(r.passed());
    auto r3 = elementary_triviality_check(FiniteRing::make("fq:3"), 2, 1);
    CHECK(r3.source_rank == 3);
    CHECK(r3.generators.size() == 12);
    CHECK(r3.passed());
}

TEST_CASE("the transposition is not trivial on H_1(FL(F_2^2)) itself")
{
    auto ring = FiniteRing::make("fq:2");
    FreeModule v(ring, 2);
    auto flags = v.flags();
    auto fl = build_fl(v, flags, v.splittings());
    HomologyBasis h(fl.chain_complex(), 1);
    Matrix t(ring, 2, 2);
    t.at(0, 1) = ring->one();
    t.at(1, 0) = ring->one();
    auto g = simplicial_chain_map(fl, fl, permute_flags(v, t, flags), 1);
    bool moved = false;
    for (const auto& z : h.representatives()) {
        auto y = g.apply(z);
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] -= z[i];
        moved = moved || !h.is_boundary(y);
    }
    CHECK(moved);
}

TEST_CASE("stabilization probe")
{
    auto p0 = stabilization_probe(FiniteRing::make("fq:2"), 0, 2);
    CHECK(p0.source_dim == 1);
    CHECK(p0.coinvariant_dim == 1);
    CHECK(p0.target_dim == 1);
    CHECK(p0.map_rank == 1);
    auto p = stabilization_probe(FiniteRing::make("fq:2"), 1, 3);
    // the transposition reverses the hexagon
    CHECK(p.source_dim == 1);
    CHECK(p.coinvariant_dim == 0);
    CHECK(p.target_dim == 0);
    CHECK(p.map_rank == 0);
    CHECK(p.kernel_dim == 1);
    auto q = stabilization_probe(FiniteRing::make("fq:3"), 1, 3);
    CHECK(q.source_dim == 3);
    CHECK(q.coinvariant_dim == 0);
    CHECK(q.target_dim == 0);
    CHECK(q.kernel_dim == 3);
}
