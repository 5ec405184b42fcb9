#include "etb/suites.hpp"

#include "etb/equivariant.hpp"
#include "etb/grassmann.hpp"
#include "etb/spectral.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace etb {

bool SuiteResult::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* SuiteResult::first_failure() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return &c;
    return nullptr;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"equivalence", "polyhedral", "spectral", "grassmann", "group"};
    return names;
}

SuiteResult run_suite(const std::string& name, const Ring& ring, int rank, const Budget& budget)
{
    if (name == "equivalence")
        return equivalence_suite(ring, rank, budget);
    if (name == "polyhedral")
        return polyhedral_suite(ring, rank, budget);
    if (name == "spectral")
        return spectral_suite(ring, rank, budget);
    if (name == "grassmann")
        return grassmann_suite(ring, rank, budget);
    if (name == "group")
        return group_suite(ring, rank, budget);
    throw std::invalid_argument("unknown suite: " + name);
}

namespace {

SuiteResult start(const char* name, const Ring& ring, int n)
{
    SuiteResult r;
    r.suite = name;
    r.ring = ring->descriptor();
    r.rank = n;
    return r;
}

std::string groups_to_string(const std::vector<HomologyGroup>& h)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < h.size(); ++i)
        os << (i ? ", " : "") << h[i].to_string();
    os << ")";
    return os.str();
}

// trailing zero groups dropped
std::vector<HomologyGroup> trimmed(std::vector<HomologyGroup> h)
{
    while (!h.empty() && h.back().betti == 0 && h.back().torsion.empty())
        h.pop_back();
    return h;
}

template <class T>
std::string join(const std::vector<T>& v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    return os.str();
}

}  // namespace

SuiteResult equivalence_suite(const Ring& ring, int n, const Budget& budget)
{
    auto res = start("equivalence", ring, n);
    FreeModule v(ring, n, budget);
    auto flags = v.flags();
    auto splittings = v.splittings();
    auto fl = build_fl(v, flags, splittings);
    auto spl = build_spl(v, flags, splittings);
    EPoset e(v);
    auto et = e.poset().nerve(budget);
    auto hfl = trimmed(integral_homology(fl.chain_complex()));
    auto hspl = trimmed(integral_homology(spl.chain_complex()));
    auto het = trimmed(integral_homology(et.chain_complex()));
    res.checks.push_back({"H(FL) = H(ET)", hfl == het, "FL " + groups_to_string(hfl) + " ET " + groups_to_string(het)});
    res.checks.push_back(
        {"H(SPL) = H(ET)", hspl == het, "SPL " + groups_to_string(hspl) + " ET " + groups_to_string(het)});
    long long fact = 1;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    res.checks.push_back({"dim ET = n - 1", et.dimension() == n - 1, "dim " + std::to_string(et.dimension())});
    res.checks.push_back(
        {"dim FL = n! - 1", fl.dimension() == fact - 1, "dim " + std::to_string(fl.dimension())});
    bool uct = true;
    for (unsigned p : {2u, 3u, 5u})
        for (const auto* k : {&fl, &spl, &et})
            uct = uct && universal_coefficients_hold(k->chain_complex(), p);
    res.checks.push_back({"universal coefficients over F_2, F_3, F_5", uct, ""});
    return res;
}

SuiteResult polyhedral_suite(const Ring& ring, int n, const Budget& budget)
{
    auto res = start("polyhedral", ring, n);
    FreeModule v(ring, n, budget);
    EPoset e(v);
    auto nerve = e.poset().nerve(budget);
    try {
        CellStructure cs(e, nerve);
        int bad_sphere = 0, bad_dim = 0;
        for (const auto& c : cs.cells()) {
            bad_sphere += !c.sphere;
            bad_dim += c.dim != n - e.element(c.element).length();
        }
        res.checks.push_back({"every cell boundary is a homology sphere", bad_sphere == 0,
                              std::to_string(cs.cells().size()) + " cells, " + std::to_string(bad_sphere) + " bad"});
        res.checks.push_back({"dim e(p) = n - r", bad_dim == 0, std::to_string(bad_dim) + " bad"});
        auto cell = cs.cellular_chain_complex();
        bool square = true;
        try {
            cell.check_square_zero();
        } catch (const std::logic_error&) {
            square = false;
        }
        res.checks.push_back({"cellular boundary squares to zero", square, ""});
        auto hc = trimmed(integral_homology(cell)), hn = trimmed(integral_homology(nerve.chain_complex()));
        res.checks.push_back({"cellular homology = nerve homology", hc == hn, groups_to_string(hc)});
        bool uct = true;
        for (unsigned p : {2u, 3u, 5u})
            uct = uct && universal_coefficients_hold(cell, p) && universal_coefficients_hold(nerve.chain_complex(), p);
        res.checks.push_back({"universal coefficients over F_2, F_3, F_5", uct, ""});
    } catch (const std::logic_error& ex) {
        res.checks.push_back({"cell structure", false, ex.what()});
    }
    return res;
}

SuiteResult spectral_suite(const Ring& ring, int n, const Budget& budget)
{
    auto res = start("spectral", ring, n);
    FreeModule v(ring, n, budget);
    EPoset e(v);
    auto nerve = e.poset().nerve(budget);
    CellStructure cs(e, nerve);
    auto fc = filter_et(e, cs);
    for (Coefficients k : {Coefficients{0}, Coefficients{2}}) {
        const std::string tag = " over " + k.to_string();
        SpectralSequence ss;
        try {
            ss = run_spectral(fc, k);
        } catch (const std::logic_error& ex) {
            res.checks.push_back({"pages" + tag, false, ex.what()});
            continue;
        }
        bool e1 = true;
        std::string where;
        for (int s = 0; s < n; ++s) {
            auto expected = e1_structural(ring, n, s, k, budget);
            for (int r = 0; r < n; ++r)
                if (ss.page(1).dim(r, s) != expected[r]) {
                    e1 = false;
                    where = "(" + std::to_string(r) + "," + std::to_string(s) + ")";
                }
        }
        res.checks.push_back({"E1 = structural sums" + tag, e1, where});
        res.checks.push_back({"E-infinity sums to homology" + tag, ss.converges(), "H " + join(ss.homology)});
        bool d1 = true;
        for (int p = 1; p <= fc.max_level(); ++p)
            for (int m = 1; m <= fc.complex.top_degree(); ++m)
                d1 = d1 && ss.page(1).rank(p, m - p) == connecting_rank(fc, p, m, k);
        res.checks.push_back({"d1 = connecting map" + tag, d1, ""});
        if (n >= 2) {
            auto br = bottom_row_check(ring, n, k, budget);
            res.checks.push_back({"bottom row = general position chains" + tag, br.passed(),
                                  "E1 " + join(br.e1_dims) + " C " + join(br.chain_dims) + " d1 " + join(br.e1_ranks) +
                                      " del " + join(br.chain_ranks)});
        }
    }
    return res;
}

SuiteResult grassmann_suite(const Ring& ring, int max_n, const Budget& budget)
{
    auto res = start("grassmann", ring, max_n);
    GrassmannTower t(ring, max_n, budget);
    auto tc = check_total_complex(t, 5, max_n);
    res.checks.push_back({"d' d' = 0", tc.prime_square_zero, ""});
    res.checks.push_back({"d' d'' + d'' d' = 0", tc.anticommute, ""});
    res.checks.push_back({"d'' d'' = 0", tc.doubleprime_square_zero, ""});
    if (max_n >= 3) {
        auto claim = claim_check(ring, budget);
        res.checks.push_back({"d'' kills H_4(Cbar(3))", claim.verdict != ClaimVerdict::Fail,
                              to_string(claim.verdict) + ", arc " + std::to_string(claim.arc)});
    }
    if (ring->cardinality() <= 5) {
        bool same = true;
        for (int r = 2; r <= 3; ++r) {
            auto direct = cbar_direct(ring, 2, r, budget);
            const auto& orbit = t.cbar(2, r).group;
            same = same && direct.betti == orbit.betti && direct.torsion == orbit.torsion;
        }
        res.checks.push_back({"orbit presentation = direct coinvariants, n = 2", same, ""});
    }
    return res;
}

SuiteResult group_suite(const Ring& ring, int n, const Budget& budget)
{
    auto res = start("group", ring, n);
    auto group = enumerate_group(ring, n, GroupFlavor::FullGL, budget);
    const long long q = ring->cardinality();
    const long long units = static_cast<long long>(ring->units().size());
    if (units + 1 == q) {
        long long order = 1, qn = 1;
        for (int i = 0; i < n; ++i)
            qn *= q;
        for (long long qi = 1, i = 0; i < n; ++i, qi *= q)
            order *= qn - qi;
        res.checks.push_back({"|GL_n| = prod (q^n - q^i)", static_cast<long long>(group.size()) == order,
                              std::to_string(group.size())});
    }
    FreeModule v(ring, n, budget);
    Splitting std_split;
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n), ring->zero());
        e[i] = ring->one();
        std_split.lines.push_back(*v.lines().index_of(e));
    }
    std::sort(std_split.lines.begin(), std_split.lines.end());
    long long expected = 1;
    for (int i = 0; i < n; ++i)
        expected *= units * (i + 1);
    auto stab = stabilizer_of_splitting(v, std_split, group);
    res.checks.push_back({"|N(standard splitting)| = units^n n!", static_cast<long long>(stab.size()) == expected,
                          std::to_string(stab.size())});
    // H_1(FL(A^2)) -> H_1(FL(A^3)); larger ranks are beyond desk scale
    auto rep = elementary_triviality_check(ring, 2, 1, budget);
    res.checks.push_back({"E_3 acts trivially on the image of H_1(FL(A^2))", rep.passed(),
                          std::to_string(rep.generators.size()) + " generators, source rank " +
                              std::to_string(rep.source_rank)});
    return res;
}

}  // namespace etb
