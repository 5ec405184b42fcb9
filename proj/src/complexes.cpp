#include "etb/complexes.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace etb {

namespace {

struct SimplexHash
{
    std::size_t operator()(const Simplex& s) const
    {
        std::size_t h = s.size();
        for (int v : s)
            h = h * 1000003u ^ static_cast<std::size_t>(v);
        return h;
    }
};

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal(int vertex_count, std::vector<Simplex> simplices,
                                                  const Budget& budget)
{
    SimplicialComplex k;
    k.vertices_ = vertex_count;
    std::vector<std::unordered_set<Simplex, SimplexHash>> seen(1);
    for (int v = 0; v < vertex_count; ++v)
        seen[0].insert(Simplex{v});
    std::size_t total = static_cast<std::size_t>(vertex_count);
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex with a repeated vertex");
        if (s.empty())
            continue;
        if (s.front() < 0 || s.back() >= vertex_count)
            throw std::out_of_range("simplex vertex out of range");
        const int m = static_cast<int>(s.size());
        if (m > 30)
            throw BudgetExceeded("simplex of dimension above 29");
        if (static_cast<int>(seen.size()) < m)
            seen.resize(static_cast<std::size_t>(m));
        if (seen[m - 1].count(s))
            continue;
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            Simplex face;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i))
                    face.push_back(s[i]);
            if (seen[face.size() - 1].insert(std::move(face)).second)
                budget.check_simplices(++total, "simplicial closure");
        }
    }
    for (auto& layer : seen) {
        k.by_dim_.emplace_back(layer.begin(), layer.end());
        std::sort(k.by_dim_.back().begin(), k.by_dim_.back().end());
    }
    while (!k.by_dim_.empty() && k.by_dim_.back().empty())
        k.by_dim_.pop_back();
    return k;
}

SimplicialComplex SimplicialComplex::from_closed(int vertex_count, std::vector<Simplex> simplices)
{
    SimplicialComplex k;
    k.vertices_ = vertex_count;
    for (auto& s : simplices) {
        if (k.by_dim_.size() < s.size())
            k.by_dim_.resize(s.size());
        k.by_dim_[s.size() - 1].push_back(std::move(s));
    }
    for (auto& l : k.by_dim_)
        std::sort(l.begin(), l.end());
    return k;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const
{
    static const std::vector<Simplex> none;
    if (d < 0 || d > dimension())
        return none;
    return by_dim_[static_cast<std::size_t>(d)];
}

std::size_t SimplicialComplex::simplex_count() const
{
    std::size_t n = 0;
    for (const auto& l : by_dim_)
        n += l.size();
    return n;
}

int SimplicialComplex::index_of(std::span<const int> simplex) const
{
    const int d = static_cast<int>(simplex.size()) - 1;
    const auto& layer = simplices(d);
    auto it = std::lower_bound(layer.begin(), layer.end(), simplex,
                               [](const Simplex& a, std::span<const int> b) {
                                   return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                               });
    if (it == layer.end() || !std::equal(it->begin(), it->end(), simplex.begin(), simplex.end()))
        return -1;
    return static_cast<int>(it - layer.begin());
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for (int d = 0; d <= dimension(); ++d) {
        std::set<Simplex> covered;
        for (const auto& s : simplices(d + 1))
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                covered.insert(std::move(f));
            }
        for (const auto& s : simplices(d))
            if (!covered.count(s))
                out.push_back(s);
    }
    return out;
}

std::vector<long long> SimplicialComplex::f_vector() const
{
    std::vector<long long> f;
    for (const auto& l : by_dim_)
        f.push_back(static_cast<long long>(l.size()));
    return f;
}

long long SimplicialComplex::euler_characteristic() const
{
    long long chi = 0;
    for (int d = 0; d <= dimension(); ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<long long>(simplices(d).size());
    return chi;
}

ChainComplex SimplicialComplex::chain_complex() const
{
    std::vector<int> ranks;
    for (const auto& l : by_dim_)
        ranks.push_back(static_cast<int>(l.size()));
    if (ranks.empty())
        ranks.push_back(0);
    ChainComplex c(ranks);
    for (int d = 1; d <= dimension(); ++d) {
        SparseIntMatrix m(ranks[d - 1], ranks[d]);
        const auto& layer = simplices(d);
        Simplex face(static_cast<std::size_t>(d));
        for (int j = 0; j < static_cast<int>(layer.size()); ++j)
            for (int i = 0; i <= d; ++i) {
                std::size_t k = 0;
                for (int t = 0; t <= d; ++t)
                    if (t != i)
                        face[k++] = layer[j][t];
                m.add(index_of(face), j, i % 2 ? -1 : 1);
            }
        c.set_boundary(d, std::move(m));
    }
    return c;
}

SimplicialComplex SimplicialComplex::subdivision(const Budget& budget) const
{
    std::vector<std::pair<int, int>> ids;  // (dim, index) per vertex of sd
    for (int d = 0; d <= dimension(); ++d)
        for (int j = 0; j < static_cast<int>(simplices(d).size()); ++j) {
            ids.push_back({d, j});
        }
    auto face_of = [&](int a, int b) {
        const auto& sa = simplices(ids[a].first)[ids[a].second];
        const auto& sb = simplices(ids[b].first)[ids[b].second];
        return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
    };
    Poset p(static_cast<int>(ids.size()), face_of);
    return p.nerve(budget);
}

Poset::Poset(int n, const std::function<bool(int, int)>& leq)
    : n_(n), leq_(static_cast<std::size_t>(n) * n, 0)
{
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            leq_[static_cast<std::size_t>(a) * n + b] = (a == b || leq(a, b)) ? 1 : 0;
}

std::vector<int> Poset::minimal() const
{
    std::vector<int> out;
    for (int a = 0; a < n_; ++a) {
        bool min = true;
        for (int b = 0; b < n_ && min; ++b)
            min = !less(b, a);
        if (min)
            out.push_back(a);
    }
    return out;
}

std::vector<int> Poset::maximal() const
{
    std::vector<int> out;
    for (int a = 0; a < n_; ++a) {
        bool max = true;
        for (int b = 0; b < n_ && max; ++b)
            max = !less(a, b);
        if (max)
            out.push_back(a);
    }
    return out;
}

std::vector<int> Poset::lower_set(std::span<const int> s) const
{
    std::vector<int> out;
    for (int x = 0; x < n_; ++x)
        if (std::all_of(s.begin(), s.end(), [&](int t) { return leq(x, t); }))
            out.push_back(x);
    return out;
}

std::vector<int> Poset::upper_set(std::span<const int> s) const
{
    std::vector<int> out;
    for (int x = 0; x < n_; ++x)
        if (std::all_of(s.begin(), s.end(), [&](int t) { return leq(t, x); }))
            out.push_back(x);
    return out;
}

Poset Poset::induced(std::span<const int> elements) const
{
    return Poset(static_cast<int>(elements.size()),
                 [&](int a, int b) { return leq(elements[a], elements[b]); });
}

void Poset::validate() const
{
    for (int a = 0; a < n_; ++a) {
        if (!leq(a, a))
            throw std::logic_error("poset is not reflexive");
        for (int b = 0; b < n_; ++b) {
            if (a != b && leq(a, b) && leq(b, a))
                throw std::logic_error("poset is not antisymmetric");
            if (!leq(a, b))
                continue;
            for (int c = 0; c < n_; ++c)
                if (leq(b, c) && !leq(a, c))
                    throw std::logic_error("poset is not transitive");
        }
    }
}

SimplicialComplex Poset::nerve(const Budget& budget) const
{
    std::vector<Simplex> chains;
    Simplex chain;
    auto rec = [&](auto&& self, int last) -> void {
        Simplex sorted = chain;
        std::sort(sorted.begin(), sorted.end());
        chains.push_back(std::move(sorted));
        budget.check_simplices(chains.size(), "poset nerve");
        for (int b = 0; b < n_; ++b)
            if (less(last, b)) {
                chain.push_back(b);
                self(self, b);
                chain.pop_back();
            }
    };
    for (int a = 0; a < n_; ++a) {
        chain.assign(1, a);
        rec(rec, a);
    }
    return SimplicialComplex::from_closed(n_, std::move(chains));
}

bool e_leq(FreeModule& v, const PartialFlagSplit& x, const PartialFlagSplit& y)
{
    // every step of y occurs among the steps of x
    std::vector<int> pos;
    std::size_t k = 0;
    for (int s : y.steps) {
        while (k < x.steps.size() && x.steps[k] != s)
            ++k;
        if (k == x.steps.size())
            return false;
        pos.push_back(static_cast<int>(k));
        ++k;
    }
    for (std::size_t i = 0; i < y.steps.size(); ++i) {
        const int start = i == 0 ? 0 : pos[i - 1] + 1;
        const int end = pos[i];
        std::vector<std::vector<bool>> hit;
        for (int j = start; j <= end; ++j)
            hit.emplace_back(x.splittings[j].size(), false);
        for (int t : y.splittings[i]) {
            int j = start;
            while (j <= end && !v.contains(x.steps[j], t))
                ++j;
            if (j > end)
                return false;
            const int base = j == 0 ? v.zero() : x.steps[j - 1];
            const int img = v.sum(base, t);
            const auto& sj = x.splittings[j];
            auto it = std::lower_bound(sj.begin(), sj.end(), img);
            if (it == sj.end() || *it != img)
                return false;
            hit[j - start][it - sj.begin()] = true;
        }
        for (const auto& h : hit)
            if (std::find(h.begin(), h.end(), false) != h.end())
                return false;
    }
    return true;
}

PartialFlagSplit flag_element(const Flag& f)
{
    PartialFlagSplit p;
    p.steps = f.steps;
    for (int s : f.steps)
        p.splittings.push_back({s});
    return p;
}

PartialFlagSplit splitting_element(FreeModule& v, const Splitting& alpha)
{
    PartialFlagSplit p;
    p.steps = {v.whole()};
    std::vector<int> subs;
    for (int l : alpha.lines)
        subs.push_back(v.line_submodule(l));
    std::sort(subs.begin(), subs.end());
    p.splittings.push_back(std::move(subs));
    return p;
}

std::vector<PartialFlagSplit> enumerate_e(FreeModule& v)
{
    const int n = v.rank();
    std::set<PartialFlagSplit> out;
    std::vector<int> block(static_cast<std::size_t>(n));
    for (const auto& alpha : v.splittings()) {
        for (int r = 1; r <= n; ++r) {
            // all surjective assignments of the n lines to r ordered blocks
            std::fill(block.begin(), block.end(), 0);
            while (true) {
                std::vector<int> used(static_cast<std::size_t>(r), 0);
                for (int b : block)
                    used[b] = 1;
                if (std::find(used.begin(), used.end(), 0) == used.end()) {
                    PartialFlagSplit p;
                    std::vector<Vec> gens;
                    int prev = v.zero();
                    for (int b = 0; b < r; ++b) {
                        std::vector<int> s;
                        for (int i = 0; i < n; ++i)
                            if (block[i] == b) {
                                gens.push_back(v.lines().generator(alpha.lines[i]));
                                s.push_back(v.sum(prev, v.line_submodule(alpha.lines[i])));
                            }
                        std::sort(s.begin(), s.end());
                        prev = v.submodule(gens);
                        p.steps.push_back(prev);
                        p.splittings.push_back(std::move(s));
                    }
                    out.insert(std::move(p));
                    v.budget().check_simplices(out.size(), "E(V) enumeration");
                }
                int i = 0;
                while (i < n && block[i] == r - 1)
                    block[i++] = 0;
                if (i == n)
                    break;
                ++block[i];
            }
        }
    }
    return {out.begin(), out.end()};
}

EPoset::EPoset(FreeModule& v) : v_(&v), elements_(enumerate_e(v))
{
    std::stable_sort(elements_.begin(), elements_.end(), [](const auto& a, const auto& b) {
        if (a.length() != b.length())
            return a.length() > b.length();
        return a < b;
    });
    poset_ = Poset(size(), [&](int a, int b) {
        if (elements_[a].length() <= elements_[b].length())
            return false;
        return e_leq(v, elements_[a], elements_[b]);
    });
}

int EPoset::index_of(const PartialFlagSplit& x) const
{
    for (int i = 0; i < size(); ++i)
        if (elements_[i] == x)
            return i;
    return -1;
}

int EPoset::cell_dimension(int i) const
{
    return v_->rank() - element(i).length();
}

int EPoset::level(int i) const
{
    return v_->submodule_at(element(i).steps.front()).rank - 1;
}

std::vector<int> EPoset::elements_through(int w) const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        const auto& s = element(i).steps;
        if (std::find(s.begin(), s.end(), w) != s.end())
            out.push_back(i);
    }
    return out;
}

SimplicialComplex build_fl(FreeModule& v, const std::vector<Flag>& flags,
                           const std::vector<Splitting>& splittings)
{
    std::vector<Simplex> tops;
    for (const auto& alpha : splittings) {
        Simplex s;
        for (const auto& f : v.flags_of_splitting(alpha)) {
            auto it = std::lower_bound(flags.begin(), flags.end(), f);
            if (it == flags.end() || !(*it == f))
                throw std::logic_error("flag of a splitting missing from the flag list");
            s.push_back(static_cast<int>(it - flags.begin()));
        }
        tops.push_back(std::move(s));
    }
    return SimplicialComplex::from_maximal(static_cast<int>(flags.size()), std::move(tops), v.budget());
}

SimplicialComplex build_spl(FreeModule& v, const std::vector<Flag>& flags,
                            const std::vector<Splitting>& splittings)
{
    std::vector<PartialFlagSplit> top;
    for (const auto& alpha : splittings)
        top.push_back(splitting_element(v, alpha));
    std::vector<Simplex> tops;
    for (const auto& f : flags) {
        auto fe = flag_element(f);
        Simplex s;
        for (int j = 0; j < static_cast<int>(top.size()); ++j)
            if (e_leq(v, fe, top[j]))
                s.push_back(j);
        tops.push_back(std::move(s));
    }
    return SimplicialComplex::from_maximal(static_cast<int>(splittings.size()), std::move(tops), v.budget());
}

namespace {

int transport(FreeModule& dst, const FreeModule& src, int sub, const std::function<Vec(const Vec&)>& map,
              int base)
{
    const auto& s = src.submodule_at(sub);
    std::vector<Vec> gens;
    for (const auto& g : s.rank >= 0 ? s.basis : s.canonical)
        gens.push_back(map(g));
    return dst.sum(base, dst.submodule(std::move(gens)));
}

}  // namespace

PartialFlagSplit product_embedding(FreeModule& v, int w, FreeModule& wmod, const PartialFlagSplit& a,
                                   FreeModule& qmod, const PartialFlagSplit& b)
{
    const auto& ws = v.submodule_at(w);
    if (ws.rank < 0 || ws.rank != wmod.rank() || v.rank() - ws.rank != qmod.rank())
        throw ModuleError("product embedding: ranks do not match a free summand");
    const auto& ring = *v.ring();
    auto into_w = [&](const Vec& x) {
        Vec y(static_cast<std::size_t>(v.rank()), ring.zero());
        for (int i = 0; i < ws.rank; ++i)
            for (int j = 0; j < v.rank(); ++j)
                y[j] = ring.add(y[j], ring.mul(x[i], ws.basis[i][j]));
        return y;
    };
    auto chart = v.chart(w);
    auto lift = [&](const Vec& x) { return chart.lift(x); };
    PartialFlagSplit out;
    for (int i = 0; i < a.length(); ++i) {
        out.steps.push_back(transport(v, wmod, a.steps[i], into_w, v.zero()));
        std::vector<int> s;
        for (int t : a.splittings[i])
            s.push_back(transport(v, wmod, t, into_w, v.zero()));
        std::sort(s.begin(), s.end());
        out.splittings.push_back(std::move(s));
    }
    for (int i = 0; i < b.length(); ++i) {
        out.steps.push_back(transport(v, qmod, b.steps[i], lift, w));
        std::vector<int> s;
        for (int t : b.splittings[i])
            s.push_back(transport(v, qmod, t, lift, w));
        std::sort(s.begin(), s.end());
        out.splittings.push_back(std::move(s));
    }
    return out;
}

bool is_sphere_homology(const std::vector<HomologyGroup>& h, int k, bool empty)
{
    if (k < 0)
        return empty;
    if (empty || static_cast<int>(h.size()) < k + 1)
        return false;
    for (const auto& g : h) {
        if (!g.torsion.empty())
            return false;
        int expect = 0;
        if (g.degree == 0)
            expect = k == 0 ? 2 : 1;
        else if (g.degree == k)
            expect = 1;
        if (g.betti != expect)
            return false;
    }
    return true;
}

namespace {

using SparseChain = std::map<int, Integer>;

SparseChain chain_boundary(const SimplicialComplex& k, int d, const SparseChain& c)
{
    SparseChain out;
    Simplex face(static_cast<std::size_t>(d));
    for (const auto& [idx, coef] : c) {
        const auto& s = k.simplices(d)[idx];
        for (int i = 0; i <= d; ++i) {
            std::size_t m = 0;
            for (int t = 0; t <= d; ++t)
                if (t != i)
                    face[m++] = s[t];
            int f = k.index_of(face);
            auto& slot = out[f];
            slot += i % 2 ? -coef : coef;
            if (slot == 0)
                out.erase(f);
        }
    }
    return out;
}

}  // namespace

CellStructure::CellStructure(const EPoset& e, const SimplicialComplex& nerve)
{
    const Poset& poset = e.poset();
    const int n = e.size();
    cells_.resize(static_cast<std::size_t>(n));
    position_.assign(static_cast<std::size_t>(n), -1);
    for (int p = 0; p < n; ++p) {
        Cell& cell = cells_[p];
        cell.element = p;
        cell.dim = e.cell_dimension(p);
        const int d = cell.dim;
        std::array<int, 1> self{p};
        auto lower = poset.lower_set(self);
        std::vector<int> lprime;
        for (int x : lower)
            if (x != p) {
                if (x > p)
                    throw std::logic_error("element order is not a linear extension");
                lprime.push_back(x);
            }
        SparseChain w;  // on global (d-1)-simplices
        if (lprime.empty()) {
            cell.sphere = is_sphere_homology({}, d - 1, true);
        } else {
            auto sub = poset.induced(lprime).nerve();
            auto cc = sub.chain_complex();
            cell.boundary_homology = integral_homology(cc);
            cell.sphere = is_sphere_homology(cell.boundary_homology, d - 1, false);
            if (cell.sphere && sub.dimension() == d - 1) {
                std::vector<IntVec> ker;
                if (d - 1 == 0) {
                    SparseIntMatrix aug(1, sub.vertex_count());
                    for (int j = 0; j < sub.vertex_count(); ++j)
                        aug.add(0, j, 1);
                    ker = SmithReduction(aug, false, true).kernel_basis();
                } else {
                    ker = SmithReduction(cc.boundary(d - 1), false, true).kernel_basis();
                }
                if (ker.size() != 1)
                    throw std::logic_error("cell boundary has more than one top cycle");
                auto z = ker.front();
                auto first = std::find_if(z.begin(), z.end(), [](const Integer& x) { return x != 0; });
                if (first != z.end() && *first < 0)
                    for (auto& x : z)
                        x = -x;
                for (std::size_t j = 0; j < z.size(); ++j) {
                    if (z[j] == 0)
                        continue;
                    Simplex s;
                    for (int v : sub.simplices(d - 1)[j])
                        s.push_back(lprime[v]);
                    w[nerve.index_of(s)] = z[j];
                }
            }
        }
        if (!cell.sphere)
            throw std::logic_error("boundary of cell " + std::to_string(p) +
                                   " does not have the homology of a sphere");
        SparseChain chain;
        if (d == 0) {
            Simplex s{p};
            chain[nerve.index_of(s)] = 1;
        } else {
            for (const auto& [idx, coef] : w) {
                Simplex s = nerve.simplices(d - 1)[idx];
                s.push_back(p);
                int j = nerve.index_of(s);
                if (j < 0)
                    throw std::logic_error("cone simplex missing from the nerve");
                chain[j] = coef;
            }
        }
        for (const auto& [idx, coef] : chain)
            cell.chain.push_back({idx, coef});
        if (d > 0) {
            auto bz = chain_boundary(nerve, d, chain);
            SparseChain rebuilt;
            for (int q : lprime) {
                if (e.cell_dimension(q) != d - 1)
                    continue;
                const auto& [tidx, a] = cells_[q].chain.front();
                auto it = bz.find(tidx);
                if (it == bz.end())
                    continue;
                if (it->second % a != 0)
                    throw std::logic_error("non-integral incidence number");
                Integer c = it->second / a;
                cell.boundary.push_back({q, c});
                for (const auto& [j, v] : cells_[q].chain)
                    rebuilt[j] += c * v;
            }
            std::erase_if(rebuilt, [](const auto& kv) { return kv.second == 0; });
            if (rebuilt != bz)
                throw std::logic_error("cell boundary is not a combination of lower cells");
        }
        if (static_cast<int>(by_dim_.size()) <= d)
            by_dim_.resize(static_cast<std::size_t>(d) + 1);
        position_[p] = static_cast<int>(by_dim_[d].size());
        by_dim_[d].push_back(p);
    }
}

int CellStructure::count(int dim) const
{
    if (dim < 0 || dim > dimension())
        return 0;
    return static_cast<int>(by_dim_[static_cast<std::size_t>(dim)].size());
}

ChainComplex CellStructure::cellular_chain_complex() const
{
    std::vector<int> ranks;
    for (int d = 0; d <= dimension(); ++d)
        ranks.push_back(count(d));
    ChainComplex c(ranks);
    for (int d = 1; d <= dimension(); ++d) {
        SparseIntMatrix m(ranks[d - 1], ranks[d]);
        for (int p : by_dim_[d])
            for (const auto& [q, coef] : cells_[p].boundary)
                m.add(position_[q], position_[p], coef);
        c.set_boundary(d, std::move(m));
    }
    c.check_square_zero();
    return c;
}

}  // namespace etb
