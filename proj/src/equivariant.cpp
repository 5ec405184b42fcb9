#include "etb/equivariant.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace etb {

std::vector<Matrix> elementary_generators(const Ring& ring, int n)
{
    std::vector<Matrix> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            for (std::uint32_t a = 1; a < ring->cardinality(); ++a) {
                auto m = Matrix::identity(ring, n);
                m.at(i, j) = RingElement{a};
                out.push_back(std::move(m));
            }
        }
    return out;
}

std::vector<Matrix> group_generators(const Ring& ring, int n, GroupFlavor flavor)
{
    std::vector<Matrix> out;
    if (flavor == GroupFlavor::Elementary || flavor == GroupFlavor::FullGL)
        out = elementary_generators(ring, n);
    if (flavor == GroupFlavor::Diagonal || flavor == GroupFlavor::FullGL)
        for (int i = 0; i < n; ++i)
            for (auto u : ring->units()) {
                if (u == ring->one())
                    continue;
                auto m = Matrix::identity(ring, n);
                m.at(i, i) = u;
                out.push_back(std::move(m));
            }
    if (flavor == GroupFlavor::Permutation || flavor == GroupFlavor::FullGL)
        for (int i = 0; i + 1 < n; ++i) {
            Matrix m(ring, n, n);
            for (int k = 0; k < n; ++k) {
                int to = k == i ? i + 1 : k == i + 1 ? i : k;
                m.at(to, k) = ring->one();
            }
            out.push_back(std::move(m));
        }
    if (out.empty())
        out.push_back(Matrix::identity(ring, n));
    return out;
}

std::vector<Matrix> closure(const Ring& ring, int n, const std::vector<Matrix>& gens, const Budget& budget)
{
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<Matrix> out{Matrix::identity(ring, n)};
    seen.insert(out.front().encode());
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            auto h = g * out[i];
            if (seen.insert(h.encode()).second) {
                out.push_back(std::move(h));
                budget.check_group(out.size(), "group closure");
            }
        }
    std::sort(out.begin(), out.end(), [](const Matrix& a, const Matrix& b) { return a.encode() < b.encode(); });
    return out;
}

std::vector<Matrix> enumerate_group(const Ring& ring, int n, GroupFlavor flavor, const Budget& budget)
{
    return closure(ring, n, group_generators(ring, n, flavor), budget);
}

std::vector<Matrix> brute_force_gl(const Ring& ring, int n, const Budget& budget)
{
    long double total = 1;
    for (int i = 0; i < n * n; ++i)
        total *= ring->cardinality();
    if (total > static_cast<long double>(budget.vectors))
        throw BudgetExceeded("brute-force GL enumeration exceeds the vector budget");
    std::vector<Matrix> out;
    const auto count = static_cast<std::uint64_t>(total);
    for (std::uint64_t code = 0; code < count; ++code) {
        auto entries = vector_from_code(*ring, code, n * n);
        Matrix m(ring, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) = entries[static_cast<std::size_t>(i) * n + j];
        if (m.is_invertible())
            out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const Matrix& a, const Matrix& b) { return a.encode() < b.encode(); });
    return out;
}

Matrix projective_normal_form(const Matrix& g)
{
    const auto& r = *g.ring();
    Matrix best = g;
    auto best_code = g.encode();
    for (auto u : r.units()) {
        Matrix h(g.ring(), g.rows(), g.cols());
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j)
                h.at(i, j) = r.mul(u, g(i, j));
        auto code = h.encode();
        if (code < best_code) {
            best_code = std::move(code);
            best = std::move(h);
        }
    }
    return best;
}

std::vector<int> act_on_lines(const FreeModule& v, const Matrix& g)
{
    std::vector<int> out;
    for (const auto& gen : v.lines().generators()) {
        auto id = v.lines().index_of(g.apply(gen));
        if (!id)
            throw std::logic_error("matrix does not act on lines");
        out.push_back(*id);
    }
    return out;
}

Splitting act_on_splitting(const FreeModule& v, const Matrix& g, const Splitting& s)
{
    Splitting out;
    for (int l : s.lines) {
        auto id = v.lines().index_of(g.apply(v.lines().generator(l)));
        if (!id)
            throw std::logic_error("matrix does not act on lines");
        out.lines.push_back(*id);
    }
    std::sort(out.lines.begin(), out.lines.end());
    return out;
}

Flag act_on_flag(FreeModule& v, const Matrix& g, const Flag& f)
{
    Flag out;
    for (int s : f.steps)
        out.steps.push_back(v.image(g, s));
    return out;
}

PartialFlagSplit act_on_e(FreeModule& v, const Matrix& g, const PartialFlagSplit& p)
{
    PartialFlagSplit out;
    for (int s : p.steps)
        out.steps.push_back(v.image(g, s));
    for (const auto& s : p.splittings) {
        std::vector<int> t;
        for (int x : s)
            t.push_back(v.image(g, x));
        std::sort(t.begin(), t.end());
        out.splittings.push_back(std::move(t));
    }
    return out;
}

std::vector<Matrix> stabilizer_of_splitting(const FreeModule& v, const Splitting& beta,
                                            const std::vector<Matrix>& group)
{
    std::vector<Matrix> out;
    for (const auto& g : group)
        if (act_on_splitting(v, g, beta) == beta)
            out.push_back(g);
    return out;
}

std::vector<int> permute_flags(FreeModule& v, const Matrix& g, const std::vector<Flag>& flags)
{
    std::vector<int> out;
    for (const auto& f : flags) {
        auto h = act_on_flag(v, g, f);
        auto it = std::lower_bound(flags.begin(), flags.end(), h);
        if (it == flags.end() || !(*it == h))
            throw std::logic_error("image of a flag is not a flag");
        out.push_back(static_cast<int>(it - flags.begin()));
    }
    return out;
}

std::vector<int> permute_splittings(const FreeModule& v, const Matrix& g, const std::vector<Splitting>& splittings)
{
    std::vector<int> out;
    for (const auto& s : splittings) {
        auto h = act_on_splitting(v, g, s);
        auto it = std::lower_bound(splittings.begin(), splittings.end(), h);
        if (it == splittings.end() || !(*it == h))
            throw std::logic_error("image of a splitting is not a splitting");
        out.push_back(static_cast<int>(it - splittings.begin()));
    }
    return out;
}

std::vector<int> permute_e(const EPoset& e, const Matrix& g)
{
    std::map<PartialFlagSplit, int> index;
    for (int i = 0; i < e.size(); ++i)
        index.emplace(e.element(i), i);
    std::vector<int> out;
    for (const auto& p : e.elements()) {
        auto it = index.find(act_on_e(e.module(), g, p));
        if (it == index.end())
            throw std::logic_error("image of an element of E(V) is missing");
        out.push_back(it->second);
    }
    return out;
}

SparseIntMatrix simplicial_chain_map(const SimplicialComplex& source, const SimplicialComplex& target,
                                     const std::vector<int>& vertex_map, int d)
{
    const auto& src = source.simplices(d);
    SparseIntMatrix m(static_cast<int>(target.simplices(d).size()), static_cast<int>(src.size()));
    for (int j = 0; j < static_cast<int>(src.size()); ++j) {
        Simplex img;
        for (int v : src[j])
            img.push_back(vertex_map.at(static_cast<std::size_t>(v)));
        // sign of the sorting permutation
        int inversions = 0;
        for (std::size_t a = 0; a < img.size(); ++a)
            for (std::size_t b = a + 1; b < img.size(); ++b)
                inversions += img[a] > img[b];
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end())
            continue;
        int idx = target.index_of(img);
        if (idx < 0)
            throw std::logic_error("vertex map is not simplicial");
        m.add(idx, j, inversions % 2 ? -1 : 1);
    }
    return m;
}

HomologyGroup coinvariants(const ZGModule& m)
{
    SparseIntMatrix rel(m.dim, m.dim * static_cast<int>(m.actions.size()));
    int col = 0;
    for (const auto& a : m.actions) {
        if (a.rows() != m.dim || a.cols() != m.dim)
            throw std::invalid_argument("action matrix has the wrong shape");
        for (int x = 0; x < m.dim; ++x, ++col) {
            for (const auto& [r, v] : a.column(x))
                rel.add(r, col, v);
            rel.add(x, col, -1);
        }
    }
    SmithReduction s(rel);
    HomologyGroup h;
    h.betti = m.dim - s.rank();
    for (auto& f : s.invariant_factors())
        if (f > 1)
            h.torsion.push_back(f);
    return h;
}

bool ElementaryReport::passed() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
}

namespace {

std::vector<Vec> padded_generators(const FreeModule& small, int sub, int big_rank)
{
    const auto& s = small.submodule_at(sub);
    std::vector<Vec> gens;
    for (auto g : s.rank >= 0 ? s.basis : s.canonical) {
        g.resize(static_cast<std::size_t>(big_rank), small.ring()->zero());
        gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace

Flag include_flag(FreeModule& small, FreeModule& big, const Flag& f)
{
    if (big.rank() != small.rank() + 1)
        throw std::invalid_argument("include_flag extends by exactly one rank");
    Flag out;
    for (int s : f.steps)
        out.steps.push_back(big.submodule(padded_generators(small, s, big.rank())));
    out.steps.push_back(big.whole());
    return out;
}

PartialFlagSplit include_e(FreeModule& small, FreeModule& big, const PartialFlagSplit& p)
{
    PartialFlagSplit out;
    for (int i = 0; i < p.length(); ++i) {
        out.steps.push_back(big.submodule(padded_generators(small, p.steps[i], big.rank())));
        std::vector<int> s;
        for (int t : p.splittings[i])
            s.push_back(big.submodule(padded_generators(small, t, big.rank())));
        std::sort(s.begin(), s.end());
        out.splittings.push_back(std::move(s));
    }
    if (big.rank() > small.rank()) {
        int w = out.steps.back();
        std::vector<int> s;
        for (int k = small.rank(); k < big.rank(); ++k) {
            Vec e(static_cast<std::size_t>(big.rank()), big.ring()->zero());
            e[k] = big.ring()->one();
            s.push_back(big.sum(w, big.submodule({e})));
        }
        std::sort(s.begin(), s.end());
        out.steps.push_back(big.whole());
        out.splittings.push_back(std::move(s));
    }
    return out;
}

ElementaryReport elementary_triviality_check(const Ring& ring, int n, int degree, const Budget& budget)
{
    ElementaryReport rep;
    rep.ring = ring->descriptor();
    rep.n = n;
    rep.degree = degree;
    FreeModule small(ring, n, budget), big(ring, n + 1, budget);
    auto sflags = small.flags(), bflags = big.flags();
    auto sfl = build_fl(small, sflags, small.splittings());
    auto bfl = build_fl(big, bflags, big.splittings());
    std::vector<int> inc;
    for (const auto& f : sflags) {
        auto h = include_flag(small, big, f);
        auto it = std::lower_bound(bflags.begin(), bflags.end(), h);
        if (it == bflags.end() || !(*it == h))
            throw std::logic_error("included flag is not a flag");
        inc.push_back(static_cast<int>(it - bflags.begin()));
    }
    auto sc = sfl.chain_complex(), bc = bfl.chain_complex();
    if (degree > sc.top_degree() || degree > bc.top_degree())
        throw std::invalid_argument("degree exceeds the complex dimension");
    HomologyBasis hs(sc, degree), hb(bc, degree);
    rep.source_rank = hs.size();
    rep.target_group = hb.group();
    auto i_d = simplicial_chain_map(sfl, bfl, inc, degree);
    std::vector<IntVec> images;
    for (const auto& z : hs.representatives())
        images.push_back(i_d.apply(z));
    for (auto& g : elementary_generators(ring, n + 1)) {
        auto perm = permute_flags(big, g, bflags);
        auto gd = simplicial_chain_map(bfl, bfl, perm, degree);
        bool ok = true;
        std::vector<IntVec> ev;
        for (const auto& x : images) {
            auto y = gd.apply(x);
            for (std::size_t k = 0; k < y.size(); ++k)
                y[k] -= x[k];
            ok = ok && hb.is_cycle(y) && hb.is_boundary(y);
            ev.push_back(hb.coordinates(y));
        }
        rep.generators.push_back(std::move(g));
        rep.verdicts.push_back(ok);
        rep.evidence.push_back(std::move(ev));
    }
    return rep;
}

int rational_rank(const std::vector<IntVec>& columns, int rows)
{
    SparseIntMatrix m(rows, static_cast<int>(columns.size()));
    for (int j = 0; j < static_cast<int>(columns.size()); ++j)
        for (int i = 0; i < rows; ++i)
            m.add(i, j, columns[j][i]);
    return SmithReduction(m).rank();
}

namespace {

IntVec free_part(const HomologyBasis& h, const IntVec& cycle)
{
    auto c = h.coordinates(cycle);
    c.resize(static_cast<std::size_t>(h.free_rank()));
    return c;
}

struct EtData
{
    FreeModule v;
    EPoset e;
    SimplicialComplex nerve;
    ChainComplex chains;

    EtData(const Ring& ring, int n, const Budget& budget)
        : v(ring, n, budget), e(v), nerve(e.poset().nerve(budget)), chains(nerve.chain_complex())
    {
    }
};

int map_rank(EtData& src, EtData& dst, const HomologyBasis& hs, const HomologyBasis& ht, int m)
{
    if (hs.free_rank() == 0 || ht.free_rank() == 0)
        return 0;
    std::map<PartialFlagSplit, int> index;
    for (int i = 0; i < dst.e.size(); ++i)
        index.emplace(dst.e.element(i), i);
    std::vector<int> vmap;
    for (const auto& p : src.e.elements())
        vmap.push_back(index.at(include_e(src.v, dst.v, p)));
    auto f = simplicial_chain_map(src.nerve, dst.nerve, vmap, m);
    std::vector<IntVec> cols;
    auto reps = hs.representatives();
    for (int j = 0; j < hs.free_rank(); ++j)
        cols.push_back(free_part(ht, f.apply(reps[j])));
    return rational_rank(cols, ht.free_rank());
}

}  // namespace

StabilizationProbe stabilization_probe(const Ring& ring, int m, int d, const Budget& budget)
{
    StabilizationProbe out;
    out.ring = ring->descriptor();
    out.m = m;
    out.d = d;
    const int k = m + 1;
    if (d < k)
        throw std::invalid_argument("target rank must be at least m + 1");
    EtData src(ring, k, budget);
    if (m > src.chains.top_degree()) {
        return out;
    }
    HomologyBasis hs(src.chains, m);
    out.source_dim = hs.free_rank();
    std::vector<IntVec> rel;
    auto reps = hs.representatives();
    for (const auto& g : group_generators(ring, k, GroupFlavor::FullGL)) {
        auto perm = permute_e(src.e, g);
        auto gm = simplicial_chain_map(src.nerve, src.nerve, perm, m);
        for (int j = 0; j < hs.free_rank(); ++j) {
            auto y = gm.apply(reps[j]);
            for (std::size_t t = 0; t < y.size(); ++t)
                y[t] -= reps[j][t];
            rel.push_back(free_part(hs, y));
        }
    }
    out.coinvariant_dim = out.source_dim - (rel.empty() ? 0 : rational_rank(rel, out.source_dim));
    EtData dst(ring, d, budget);
    if (m <= dst.chains.top_degree()) {
        HomologyBasis ht(dst.chains, m);
        out.target_dim = ht.free_rank();
        out.map_rank = map_rank(src, dst, hs, ht, m);
    }
    EtData next(ring, k + 1, budget);
    if (m <= next.chains.top_degree()) {
        HomologyBasis hn(next.chains, m);
        out.kernel_dim = out.source_dim - map_rank(src, next, hs, hn, m);
    } else {
        out.kernel_dim = out.source_dim;
    }
    return out;
}

}  // namespace etb
