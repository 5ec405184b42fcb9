#include "etb/grassmann.hpp"

#include "etb/equivariant.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace etb {

bool extends_k_simplex(const FreeModule& v, std::span<const int> s, int line)
{
    if (std::find(s.begin(), s.end(), line) != s.end())
        return false;
    const int n = v.rank();
    const int m = static_cast<int>(s.size());
    if (m >= 31)
        throw std::invalid_argument("simplex too large");
    const auto& ring = *v.ring();
    // every subset T of s with |T| <= n - 1, together with the new line
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (std::popcount(mask) > n - 1)
            continue;
        std::vector<Vec> vecs{v.lines().generator(line)};
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i))
                vecs.push_back(v.lines().generator(s[i]));
        if (!in_general_position(ring, vecs))
            return false;
    }
    return true;
}

GPComplex build_k_complex(FreeModule& v, int max_dim)
{
    GPComplex out;
    out.n = v.rank();
    out.max_dim = max_dim;
    std::vector<Simplex> all;
    Simplex cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (!cur.empty()) {
            all.push_back(cur);
            v.budget().check_simplices(all.size(), "general position complex");
        }
        if (static_cast<int>(cur.size()) == max_dim + 1)
            return;
        for (int l = start; l < v.lines().size(); ++l)
            if (extends_k_simplex(v, cur, l)) {
                cur.push_back(l);
                self(self, l + 1);
                cur.pop_back();
            }
    };
    rec(rec, 0);
    out.k = SimplicialComplex::from_closed(v.lines().size(), std::move(all));
    return out;
}

std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& k)
{
    auto h = integral_homology(k.chain_complex());
    if (!h.empty() && h[0].betti > 0)
        --h[0].betti;
    return h;
}

namespace {

bool is_field(const Ring& ring)
{
    return ring->units().size() + 1 == ring->cardinality();
}

std::vector<int> standard_frame(const FreeModule& v)
{
    const int n = v.rank();
    const auto& r = *v.ring();
    std::vector<int> frame;
    Vec all(static_cast<std::size_t>(n), r.one());
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n), r.zero());
        e[i] = r.one();
        frame.push_back(*v.lines().index_of(e));
    }
    frame.push_back(*v.lines().index_of(all));
    return frame;
}

}  // namespace

int max_arc(const Ring& ring, int n, const Budget& budget)
{
    if (!is_field(ring))
        throw std::invalid_argument("arcs are computed over fields only");
    if (n == 1)
        return 1;
    FreeModule v(ring, n, budget);
    auto cur = standard_frame(v);
    int best = static_cast<int>(cur.size());
    std::size_t visited = 0;
    auto rec = [&](auto&& self, int start) -> void {
        best = std::max(best, static_cast<int>(cur.size()));
        budget.check_simplices(++visited, "arc search");
        for (int l = start; l < v.lines().size(); ++l)
            if (extends_k_simplex(v, cur, l)) {
                cur.push_back(l);
                self(self, l + 1);
                cur.pop_back();
            }
    };
    rec(rec, 0);
    return best;
}

DModule compute_d(const Ring& ring, int n, const Budget& budget)
{
    FreeModule v(ring, n, budget);
    DModule d;
    d.n = n;
    if (n == 1) {
        const int m = v.lines().size();
        for (int i = 1; i < m; ++i) {
            IntVec x(static_cast<std::size_t>(m), 0);
            x[0] = -1;
            x[i] = 1;
            d.basis.push_back(std::move(x));
        }
        d.rank = m - 1;
        d.equals_boundaries = m == 1;
        return d;
    }
    auto k = build_k_complex(v, n);
    auto c = k.k.chain_complex();
    SmithReduction s(c.boundary(n - 1), false, true);
    d.basis = s.kernel_basis();
    d.rank = static_cast<int>(d.basis.size());
    auto h = integral_homology(c);
    d.equals_boundaries = h[n - 1].betti == 0 && h[n - 1].torsion.empty();
    return d;
}

bool CbarPresentation::is_zero(const IntVec& x) const
{
    if (static_cast<int>(x.size()) != size())
        throw std::invalid_argument("vector does not match the generators");
    if (std::all_of(x.begin(), x.end(), [](const Integer& e) { return e == 0; }))
        return true;
    return reduction && reduction->in_column_span(x);
}

GrassmannTower::GrassmannTower(Ring ring, int max_rank, const Budget& budget) : ring_(std::move(ring)), budget_(budget)
{
    if (!is_field(ring_))
        throw std::invalid_argument("coinvariant complexes are built over fields only");
    for (int n = 1; n <= max_rank; ++n) {
        modules_.push_back(std::make_unique<FreeModule>(ring_, n, budget_));
        frame_.push_back(n >= 2 ? standard_frame(*modules_.back()) : std::vector<int>{});
    }
}

FreeModule& GrassmannTower::module(int n)
{
    if (n < 1 || n > max_rank())
        throw std::out_of_range("rank outside the tower");
    return *modules_[static_cast<std::size_t>(n - 1)];
}

std::vector<int> GrassmannTower::translate(int n, const Matrix& g, const std::vector<int>& tuple)
{
    auto& v = module(n);
    std::vector<int> out;
    for (int l : tuple) {
        auto id = v.lines().index_of(g.apply(v.lines().generator(l)));
        if (!id)
            throw std::logic_error("matrix does not act on lines");
        out.push_back(*id);
    }
    return out;
}

int GrassmannTower::canonical(int n, const std::vector<int>& tuple)
{
    const int r = static_cast<int>(tuple.size()) - 1;
    if (r < n || n < 2)
        return -1;
    auto& v = module(n);
    std::vector<Vec> cols;
    for (int i = 0; i < n; ++i)
        cols.push_back(v.lines().generator(tuple[i]));
    auto m = Matrix::from_columns(ring_, cols, n);
    if (!m.is_invertible())
        throw ModuleError("tuple does not start with a frame");
    auto c = m.inverse().apply(v.lines().generator(tuple[n]));
    for (int i = 0; i < n; ++i) {
        if (!ring_->is_unit(c[i]))
            throw ModuleError("tuple does not start with a frame");
        for (int j = 0; j < n; ++j)
            m.at(j, i) = ring_->mul(m(j, i), c[i]);
    }
    auto image = translate(n, m.inverse(), tuple);
    const auto& gens = cbar(n, r);
    (void)gens;
    const auto& idx = index_[{n, r}];
    auto it = idx.find(image);
    if (it == idx.end())
        throw ModuleError("tuple is not a simplex of K(V)");
    return it->second;
}

const CbarPresentation& GrassmannTower::cbar(int n, int r)
{
    if (auto it = cbar_.find({n, r}); it != cbar_.end())
        return it->second;
    CbarPresentation p;
    p.n = n;
    p.r = r;
    std::map<std::vector<int>, int> idx;
    if (r >= n && n >= 2) {
        auto& v = module(n);
        auto cur = frame_[static_cast<std::size_t>(n - 1)];
        auto rec = [&](auto&& self) -> void {
            if (static_cast<int>(cur.size()) == r + 1) {
                idx.emplace(cur, p.size());
                p.generators.push_back(cur);
                budget_.check_simplices(p.generators.size(), "orbit generators");
                return;
            }
            for (int l = 0; l < v.lines().size(); ++l)
                if (extends_k_simplex(v, cur, l)) {
                    cur.push_back(l);
                    self(self);
                    cur.pop_back();
                }
        };
        rec(rec);
    }
    index_[{n, r}] = idx;
    auto& slot = cbar_.emplace(std::pair{n, r}, std::move(p)).first->second;
    // relations x + (x with entries i, i+1 swapped)
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < slot.size(); ++x)
        for (int i = 0; i < r; ++i) {
            auto t = slot.generators[x];
            std::swap(t[i], t[i + 1]);
            pairs.emplace_back(x, canonical(n, t));
        }
    slot.relations = SparseIntMatrix(slot.size(), static_cast<int>(pairs.size()));
    for (int j = 0; j < static_cast<int>(pairs.size()); ++j) {
        slot.relations.add(pairs[j].first, j, 1);
        slot.relations.add(pairs[j].second, j, 1);
    }
    slot.reduction = std::make_shared<SmithReduction>(slot.relations, true);
    slot.group.degree = r;
    slot.group.betti = slot.size() - slot.reduction->rank();
    for (auto& f : slot.reduction->invariant_factors())
        if (f > 1)
            slot.group.torsion.push_back(f);
    return slot;
}

IntVec GrassmannTower::del_prime_of(int n, const std::vector<int>& tuple)
{
    const int r = static_cast<int>(tuple.size()) - 1;
    const auto& target = cbar(n, r - 1);
    IntVec out(static_cast<std::size_t>(target.size()), 0);
    if (target.size() == 0)
        return out;
    for (int i = 0; i <= r; ++i) {
        auto face = tuple;
        face.erase(face.begin() + i);
        out[static_cast<std::size_t>(canonical(n, face))] += i % 2 ? -1 : 1;
    }
    return out;
}

IntVec GrassmannTower::del_doubleprime_of(int n, const std::vector<int>& tuple)
{
    const int r = static_cast<int>(tuple.size()) - 1;
    if (n < 2)
        throw std::invalid_argument("d'' needs rank at least 2");
    const auto& target = cbar(n - 1, r - 1);
    IntVec out(static_cast<std::size_t>(target.size()), 0);
    if (target.size() == 0)
        return out;
    auto& v = module(n);
    auto& q = module(n - 1);
    for (int i = 0; i <= r; ++i) {
        int sub = v.line_submodule(tuple[i]);
        std::vector<int> image;
        for (int j = 0; j <= r; ++j)
            if (j != i)
                image.push_back(v.quotient_pushforward(tuple[j], sub, q.lines()));
        out[static_cast<std::size_t>(canonical(n - 1, image))] += i % 2 ? -1 : 1;
    }
    return out;
}

namespace {

SparseIntMatrix from_columns(int rows, const std::vector<IntVec>& cols)
{
    SparseIntMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 0; i < rows; ++i)
            if (cols[j][i] != 0)
                m.add(i, j, cols[j][i]);
    return m;
}

IntVec column(const SparseIntMatrix& m, int c)
{
    IntVec v(static_cast<std::size_t>(m.rows()), 0);
    for (const auto& [r, x] : m.column(c))
        v[r] = x;
    return v;
}

// [a | b] side by side
SparseIntMatrix concat(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("row counts differ");
    SparseIntMatrix m(a.rows(), a.cols() + b.cols());
    for (int c = 0; c < a.cols(); ++c)
        for (const auto& [r, x] : a.column(c))
            m.add(r, c, x);
    for (int c = 0; c < b.cols(); ++c)
        for (const auto& [r, x] : b.column(c))
            m.add(r, a.cols() + c, x);
    return m;
}

}  // namespace

SparseIntMatrix GrassmannTower::del_prime(int n, int r)
{
    const auto& src = cbar(n, r);
    const int rows = r >= 1 ? cbar(n, r - 1).size() : 0;
    std::vector<IntVec> cols;
    for (const auto& t : src.generators)
        cols.push_back(del_prime_of(n, t));
    return from_columns(rows, cols);
}

SparseIntMatrix GrassmannTower::del_doubleprime(int n, int r)
{
    const auto& src = cbar(n, r);
    const int rows = n >= 2 && r >= 1 ? cbar(n - 1, r - 1).size() : 0;
    std::vector<IntVec> cols;
    for (const auto& t : src.generators)
        cols.push_back(n >= 2 ? del_doubleprime_of(n, t) : IntVec{});
    return from_columns(rows, cols);
}

TotalComplexReport check_total_complex(GrassmannTower& t, int max_r, int max_n)
{
    TotalComplexReport rep;
    rep.max_r = max_r;
    rep.max_n = max_n;
    auto vanishes = [](const SparseIntMatrix& m, const CbarPresentation& target) {
        for (int c = 0; c < m.cols(); ++c)
            if (!target.is_zero(column(m, c)))
                return false;
        return true;
    };
    for (int n = 1; n <= max_n; ++n)
        for (int r = 0; r <= max_r; ++r) {
            rep.groups[{n, r}] = t.cbar(n, r).group;
            if (t.cbar(n, r).size() == 0 || r < 2)
                continue;
            rep.prime_square_zero =
                rep.prime_square_zero && vanishes(t.del_prime(n, r - 1) * t.del_prime(n, r), t.cbar(n, r - 2));
            if (n >= 2) {
                auto a = t.del_prime(n - 1, r - 1) * t.del_doubleprime(n, r);
                auto b = t.del_doubleprime(n, r - 1) * t.del_prime(n, r);
                SparseIntMatrix sum(a.rows(), a.cols());
                for (int c = 0; c < a.cols(); ++c) {
                    for (const auto& [row, x] : a.column(c))
                        sum.add(row, c, x);
                    for (const auto& [row, x] : b.column(c))
                        sum.add(row, c, x);
                }
                rep.anticommute = rep.anticommute && vanishes(sum, t.cbar(n - 1, r - 2));
            }
            if (n >= 3)
                rep.doubleprime_square_zero = rep.doubleprime_square_zero &&
                                              vanishes(t.del_doubleprime(n - 1, r - 1) * t.del_doubleprime(n, r),
                                                       t.cbar(n - 2, r - 2));
        }
    return rep;
}

HomologyGroup presented_homology(const SparseIntMatrix& in, const CbarPresentation& mid, const SparseIntMatrix& out,
                                 const CbarPresentation& target)
{
    const int b = mid.size();
    HomologyGroup h;
    h.degree = mid.r;
    if (b == 0)
        return h;
    // lattice K = {x : out x = 0 in the target}
    std::vector<IntVec> kgens;
    if (target.size() == 0) {
        for (int i = 0; i < b; ++i) {
            IntVec e(static_cast<std::size_t>(b), 0);
            e[i] = 1;
            kgens.push_back(std::move(e));
        }
    } else {
        SmithReduction s(concat(out, target.relations), false, true);
        for (auto& x : s.kernel_basis()) {
            x.resize(static_cast<std::size_t>(b));
            kgens.push_back(std::move(x));
        }
    }
    SmithReduction sk(from_columns(b, kgens), true);
    // image lattice I = in + relations, in coordinates of the basis of K
    auto image = concat(in, mid.relations);
    const auto& piv = sk.pivots();
    SparseIntMatrix coords(static_cast<int>(piv.size()), image.cols());
    for (int c = 0; c < image.cols(); ++c) {
        auto u = sk.apply_u(column(image, c));
        for (std::size_t j = 0; j < piv.size(); ++j) {
            const auto& x = u[static_cast<std::size_t>(piv[j].row)];
            if (x == 0)
                continue;
            if (x % piv[j].value != 0)
                throw std::logic_error("image is not contained in the kernel");
            coords.add(static_cast<int>(j), c, x / piv[j].value);
        }
    }
    SmithReduction sc(coords);
    h.betti = static_cast<int>(piv.size()) - sc.rank();
    for (auto& f : sc.invariant_factors())
        if (f > 1)
            h.torsion.push_back(f);
    return h;
}

BlochReport bloch_cokernel(const Ring& ring, const Budget& budget)
{
    GrassmannTower t(ring, 2, budget);
    BlochReport rep;
    rep.ring = ring->descriptor();
    const auto& c3 = t.cbar(2, 3);
    auto m = concat(t.del_prime(2, 4), c3.relations);
    rep.generators = c3.size();
    rep.relations = m.cols();
    SmithReduction s(m);
    rep.group.degree = 3;
    rep.group.betti = c3.size() - s.rank();
    for (auto& f : s.invariant_factors())
        if (f > 1)
            rep.group.torsion.push_back(f);
    rep.rational_dim = rep.group.betti;
    return rep;
}

std::string to_string(ClaimVerdict v)
{
    switch (v) {
    case ClaimVerdict::Pass:
        return "pass";
    case ClaimVerdict::Fail:
        return "fail";
    case ClaimVerdict::Vacuous:
        return "vacuous";
    }
    return "?";
}

ClaimReport claim_check(const Ring& ring, const Budget& budget)
{
    ClaimReport rep;
    rep.ring = ring->descriptor();
    rep.arc = max_arc(ring, 3, budget);
    GrassmannTower t(ring, 3, budget);
    const auto& c4 = t.cbar(3, 4);
    if (c4.size() == 0) {
        rep.verdict = ClaimVerdict::Vacuous;
        return rep;
    }
    const auto& c3 = t.cbar(3, 3);
    auto out = t.del_prime(3, 4);
    rep.h4 = presented_homology(t.del_prime(3, 5), c4, out, c3);
    // the cycle lattice of Cbar_4(3)
    std::vector<IntVec> cycles;
    SmithReduction s(concat(out, c3.relations), false, true);
    for (auto& x : s.kernel_basis()) {
        x.resize(static_cast<std::size_t>(c4.size()));
        cycles.push_back(std::move(x));
    }
    rep.cycles = static_cast<int>(cycles.size());
    const auto& target = t.cbar(2, 3);
    SmithReduction bounds(concat(t.del_prime(2, 4), target.relations), true);
    auto dpp = t.del_doubleprime(3, 4);
    bool ok = true;
    for (const auto& z : cycles)
        ok = ok && bounds.in_column_span(dpp.apply(z));
    rep.verdict = ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    return rep;
}

HomologyGroup cbar_direct(const Ring& ring, int n, int r, const Budget& budget)
{
    FreeModule v(ring, n, budget);
    auto k = build_k_complex(v, r);
    ZGModule m;
    m.dim = r <= k.k.dimension() ? static_cast<int>(k.k.simplices(r).size()) : 0;
    if (m.dim == 0)
        return HomologyGroup{r, 0, {}};
    for (const auto& g : group_generators(ring, n, GroupFlavor::FullGL))
        m.actions.push_back(simplicial_chain_map(k.k, k.k, act_on_lines(v, g), r));
    auto h = coinvariants(m);
    h.degree = r;
    return h;
}

}  // namespace etb
