#include "etb/spectral.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace etb {

int FilteredComplex::min_level() const
{
    int m = 0;
    bool first = true;
    for (const auto& l : levels)
        for (int x : l) {
            m = first ? x : std::min(m, x);
            first = false;
        }
    return m;
}

int FilteredComplex::max_level() const
{
    int m = 0;
    for (const auto& l : levels)
        for (int x : l)
            m = std::max(m, x);
    return m;
}

void FilteredComplex::validate() const
{
    if (static_cast<int>(levels.size()) != complex.top_degree() + 1)
        throw std::logic_error("filtration levels do not match the complex");
    for (int d = 1; d <= complex.top_degree(); ++d) {
        const auto& b = complex.boundary(d);
        for (int c = 0; c < b.cols(); ++c)
            for (const auto& [r, v] : b.column(c))
                if (levels[d - 1][r] > levels[d][c])
                    throw std::logic_error("boundary raises the filtration level");
    }
}

FilteredComplex filter_et(const EPoset& e, const CellStructure& cs)
{
    FilteredComplex fc;
    fc.complex = cs.cellular_chain_complex();
    fc.levels.resize(static_cast<std::size_t>(cs.dimension() + 1));
    for (int d = 0; d <= cs.dimension(); ++d)
        for (int cell : cs.cells_of_dim(d))
            fc.levels[d].push_back(e.level(cell));
    fc.validate();
    return fc;
}

int SpectralPage::dim(int p, int q) const
{
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
}

int SpectralPage::rank(int p, int q) const
{
    auto it = ranks.find({p, q});
    return it == ranks.end() ? 0 : it->second;
}

bool SpectralSequence::converges() const
{
    const auto& inf = infinity();
    for (int m = 0; m < static_cast<int>(homology.size()); ++m) {
        int total = 0;
        for (const auto& [pq, d] : inf.dims)
            if (pq.first + pq.second == m)
                total += d;
        if (total != homology[m])
            return false;
    }
    return true;
}

namespace {

class Engine
{
  public:
    Engine(const FilteredComplex& fc, Coefficients k) : fc_(fc), k_(k) {}

    int size(int d) const { return d < 0 || d > fc_.complex.top_degree() ? 0 : fc_.complex.rank(d); }

    // {c in F_p C_d : dc in F_{p-r}}
    std::vector<FVec> a(int r, int p, int d) const
    {
        const int n = size(d);
        if (n == 0)
            return {};
        std::vector<int> vars;
        for (int i = 0; i < n; ++i)
            if (fc_.levels[d][i] <= p)
                vars.push_back(i);
        std::vector<FVec> rows;
        if (d > 0) {
            const auto& b = fc_.complex.boundary(d);
            for (int j = 0; j < size(d - 1); ++j) {
                if (fc_.levels[d - 1][j] <= p - r)
                    continue;
                FVec row(vars.size(), 0);
                bool nonzero = false;
                for (std::size_t t = 0; t < vars.size(); ++t) {
                    auto v = b.get(j, vars[t]);
                    if (v != 0) {
                        row[t] = reduce(v);
                        nonzero = nonzero || sgn(row[t]) != 0;
                    }
                }
                if (nonzero)
                    rows.push_back(std::move(row));
            }
        }
        std::vector<FVec> out;
        for (auto& x : kernel(rows, static_cast<int>(vars.size()), k_)) {
            FVec full(static_cast<std::size_t>(n), 0);
            for (std::size_t t = 0; t < vars.size(); ++t)
                full[vars[t]] = x[t];
            out.push_back(std::move(full));
        }
        return out;
    }

    std::vector<FVec> boundary_of(const std::vector<FVec>& xs, int d) const
    {
        std::vector<FVec> out;
        if (d == 0 || d > fc_.complex.top_degree())
            return out;
        for (const auto& x : xs)
            out.push_back(apply(fc_.complex.boundary(d), x, k_));
        return out;
    }

    struct Quotient
    {
        std::vector<FVec> denominator;  // independent
        std::vector<FVec> complement;   // lifts of a basis of E^r
    };

    const Quotient& page(int r, int p, int d)
    {
        auto key = std::make_tuple(r, p, d);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        Quotient q;
        const int n = size(d);
        auto den = a(r - 1, p - 1, d);
        auto bd = boundary_of(a(r - 1, p + r - 1, d + 1), d + 1);
        den.insert(den.end(), bd.begin(), bd.end());
        q.denominator = span_basis(den, n, k_);
        auto current = q.denominator;
        int rk = static_cast<int>(current.size());
        for (auto& x : a(r, p, d)) {
            current.push_back(x);
            int nr = rank(current, n, k_);
            if (nr > rk) {
                rk = nr;
                q.complement.push_back(std::move(x));
            } else {
                current.pop_back();
            }
        }
        return cache_.emplace(key, std::move(q)).first->second;
    }

    // coordinates of x in E^r_{p,d} (x must lie in A^r_p)
    FVec coordinates(int r, int p, int d, const FVec& x)
    {
        const auto& q = page(r, p, d);
        auto basis = q.complement;
        basis.insert(basis.end(), q.denominator.begin(), q.denominator.end());
        auto c = solve(basis, x, size(d), k_);
        if (!c)
            throw std::logic_error("spectral sequence: image outside A^r");
        c->resize(q.complement.size());
        return *c;
    }

    std::vector<FVec> differential(int r, int p, int d)
    {
        std::vector<FVec> cols;
        if (d == 0)
            return cols;
        for (const auto& c : page(r, p, d).complement)
            cols.push_back(coordinates(r, p - r, d - 1, apply(fc_.complex.boundary(d), c, k_)));
        return cols;
    }

    mpq_class reduce(const Integer& v) const
    {
        if (k_.p == 0)
            return mpq_class(v);
        mpz_class r = v % k_.p;
        if (r < 0)
            r += k_.p;
        return mpq_class(r);
    }

  private:
    const FilteredComplex& fc_;
    Coefficients k_;
    std::map<std::tuple<int, int, int>, Quotient> cache_;
};

std::vector<FVec> compose(const std::vector<FVec>& outer, const std::vector<FVec>& inner, int rows, Coefficients k)
{
    std::vector<FVec> out;
    for (const auto& c : inner) {
        FVec y(static_cast<std::size_t>(rows), 0);
        for (std::size_t j = 0; j < c.size(); ++j)
            for (int i = 0; i < rows; ++i)
                y[i] += c[j] * outer[j][i];
        if (k.p != 0)
            for (auto& e : y) {
                mpz_class n = e.get_num() % k.p;
                e = n < 0 ? mpz_class(n + k.p) : n;
            }
        out.push_back(std::move(y));
    }
    return out;
}

}  // namespace

SpectralSequence run_spectral(const FilteredComplex& fc, Coefficients k)
{
    fc.validate();
    SpectralSequence ss;
    ss.coefficients = k;
    ss.homology = field_homology(fc.complex, k.p);
    Engine eng(fc, k);
    const int lo = fc.min_level(), hi = fc.max_level();
    const int top = fc.complex.top_degree();
    const int last = hi - lo + 1;
    for (int r = 1; r <= last; ++r) {
        SpectralPage page;
        page.r = r;
        for (int p = lo; p <= hi; ++p)
            for (int d = 0; d <= top; ++d) {
                int dim = static_cast<int>(eng.page(r, p, d).complement.size());
                page.dims[{p, d - p}] = dim;
                auto m = eng.differential(r, p, d);
                int target_dim = d == 0 ? 0 : static_cast<int>(eng.page(r, p - r, d - 1).complement.size());
                page.ranks[{p, d - p}] = m.empty() || target_dim == 0 ? 0 : rank(m, target_dim, k);
                page.differentials[{p, d - p}] = std::move(m);
            }
        for (int p = lo; p <= hi; ++p)
            for (int d = 2; d <= top; ++d) {
                const auto& m1 = page.differentials[{p, d - p}];
                const auto& m2 = page.differentials[{p - r, d - 1 - (p - r)}];
                int rows = d - 2 >= 0 && p - 2 * r >= lo ? page.dim(p - 2 * r, d - 2 - (p - 2 * r)) : 0;
                if (m1.empty() || m2.empty() || rows == 0)
                    continue;
                for (const auto& col : compose(m2, m1, rows, k))
                    for (const auto& e : col)
                        if (sgn(e) != 0)
                            throw std::logic_error("d^r d^r is not zero");
            }
        if (!ss.pages.empty()) {
            const auto& prev = ss.pages.back();
            for (const auto& [pq, dim] : page.dims) {
                auto [p, q] = pq;
                int expected = prev.dim(p, q) - prev.rank(p, q) - prev.rank(p + r - 1, q - (r - 1) + 1);
                if (expected != dim)
                    throw std::logic_error("E^{r+1} is not the homology of E^r");
            }
        }
        ss.pages.push_back(std::move(page));
    }
    for (const auto& [pq, rk] : ss.pages.back().ranks)
        if (rk != 0)
            throw std::logic_error("last page has a nonzero differential");
    return ss;
}

int connecting_rank(const FilteredComplex& fc, int p, int n, Coefficients k)
{
    const auto& c = fc.complex;
    auto at_level = [&](int d, int level) {
        std::vector<int> out;
        if (d < 0 || d > c.top_degree())
            return out;
        for (int i = 0; i < c.rank(d); ++i)
            if (fc.levels[d][i] == level)
                out.push_back(i);
        return out;
    };
    auto entry = [&](int d, int row, int col) {
        Integer v = c.boundary(d).get(row, col);
        if (k.p == 0)
            return mpq_class(v);
        mpz_class r = v % k.p;
        return mpq_class(r < 0 ? mpz_class(r + k.p) : r);
    };
    // boundary of the quotient complex F_l / F_{l-1} from degree d, as columns
    auto quotient_boundary = [&](int d, int level) {
        std::vector<FVec> cols;
        auto src = at_level(d, level), tgt = at_level(d - 1, level);
        for (int s : src) {
            FVec col(tgt.size(), 0);
            for (std::size_t t = 0; t < tgt.size(); ++t)
                col[t] = entry(d, tgt[t], s);
            cols.push_back(std::move(col));
        }
        return cols;
    };
    auto src = at_level(n, p);
    auto tgt = at_level(n - 1, p - 1);
    if (src.empty() || tgt.empty() || n == 0)
        return 0;
    // cycles of the level-p quotient in degree n
    std::vector<FVec> rows;
    auto below = at_level(n - 1, p);
    for (std::size_t t = 0; t < below.size(); ++t) {
        FVec row(src.size(), 0);
        for (std::size_t s = 0; s < src.size(); ++s)
            row[s] = entry(n, below[t], src[s]);
        rows.push_back(std::move(row));
    }
    auto cycles = kernel(rows, static_cast<int>(src.size()), k);
    std::vector<FVec> images;
    for (const auto& z : cycles) {
        FVec img(tgt.size(), 0);
        for (std::size_t s = 0; s < src.size(); ++s) {
            if (sgn(z[s]) == 0)
                continue;
            for (std::size_t t = 0; t < tgt.size(); ++t)
                img[t] += z[s] * entry(n, tgt[t], src[s]);
        }
        if (k.p != 0)
            for (auto& e : img) {
                mpz_class r = e.get_num() % k.p;
                e = r < 0 ? mpz_class(r + k.p) : r;
            }
        images.push_back(std::move(img));
    }
    // images are cycles of the level p-1 quotient; count them modulo its boundaries
    auto bounds = quotient_boundary(n, p - 1);
    const int dim = static_cast<int>(tgt.size());
    auto both = bounds;
    both.insert(both.end(), images.begin(), images.end());
    return rank(both, dim, k) - rank(bounds, dim, k);
}

int et_homology_dim(const Ring& ring, int m, int s, Coefficients k, const Budget& budget)
{
    if (m == 0)
        return s == 0 ? 1 : 0;
    FreeModule v(ring, m, budget);
    EPoset e(v);
    auto nerve = e.poset().nerve(budget);
    CellStructure cs(e, nerve);
    auto h = field_homology(cs.cellular_chain_complex(), k.p);
    return s < static_cast<int>(h.size()) && s >= 0 ? h[s] : 0;
}

std::vector<int> e1_structural(const Ring& ring, int n, int s, Coefficients k, const Budget& budget)
{
    FreeModule v(ring, n, budget);
    std::vector<int> out;
    for (int r = 0; r < n; ++r) {
        // V / W(q) is free of rank n - r - 1 for every q in L_r(V)
        auto count = static_cast<int>(v.general_position_sets(r).size());
        out.push_back(count * et_homology_dim(ring, n - r - 1, s, k, budget));
    }
    return out;
}

SpectralSequence et_spectral_sequence(const Ring& ring, int n, Coefficients k, const Budget& budget)
{
    FreeModule v(ring, n, budget);
    EPoset e(v);
    auto nerve = e.poset().nerve(budget);
    CellStructure cs(e, nerve);
    return run_spectral(filter_et(e, cs), k);
}

BottomRowReport bottom_row_check(const Ring& ring, int n, Coefficients k, const Budget& budget)
{
    if (n < 2)
        throw std::invalid_argument("bottom row check needs rank at least 2");
    BottomRowReport rep;
    auto ss = et_spectral_sequence(ring, n, k, budget);
    FreeModule v(ring, n, budget);
    std::vector<Simplex> simplices;
    for (int m = 0; m < n; ++m) {
        auto sets = v.general_position_sets(m);
        rep.chain_dims.push_back(static_cast<int>(sets.size()));
        simplices.insert(simplices.end(), sets.begin(), sets.end());
    }
    auto kc = SimplicialComplex::from_closed(v.lines().size(), simplices).chain_complex();
    const auto& e1 = ss.page(1);
    const auto& e2 = ss.pages.size() > 1 ? ss.page(2) : ss.page(1);
    for (int m = 0; m < n; ++m) {
        rep.e1_dims.push_back(e1.dim(m, 0));
        rep.e2_dims.push_back(e2.dim(m, 0));
        if (m > 0) {
            rep.e1_ranks.push_back(e1.rank(m, 0));
            rep.chain_ranks.push_back(rank_mod(kc.boundary(m), k.p));
        }
    }
    rep.e2_pattern = rep.e2_dims[0] == 1;
    for (int m = 1; m + 1 < n; ++m)
        rep.e2_pattern = rep.e2_pattern && rep.e2_dims[m] == 0;
    return rep;
}

}  // namespace etb
