#include "etb/modlin.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace etb {

Matrix::Matrix(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * cols, RingElement{0})
{
}

Matrix Matrix::identity(Ring ring, int n)
{
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = ring->one();
    return m;
}

Matrix Matrix::from_columns(Ring ring, std::span<const Vec> columns, int n)
{
    Matrix m(ring, n, static_cast<int>(columns.size()));
    for (int j = 0; j < m.cols_; ++j) {
        if (static_cast<int>(columns[j].size()) != n)
            throw ModuleError("column length mismatch");
        for (int i = 0; i < n; ++i)
            m.at(i, j) = columns[j][i];
    }
    return m;
}

Matrix Matrix::from_rows(Ring ring, std::span<const Vec> rows, int n)
{
    Matrix m(ring, static_cast<int>(rows.size()), n);
    for (int i = 0; i < m.rows_; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw ModuleError("row length mismatch");
        for (int j = 0; j < n; ++j)
            m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& other) const
{
    if (cols_ != other.rows_)
        throw ModuleError("matrix shape mismatch");
    Matrix out(ring_, rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            auto a = (*this)(i, k);
            if (a.value == 0)
                continue;
            for (int j = 0; j < other.cols_; ++j)
                out.at(i, j) = ring_->add(out(i, j), ring_->mul(a, other(k, j)));
        }
    return out;
}

Vec Matrix::apply(const Vec& v) const
{
    if (static_cast<int>(v.size()) != cols_)
        throw ModuleError("vector length mismatch");
    Vec out(static_cast<std::size_t>(rows_), ring_->zero());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out[i] = ring_->add(out[i], ring_->mul((*this)(i, j), v[j]));
    return out;
}

Vec Matrix::column(int j) const
{
    Vec out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        out[i] = (*this)(i, j);
    return out;
}

Vec Matrix::row(int i) const
{
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
               a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

namespace {

// Division-free determinant: dynamic programming over the set of columns
// used by the first rows, sign tracked by inversions.
RingElement det_dp(const FiniteRing& r, int n, auto&& entry)
{
    if (n == 0)
        return r.one();
    std::vector<RingElement> dp(std::size_t{1} << n, r.zero());
    dp[0] = r.one();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (dp[mask].value == 0)
            continue;
        int row = std::popcount(mask);
        if (row == n)
            continue;
        for (int c = 0; c < n; ++c) {
            if (mask & (1u << c))
                continue;
            auto a = entry(row, c);
            if (a.value == 0)
                continue;
            auto term = r.mul(dp[mask], a);
            if (std::popcount(mask >> (c + 1)) % 2 == 1)
                term = r.neg(term);
            auto& slot = dp[mask | (1u << c)];
            slot = r.add(slot, term);
        }
    }
    return dp[(std::size_t{1} << n) - 1];
}

}  // namespace

RingElement Matrix::det() const
{
    if (rows_ != cols_)
        throw ModuleError("determinant of a non-square matrix");
    return det_dp(*ring_, rows_, [this](int i, int j) { return (*this)(i, j); });
}

Matrix Matrix::inverse() const
{
    if (rows_ != cols_)
        throw ModuleError("inverse of a non-square matrix");
    const int n = rows_;
    auto d = det();
    if (!ring_->is_unit(d))
        throw NotInvertible("matrix is not invertible");
    auto dinv = ring_->inv(d);
    Matrix out(ring_, n, n);
    if (n == 1) {
        out.at(0, 0) = dinv;
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // cofactor of (i, j) lands at (j, i)
            auto c = det_dp(*ring_, n - 1, [&](int r, int s) {
                return (*this)(r < i ? r : r + 1, s < j ? s : s + 1);
            });
            if ((i + j) % 2 == 1)
                c = ring_->neg(c);
            out.at(j, i) = ring_->mul(c, dinv);
        }
    return out;
}

std::vector<std::uint32_t> Matrix::encode() const
{
    std::vector<std::uint32_t> out;
    out.reserve(a_.size() + 2);
    out.push_back(static_cast<std::uint32_t>(rows_));
    out.push_back(static_cast<std::uint32_t>(cols_));
    for (auto x : a_)
        out.push_back(x.value);
    return out;
}

RingElement minor_det(const FiniteRing& ring, std::span<const Vec> rows, std::span<const int> cols)
{
    if (rows.size() != cols.size())
        throw ModuleError("minor is not square");
    return det_dp(ring, static_cast<int>(rows.size()),
                  [&](int i, int j) { return rows[i][static_cast<std::size_t>(cols[j])]; });
}

bool is_unimodular(const FiniteRing& ring, std::span<const RingElement> v)
{
    return ring.generates_unit_ideal(v);
}

bool in_general_position(const FiniteRing& ring, std::span<const Vec> vectors)
{
    const int k = static_cast<int>(vectors.size());
    if (k == 0)
        return true;
    const int n = static_cast<int>(vectors[0].size());
    if (k > n)
        throw ModuleError("more vectors than the rank of the module");
    std::vector<RingElement> minors;
    std::vector<int> cols(static_cast<std::size_t>(k));
    std::iota(cols.begin(), cols.end(), 0);
    while (true) {
        auto m = minor_det(ring, vectors, cols);
        if (ring.is_unit(m))
            return true;
        minors.push_back(m);
        int i = k - 1;
        while (i >= 0 && cols[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++cols[i];
        for (int j = i + 1; j < k; ++j)
            cols[j] = cols[j - 1] + 1;
    }
    return ring.generates_unit_ideal(minors);
}

Vec canonical_line_generator(const FiniteRing& ring, const Vec& v)
{
    if (!is_unimodular(ring, v))
        throw ModuleError("vector does not span a line");
    Vec best = v;
    Vec cur(v.size());
    for (auto u : ring.units()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            cur[i] = ring.mul(u, v[i]);
        if (cur < best)
            best = cur;
    }
    return best;
}

namespace {

struct Gcdex
{
    std::int64_t g, s, t;
};

Gcdex gcdex(std::int64_t a, std::int64_t b)
{
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        auto q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    return {r0, s0, t0};
}

std::int64_t mod(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

// Howell form of the row span over Z/N, rows as integers in [0, N).
std::vector<std::vector<std::int64_t>> howell(std::vector<std::vector<std::int64_t>> a,
                                             std::int64_t N, int n)
{
    int r = 0;
    for (int j = 0; j < n; ++j) {
        if (r >= static_cast<int>(a.size()))
            break;
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            auto b = a[i][j];
            if (b == 0)
                continue;
            auto x = a[r][j];
            auto e = gcdex(x, b);
            auto u = -b / e.g, v = x / e.g;
            for (int c = 0; c < n; ++c) {
                auto pr = a[r][c], pi = a[i][c];
                a[r][c] = mod(e.s * pr + e.t * pi, N);
                a[i][c] = mod(u * pr + v * pi, N);
            }
        }
        auto x = a[r][j];
        if (x == 0)
            continue;
        auto g = std::gcd(x, N);
        // unit c with c*x = g mod N
        auto m = N / g;
        std::int64_t c = m == 1 ? 1 : mod(gcdex(x / g, m).s, m);
        while (std::gcd(c, N) != 1)
            c += m;
        for (int col = 0; col < n; ++col)
            a[r][col] = mod(c * a[r][col], N);
        for (int i = 0; i < r; ++i) {
            auto q = a[i][j] / g;
            if (q == 0)
                continue;
            for (int col = 0; col < n; ++col)
                a[i][col] = mod(a[i][col] - q * a[r][col], N);
        }
        if (g != 1) {
            std::vector<std::int64_t> ann(static_cast<std::size_t>(n));
            bool nonzero = false;
            for (int col = 0; col < n; ++col) {
                ann[col] = mod(m * a[r][col], N);
                nonzero = nonzero || ann[col] != 0;
            }
            if (nonzero)
                a.push_back(std::move(ann));
        }
        ++r;
    }
    a.resize(static_cast<std::size_t>(std::min<int>(r, static_cast<int>(a.size()))));
    std::erase_if(a, [](const auto& row) {
        return std::all_of(row.begin(), row.end(), [](auto x) { return x == 0; });
    });
    return a;
}

std::vector<Vec> rref_field(const FiniteRing& ring, std::vector<Vec> a, int n)
{
    int r = 0;
    const int rows = static_cast<int>(a.size());
    for (int j = 0; j < n && r < rows; ++j) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][j].value != 0) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(a[r], a[p]);
        auto inv = ring.inv(a[r][j]);
        for (auto& x : a[r])
            x = ring.mul(x, inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][j].value == 0)
                continue;
            auto f = a[i][j];
            for (int c = 0; c < n; ++c)
                a[i][c] = ring.sub(a[i][c], ring.mul(f, a[r][c]));
        }
        ++r;
    }
    a.resize(static_cast<std::size_t>(r));
    return a;
}

}  // namespace

std::vector<Vec> canonical_span(const FiniteRing& ring, std::vector<Vec> gens, int n)
{
    for (const auto& g : gens)
        if (static_cast<int>(g.size()) != n)
            throw ModuleError("generator length mismatch");
    if (ring.kind() == RingKind::ExtensionField)
        return rref_field(ring, std::move(gens), n);
    std::vector<std::vector<std::int64_t>> a;
    a.reserve(gens.size());
    for (const auto& g : gens) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            row[j] = g[j].value;
        a.push_back(std::move(row));
    }
    auto h = howell(std::move(a), ring.cardinality(), n);
    std::vector<Vec> out;
    out.reserve(h.size());
    for (const auto& row : h) {
        Vec v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            v[j] = RingElement{static_cast<std::uint32_t>(row[j])};
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vec> span_elements(const FiniteRing& ring, std::span<const Vec> gens, int n)
{
    std::set<Vec> acc{Vec(static_cast<std::size_t>(n), ring.zero())};
    for (const auto& g : gens) {
        std::set<Vec> next;
        for (const auto& s : acc)
            for (std::uint32_t c = 0; c < ring.cardinality(); ++c) {
                Vec v = s;
                for (int j = 0; j < n; ++j)
                    v[j] = ring.add(v[j], ring.mul(RingElement{c}, g[j]));
                next.insert(std::move(v));
            }
        acc = std::move(next);
    }
    return {acc.begin(), acc.end()};
}

std::uint64_t vector_code(const FiniteRing& ring, std::span<const RingElement> v)
{
    std::uint64_t code = 0;
    for (auto x : v)
        code = code * ring.cardinality() + x.value;
    return code;
}

Vec vector_from_code(const FiniteRing& ring, std::uint64_t code, int n)
{
    Vec v(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        v[i] = RingElement{static_cast<std::uint32_t>(code % ring.cardinality())};
        code /= ring.cardinality();
    }
    return v;
}

LineSpace::LineSpace(Ring ring, int n, const Budget& budget) : ring_(std::move(ring)), n_(n)
{
    if (n < 1)
        throw ModuleError("module rank must be positive");
    long double total = 1;
    for (int i = 0; i < n; ++i)
        total *= ring_->cardinality();
    if (total > static_cast<long double>(budget.vectors))
        throw BudgetExceeded("line enumeration: q^n = " + std::to_string(static_cast<double>(total)) +
                             " candidate vectors exceeds budget " + std::to_string(budget.vectors));
    const auto count = static_cast<std::uint64_t>(total);
    by_code_.assign(count, -1);
    std::vector<std::uint64_t> canon_of(count, 0);
    for (std::uint64_t code = 1; code < count; ++code) {
        auto v = vector_from_code(*ring_, code, n);
        if (!is_unimodular(*ring_, v))
            continue;
        auto c = canonical_line_generator(*ring_, v);
        auto cc = vector_code(*ring_, c);
        canon_of[code] = cc;
        if (cc == code) {
            by_code_[code] = static_cast<std::int32_t>(lines_.size());
            lines_.push_back(std::move(v));
        }
    }
    for (std::uint64_t code = 1; code < count; ++code)
        if (canon_of[code] != 0 && by_code_[code] < 0)
            by_code_[code] = by_code_[canon_of[code]];
}

std::optional<int> LineSpace::index_of(std::span<const RingElement> v) const
{
    if (static_cast<int>(v.size()) != n_)
        throw ModuleError("vector length mismatch");
    auto id = by_code_[vector_code(*ring_, v)];
    if (id < 0)
        return std::nullopt;
    return id;
}

QuotientChart::QuotientChart(Ring ring, std::vector<Vec> sub_basis, std::vector<Vec> complement)
    : ring_(std::move(ring))
{
    k_ = static_cast<int>(sub_basis.size());
    std::vector<Vec> cols = std::move(sub_basis);
    for (auto& c : complement)
        cols.push_back(std::move(c));
    if (cols.empty())
        throw ModuleError("empty chart");
    n_ = static_cast<int>(cols[0].size());
    if (static_cast<int>(cols.size()) != n_)
        throw ModuleError("chart basis has the wrong size");
    basis_ = Matrix::from_columns(ring_, cols, n_);
    inverse_ = basis_.inverse();
}

Vec QuotientChart::project(const Vec& v) const
{
    auto x = inverse_.apply(v);
    return Vec(x.begin() + k_, x.end());
}

Vec QuotientChart::lift(const Vec& w) const
{
    if (static_cast<int>(w.size()) != n_ - k_)
        throw ModuleError("quotient vector length mismatch");
    Vec x(static_cast<std::size_t>(k_), ring_->zero());
    x.insert(x.end(), w.begin(), w.end());
    return basis_.apply(x);
}

std::vector<Vec> complete_to_basis(const LineSpace& lines, std::vector<Vec> partial)
{
    const auto& ring = *lines.ring();
    const int n = lines.rank();
    if (!in_general_position(ring, partial))
        throw ModuleError("vectors do not span a free direct summand");
    auto try_add = [&](const Vec& v) {
        if (static_cast<int>(partial.size()) == n)
            return;
        partial.push_back(v);
        if (!in_general_position(ring, partial))
            partial.pop_back();
    };
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n), ring.zero());
        e[i] = ring.one();
        try_add(e);
    }
    for (const auto& g : lines.generators())
        try_add(g);
    if (static_cast<int>(partial.size()) != n)
        throw ModuleError("could not complete to a basis");
    return partial;
}

FreeModule::FreeModule(Ring ring, int n, const Budget& budget)
    : ring_(ring), n_(n), budget_(budget), lines_(ring, n, budget)
{
    line_sub_.assign(static_cast<std::size_t>(lines_.size()), -1);
    zero_ = submodule({});
    std::vector<Vec> e;
    for (int i = 0; i < n; ++i) {
        Vec v(static_cast<std::size_t>(n), ring_->zero());
        v[i] = ring_->one();
        e.push_back(std::move(v));
    }
    whole_ = submodule(std::move(e));
}

int FreeModule::intern(std::vector<Vec> canonical, Submodule sub)
{
    std::vector<std::uint32_t> key;
    key.reserve(canonical.size() * static_cast<std::size_t>(n_) + 1);
    key.push_back(static_cast<std::uint32_t>(canonical.size()));
    for (const auto& row : canonical)
        for (auto x : row)
            key.push_back(x.value);
    auto it = by_key_.find(key);
    if (it != by_key_.end()) {
        auto& existing = subs_[static_cast<std::size_t>(it->second)];
        if (existing.rank < 0 && sub.rank >= 0) {
            existing.rank = sub.rank;
            existing.basis = std::move(sub.basis);
        }
        return it->second;
    }
    sub.canonical = std::move(canonical);
    int id = static_cast<int>(subs_.size());
    subs_.push_back(std::move(sub));
    by_key_.emplace(std::move(key), id);
    return id;
}

int FreeModule::submodule(std::vector<Vec> gens)
{
    Submodule sub;
    if (static_cast<int>(gens.size()) <= n_ && in_general_position(*ring_, gens)) {
        sub.rank = static_cast<int>(gens.size());
        sub.basis = gens;
    }
    auto canon = canonical_span(*ring_, std::move(gens), n_);
    return intern(std::move(canon), std::move(sub));
}

int FreeModule::line_submodule(int line)
{
    auto& slot = line_sub_.at(static_cast<std::size_t>(line));
    if (slot < 0)
        slot = submodule({lines_.generator(line)});
    return slot;
}

std::optional<int> FreeModule::as_line(int sub) const
{
    const auto& s = submodule_at(sub);
    if (s.rank != 1)
        return std::nullopt;
    return lines_.index_of(s.basis[0]);
}

int FreeModule::sum(int a, int b)
{
    if (a > b)
        std::swap(a, b);
    if (a == zero_ || a == b)
        return b;
    const auto key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    if (auto it = sum_cache_.find(key); it != sum_cache_.end())
        return it->second;
    std::vector<Vec> gens;
    for (int id : {a, b}) {
        const auto& s = subs_[static_cast<std::size_t>(id)];
        const auto& src = s.rank >= 0 ? s.basis : s.canonical;
        gens.insert(gens.end(), src.begin(), src.end());
    }
    int id = submodule(std::move(gens));
    sum_cache_.emplace(key, id);
    return id;
}

bool FreeModule::contains(int outer, int inner)
{
    return sum(outer, inner) == outer;
}

std::vector<std::vector<int>> FreeModule::general_position_sets(int p) const
{
    std::vector<std::vector<int>> out;
    const int k = p + 1;
    if (k < 1 || k > n_)
        return out;
    std::vector<int> chosen;
    std::vector<Vec> vecs;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(chosen.size()) == k) {
            out.push_back(chosen);
            budget_.check_simplices(out.size(), "general position sets");
            return;
        }
        for (int l = start; l < lines_.size(); ++l) {
            vecs.push_back(lines_.generator(l));
            if (in_general_position(*ring_, vecs)) {
                chosen.push_back(l);
                self(self, l + 1);
                chosen.pop_back();
            }
            vecs.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<Splitting> FreeModule::splittings()
{
    std::vector<Splitting> out;
    for (auto& s : general_position_sets(n_ - 1))
        out.push_back(Splitting{std::move(s)});
    return out;
}

std::vector<Flag> FreeModule::flags()
{
    std::vector<Flag> out;
    std::vector<int> steps;
    auto rec = [&](auto&& self, int prev) -> void {
        if (static_cast<int>(steps.size()) == n_) {
            out.push_back(Flag{steps});
            budget_.check_simplices(out.size(), "flag enumeration");
            return;
        }
        std::set<int> children;
        const auto basis = submodule_at(prev).basis;
        for (int l = 0; l < lines_.size(); ++l) {
            auto gens = basis;
            gens.push_back(lines_.generator(l));
            if (!in_general_position(*ring_, gens))
                continue;
            children.insert(submodule(std::move(gens)));
        }
        for (int c : children) {
            steps.push_back(c);
            self(self, c);
            steps.pop_back();
        }
    };
    rec(rec, zero_);
    std::sort(out.begin(), out.end());
    return out;
}

Flag FreeModule::flag_of_ordering(std::span<const int> ordered_lines)
{
    Flag f;
    std::vector<Vec> gens;
    for (int l : ordered_lines) {
        gens.push_back(lines_.generator(l));
        f.steps.push_back(submodule(gens));
    }
    return f;
}

std::vector<Flag> FreeModule::flags_of_splitting(const Splitting& alpha)
{
    std::vector<int> order = alpha.lines;
    std::sort(order.begin(), order.end());
    std::vector<Flag> out;
    do {
        out.push_back(flag_of_ordering(order));
    } while (std::next_permutation(order.begin(), order.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QuotientChart FreeModule::chart(int sub)
{
    if (auto it = charts_.find(sub); it != charts_.end())
        return it->second;
    const auto& s = submodule_at(sub);
    if (s.rank < 0)
        throw ModuleError("quotient by a submodule that is not a free summand");
    auto full = complete_to_basis(lines_, s.basis);
    std::vector<Vec> sub_basis(full.begin(), full.begin() + s.rank);
    std::vector<Vec> complement(full.begin() + s.rank, full.end());
    QuotientChart c(ring_, std::move(sub_basis), std::move(complement));
    charts_.emplace(sub, c);
    return c;
}

int FreeModule::quotient_pushforward(int line, int sub, const LineSpace& quotient_lines)
{
    auto c = chart(sub);
    auto w = c.project(lines_.generator(line));
    auto id = quotient_lines.index_of(w);
    if (!id)
        throw ModuleError("line does not map to a line of the quotient");
    return *id;
}

int FreeModule::image(const Matrix& g, int sub)
{
    const auto& s = submodule_at(sub);
    std::vector<Vec> gens;
    for (const auto& v : s.rank >= 0 ? s.basis : s.canonical)
        gens.push_back(g.apply(v));
    return submodule(std::move(gens));
}

}  // namespace etb
