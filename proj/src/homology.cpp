#include "etb/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace etb {

SparseIntMatrix::SparseIntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), cols_data_(static_cast<std::size_t>(cols))
{
}

void SparseIntMatrix::add(int r, int c, const Integer& v)
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    if (v == 0)
        return;
    auto& col = cols_data_[static_cast<std::size_t>(c)];
    auto [it, fresh] = col.try_emplace(r, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0)
            col.erase(it);
    }
}

Integer SparseIntMatrix::get(int r, int c) const
{
    const auto& col = cols_data_.at(static_cast<std::size_t>(c));
    auto it = col.find(r);
    return it == col.end() ? Integer(0) : it->second;
}

std::size_t SparseIntMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : cols_data_)
        n += c.size();
    return n;
}

IntVec SparseIntMatrix::apply(const IntVec& x) const
{
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("vector length mismatch");
    IntVec out(static_cast<std::size_t>(rows_));
    for (int c = 0; c < cols_; ++c) {
        if (x[c] == 0)
            continue;
        for (const auto& [r, v] : cols_data_[c])
            out[r] += v * x[c];
    }
    return out;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& other) const
{
    if (cols_ != other.rows_)
        throw std::invalid_argument("matrix shape mismatch");
    SparseIntMatrix out(rows_, other.cols_);
    for (int c = 0; c < other.cols_; ++c)
        for (const auto& [k, b] : other.cols_data_[c])
            for (const auto& [r, a] : cols_data_[k])
                out.add(r, c, a * b);
    return out;
}

SparseIntMatrix SparseIntMatrix::transpose() const
{
    SparseIntMatrix out(cols_, rows_);
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c])
            out.add(c, r, v);
    return out;
}

std::vector<std::vector<Integer>> SparseIntMatrix::dense() const
{
    std::vector<std::vector<Integer>> a(static_cast<std::size_t>(rows_),
                                        std::vector<Integer>(static_cast<std::size_t>(cols_)));
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c])
            a[r][c] = v;
    return a;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Integer>>& a, int cols)
{
    if (cols < 0)
        cols = a.empty() ? 0 : static_cast<int>(a[0].size());
    SparseIntMatrix m(static_cast<int>(a.size()), cols);
    for (int r = 0; r < m.rows_; ++r)
        for (int c = 0; c < cols; ++c)
            m.add(r, c, a[r][c]);
    return m;
}

namespace {

// Working copy for the reduction: rows hold the values, columns only the
// row indices of their nonzeros.
struct Work
{
    std::vector<std::map<int, Integer>> row;
    std::vector<std::set<int>> col;

    void put(int r, int c, Integer v)
    {
        if (v == 0) {
            row[r].erase(c);
            col[c].erase(r);
        } else {
            row[r][c] = std::move(v);
            col[c].insert(r);
        }
    }

    Integer get(int r, int c) const
    {
        auto it = row[r].find(c);
        return it == row[r].end() ? Integer(0) : it->second;
    }

    // row_i += a * row_j
    void row_add(int i, int j, const Integer& a)
    {
        for (const auto& [c, v] : std::map<int, Integer>(row[j]))
            put(i, c, get(i, c) + a * v);
    }

    void row_2x2(int i, int j, const Integer& a, const Integer& b, const Integer& c, const Integer& d)
    {
        std::set<int> cs;
        for (const auto& e : row[i])
            cs.insert(e.first);
        for (const auto& e : row[j])
            cs.insert(e.first);
        for (int k : cs) {
            Integer x = get(i, k), y = get(j, k);
            put(i, k, a * x + b * y);
            put(j, k, c * x + d * y);
        }
    }

    // col_i += a * col_j
    void col_add(int i, int j, const Integer& a)
    {
        for (int r : std::set<int>(col[j]))
            put(r, i, get(r, i) + a * get(r, j));
    }

    void col_2x2(int i, int j, const Integer& a, const Integer& b, const Integer& c, const Integer& d)
    {
        std::set<int> rs(col[i]);
        rs.insert(col[j].begin(), col[j].end());
        for (int r : rs) {
            Integer x = get(r, i), y = get(r, j);
            put(r, i, a * x + b * y);
            put(r, j, c * x + d * y);
        }
    }
};

bool is_unit(const Integer& v)
{
    return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0;
}

}  // namespace

SmithReduction::SmithReduction(const SparseIntMatrix& m, bool track_rows, bool track_cols)
    : rows_(m.rows()), cols_(m.cols()), track_rows_(track_rows), track_cols_(track_cols),
      pivot_of_row_(static_cast<std::size_t>(m.rows()), -1),
      pivot_of_col_(static_cast<std::size_t>(m.cols()), -1)
{
    reduce(m);
}

void SmithReduction::reduce(const SparseIntMatrix& m)
{
    Work w;
    w.row.resize(static_cast<std::size_t>(rows_));
    w.col.resize(static_cast<std::size_t>(cols_));
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : m.column(c)) {
            w.row[r][c] = v;
            w.col[c].insert(r);
        }
    std::set<int> active;
    for (int r = 0; r < rows_; ++r)
        if (!w.row[r].empty())
            active.insert(r);

    auto log_row = [&](Op op) {
        if (track_rows_)
            row_ops_.push_back(std::move(op));
    };
    auto log_col = [&](Op op) {
        if (track_cols_)
            col_ops_.push_back(std::move(op));
    };

    while (!active.empty()) {
        // Unit pivot of least Markowitz cost, else an entry of least size.
        int pr = -1, pc = -1;
        bool unit = false;
        std::size_t best_cost = SIZE_MAX;
        Integer best_abs;
        for (int r : active) {
            const std::size_t rc = w.row[r].size() - 1;
            for (const auto& [c, v] : w.row[r]) {
                const std::size_t cost = rc * (w.col[c].size() - 1);
                const bool u = is_unit(v);
                if (u) {
                    if (!unit || cost < best_cost) {
                        unit = true;
                        best_cost = cost;
                        pr = r;
                        pc = c;
                    }
                } else if (!unit) {
                    Integer a = abs(v);
                    if (pr < 0 || a < best_abs || (a == best_abs && cost < best_cost)) {
                        best_abs = a;
                        best_cost = cost;
                        pr = r;
                        pc = c;
                    }
                }
                if (unit && best_cost == 0)
                    break;
            }
            if (unit && best_cost == 0)
                break;
        }

        while (w.col[pc].size() > 1 || w.row[pr].size() > 1) {
            for (int i : std::set<int>(w.col[pc])) {
                if (i == pr)
                    continue;
                Integer v = w.get(pr, pc), a = w.get(i, pc);
                if (a % v == 0) {
                    Integer q = -(a / v);
                    w.row_add(i, pr, q);
                    log_row({false, i, pr, q, 0, 0, 0});
                } else {
                    Integer g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t());
                    Integer c2 = -(a / g), d2 = v / g;
                    w.row_2x2(pr, i, s, t, c2, d2);
                    log_row({true, pr, i, s, t, c2, d2});
                }
            }
            for (const auto& [j, b0] : std::map<int, Integer>(w.row[pr])) {
                if (j == pc)
                    continue;
                Integer v = w.get(pr, pc), b = w.get(pr, j);
                if (b == 0)
                    continue;
                if (b % v == 0) {
                    Integer q = -(b / v);
                    w.col_add(j, pc, q);
                    log_col({false, j, pc, q, 0, 0, 0});
                } else {
                    Integer g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v.get_mpz_t(), b.get_mpz_t());
                    Integer c2 = -(b / g), d2 = v / g;
                    w.col_2x2(pc, j, s, t, c2, d2);
                    log_col({true, pc, j, s, t, c2, d2});
                }
            }
        }
        Integer v = w.get(pr, pc);
        pivot_of_row_[pr] = static_cast<int>(pivots_.size());
        pivot_of_col_[pc] = static_cast<int>(pivots_.size());
        pivots_.push_back({pr, pc, v});
        w.put(pr, pc, 0);
        for (int r : std::vector<int>(active.begin(), active.end()))
            if (w.row[r].empty())
                active.erase(r);
    }
}

std::vector<Integer> normalize_diagonal(std::vector<Integer> diagonal)
{
    std::vector<Integer> units, rest;
    for (auto& d : diagonal) {
        if (d == 0)
            continue;
        Integer a = abs(d);
        (a == 1 ? units : rest).push_back(a);
    }
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            Integer g = gcd(rest[i], rest[j]);
            Integer l = lcm(rest[i], rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    for (auto& r : rest)
        units.push_back(r);
    std::stable_sort(units.begin(), units.end());
    return units;
}

std::vector<Integer> SmithReduction::invariant_factors() const
{
    std::vector<Integer> d;
    for (const auto& p : pivots_)
        d.push_back(p.value);
    return normalize_diagonal(std::move(d));
}

IntVec SmithReduction::apply_u(IntVec x) const
{
    if (!track_rows_)
        throw std::logic_error("row operations were not tracked");
    for (const auto& op : row_ops_) {
        if (!op.two_by_two) {
            x[op.i] += op.a * x[op.j];
        } else {
            Integer xi = x[op.i], xj = x[op.j];
            x[op.i] = op.a * xi + op.b * xj;
            x[op.j] = op.c * xi + op.d * xj;
        }
    }
    return x;
}

IntVec SmithReduction::apply_u_inverse(IntVec y) const
{
    if (!track_rows_)
        throw std::logic_error("row operations were not tracked");
    for (auto it = row_ops_.rbegin(); it != row_ops_.rend(); ++it) {
        const auto& op = *it;
        if (!op.two_by_two) {
            y[op.i] -= op.a * y[op.j];
        } else {
            Integer yi = y[op.i], yj = y[op.j];
            y[op.i] = op.d * yi - op.b * yj;
            y[op.j] = -op.c * yi + op.a * yj;
        }
    }
    return y;
}

// Column operation k replaces (col_i, col_j) by (a col_i + b col_j,
// c col_i + d col_j), i.e. right multiplication by F with F_ii = a,
// F_ji = b, F_ij = c, F_jj = d. An add op is col_i += a col_j.
IntVec SmithReduction::apply_v(IntVec y) const
{
    if (!track_cols_)
        throw std::logic_error("column operations were not tracked");
    for (auto it = col_ops_.rbegin(); it != col_ops_.rend(); ++it) {
        const auto& op = *it;
        if (!op.two_by_two) {
            y[op.j] += op.a * y[op.i];
        } else {
            Integer yi = y[op.i], yj = y[op.j];
            y[op.i] = op.a * yi + op.c * yj;
            y[op.j] = op.b * yi + op.d * yj;
        }
    }
    return y;
}

IntVec SmithReduction::apply_v_inverse(IntVec x) const
{
    if (!track_cols_)
        throw std::logic_error("column operations were not tracked");
    for (const auto& op : col_ops_) {
        if (!op.two_by_two) {
            x[op.j] -= op.a * x[op.i];
        } else {
            Integer xi = x[op.i], xj = x[op.j];
            x[op.i] = op.d * xi - op.c * xj;
            x[op.j] = -op.b * xi + op.a * xj;
        }
    }
    return x;
}

bool SmithReduction::in_column_span(const IntVec& x) const
{
    if (static_cast<int>(x.size()) != rows_)
        throw std::invalid_argument("vector length mismatch");
    auto y = apply_u(x);
    for (int r = 0; r < rows_; ++r) {
        if (y[r] == 0)
            continue;
        int p = pivot_of_row_[r];
        if (p < 0 || y[r] % pivots_[p].value != 0)
            return false;
    }
    return true;
}

std::vector<IntVec> SmithReduction::kernel_basis() const
{
    std::vector<IntVec> out;
    for (int c = 0; c < cols_; ++c) {
        if (pivot_of_col_[c] >= 0)
            continue;
        IntVec e(static_cast<std::size_t>(cols_));
        e[c] = 1;
        out.push_back(apply_v(std::move(e)));
    }
    return out;
}

SparseIntMatrix SmithReduction::right_multiply_u_inverse(const SparseIntMatrix& m) const
{
    if (!track_rows_)
        throw std::logic_error("row operations were not tracked");
    if (m.cols() != rows_)
        throw std::invalid_argument("matrix shape mismatch");
    std::vector<std::map<int, Integer>> cols(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c)
        cols[c] = m.column(c);
    auto axpy = [](std::map<int, Integer>& dst, const std::map<int, Integer>& src, const Integer& a) {
        for (const auto& [r, v] : src) {
            auto [it, fresh] = dst.try_emplace(r, a * v);
            if (!fresh) {
                it->second += a * v;
                if (it->second == 0)
                    dst.erase(it);
            }
        }
    };
    for (const auto& op : row_ops_) {
        if (!op.two_by_two) {
            // col_j -= a col_i
            axpy(cols[op.j], std::map<int, Integer>(cols[op.i]), -op.a);
        } else {
            auto ci = cols[op.i], cj = cols[op.j];
            std::map<int, Integer> ni, nj;
            axpy(ni, ci, op.d);
            axpy(ni, cj, -op.c);
            axpy(nj, ci, -op.b);
            axpy(nj, cj, op.a);
            cols[op.i] = std::move(ni);
            cols[op.j] = std::move(nj);
        }
    }
    SparseIntMatrix out(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : cols[c])
            out.add(r, c, v);
    return out;
}

std::string HomologyGroup::to_string() const
{
    std::ostringstream os;
    bool first = true;
    if (betti > 0) {
        os << "Z";
        if (betti > 1)
            os << "^" << betti;
        first = false;
    }
    for (const auto& t : torsion) {
        if (!first)
            os << " + ";
        os << "Z/" << t.get_str();
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

ChainComplex::ChainComplex(std::vector<int> ranks) : ranks_(std::move(ranks))
{
    for (std::size_t d = 0; d < ranks_.size(); ++d)
        boundary_.emplace_back(d == 0 ? 0 : ranks_[d - 1], ranks_[d]);
}

int ChainComplex::rank(int d) const
{
    if (d < 0 || d >= static_cast<int>(ranks_.size()))
        return 0;
    return ranks_[static_cast<std::size_t>(d)];
}

const SparseIntMatrix& ChainComplex::boundary(int d) const
{
    if (d < 0 || d >= static_cast<int>(ranks_.size()))
        throw std::out_of_range("no boundary in degree " + std::to_string(d));
    return boundary_[static_cast<std::size_t>(d)];
}

void ChainComplex::set_boundary(int d, SparseIntMatrix m)
{
    if (d <= 0 || d > top_degree())
        throw std::out_of_range("boundary degree out of range");
    if (m.rows() != rank(d - 1) || m.cols() != rank(d))
        throw std::invalid_argument("boundary shape mismatch in degree " + std::to_string(d));
    boundary_[static_cast<std::size_t>(d)] = std::move(m);
}

void ChainComplex::check_square_zero() const
{
    for (int d = 2; d <= top_degree(); ++d)
        if (!(boundary(d - 1) * boundary(d)).is_zero())
            throw std::logic_error("boundary squares to nonzero in degree " + std::to_string(d));
}

long long ChainComplex::euler_characteristic() const
{
    long long chi = 0;
    for (int d = 0; d <= top_degree(); ++d)
        chi += (d % 2 ? -1 : 1) * static_cast<long long>(rank(d));
    return chi;
}

std::vector<HomologyGroup> integral_homology(const ChainComplex& c)
{
    const int top = c.top_degree();
    std::vector<SmithReduction> red;
    for (int d = 0; d <= top; ++d)
        red.emplace_back(c.boundary(d));
    std::vector<HomologyGroup> out;
    for (int d = 0; d <= top; ++d) {
        HomologyGroup h;
        h.degree = d;
        const int rank_out = red[d].rank();
        const int rank_in = d < top ? red[d + 1].rank() : 0;
        h.betti = c.rank(d) - rank_out - rank_in;
        if (d < top)
            for (auto& f : red[d + 1].invariant_factors())
                if (f > 1)
                    h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

int rank_mod(const SparseIntMatrix& m, unsigned p)
{
    if (p == 0)
        return SmithReduction(m).rank();
    // sparse row echelon over F_p, rows stored by leading column
    std::map<int, std::map<int, unsigned long>> pivot_rows;
    auto t = m.transpose();
    int rank = 0;
    for (int r = 0; r < t.cols(); ++r) {
        std::map<int, unsigned long> row;
        for (const auto& [c, v] : t.column(r)) {
            Integer x = v % p;
            if (x < 0)
                x += p;
            if (x != 0)
                row[c] = x.get_ui();
        }
        while (!row.empty()) {
            auto [lead, a] = *row.begin();
            auto it = pivot_rows.find(lead);
            if (it == pivot_rows.end()) {
                // normalize leading coefficient to 1
                Integer inv_a;
                Integer aa(a), pp(p);
                mpz_invert(inv_a.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t());
                const unsigned long ia = inv_a.get_ui();
                for (auto& [c, v] : row)
                    v = v * ia % p;
                pivot_rows.emplace(lead, std::move(row));
                ++rank;
                break;
            }
            for (const auto& [c, v] : it->second) {
                unsigned long cur = row.count(c) ? row[c] : 0;
                unsigned long nv = (cur + (p - a) * v) % p;
                if (nv == 0)
                    row.erase(c);
                else
                    row[c] = nv;
            }
        }
    }
    return rank;
}

std::vector<int> field_homology(const ChainComplex& c, unsigned p)
{
    const int top = c.top_degree();
    std::vector<int> ranks;
    for (int d = 0; d <= top; ++d)
        ranks.push_back(rank_mod(c.boundary(d), p));
    std::vector<int> out;
    for (int d = 0; d <= top; ++d)
        out.push_back(c.rank(d) - ranks[d] - (d < top ? ranks[d + 1] : 0));
    return out;
}

namespace {

SparseIntMatrix next_boundary(const ChainComplex& c, int d)
{
    if (d < c.top_degree())
        return c.boundary(d + 1);
    return SparseIntMatrix(c.rank(d), 0);
}

}  // namespace

HomologyBasis::HomologyBasis(const ChainComplex& c, int d)
    : d_(d), boundary_d_(c.boundary(d)), next_(next_boundary(c, d), true, false)
{
    const int n = c.rank(d);
    std::vector<bool> pivot_row(static_cast<std::size_t>(n), false);
    for (const auto& p : next_.pivots()) {
        pivot_row[p.row] = true;
        if (!is_unit(p.value)) {
            torsion_rows_.push_back(p.row);
            torsion_orders_.push_back(abs(p.value));
        }
    }
    for (int r = 0; r < n; ++r)
        if (!pivot_row[r])
            q_rows_.push_back(r);
    auto moved = next_.right_multiply_u_inverse(boundary_d_);
    SparseIntMatrix psi(moved.rows(), static_cast<int>(q_rows_.size()));
    for (std::size_t j = 0; j < q_rows_.size(); ++j)
        for (const auto& [r, v] : moved.column(q_rows_[j]))
            psi.add(r, static_cast<int>(j), v);
    psi_ = std::make_unique<SmithReduction>(psi, false, true);
    std::vector<bool> pivot_col(q_rows_.size(), false);
    for (const auto& p : psi_->pivots())
        pivot_col[p.col] = true;
    for (std::size_t j = 0; j < q_rows_.size(); ++j) {
        if (pivot_col[j])
            continue;
        free_cols_.push_back(static_cast<int>(j));
        IntVec e(q_rows_.size());
        e[j] = 1;
        auto lam = psi_->apply_v(std::move(e));
        IntVec y(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < q_rows_.size(); ++k)
            y[q_rows_[k]] = lam[k];
        free_reps_.push_back(next_.apply_u_inverse(std::move(y)));
    }
}

std::vector<IntVec> HomologyBasis::representatives() const
{
    auto out = free_reps_;
    const int n = boundary_d_.cols();
    for (int r : torsion_rows_) {
        IntVec e(static_cast<std::size_t>(n));
        e[r] = 1;
        out.push_back(next_.apply_u_inverse(std::move(e)));
    }
    return out;
}

bool HomologyBasis::is_cycle(const IntVec& x) const
{
    for (const auto& v : boundary_d_.apply(x))
        if (v != 0)
            return false;
    return true;
}

bool HomologyBasis::is_boundary(const IntVec& x) const
{
    return next_.in_column_span(x);
}

IntVec HomologyBasis::coordinates(const IntVec& cycle) const
{
    if (!is_cycle(cycle))
        throw std::invalid_argument("chain is not a cycle");
    auto y = next_.apply_u(cycle);
    IntVec yq;
    for (int r : q_rows_)
        yq.push_back(y[r]);
    auto z = psi_->apply_v_inverse(std::move(yq));
    IntVec out;
    for (int j : free_cols_)
        out.push_back(z[j]);
    for (std::size_t k = 0; k < torsion_rows_.size(); ++k) {
        Integer t = y[torsion_rows_[k]] % torsion_orders_[k];
        if (t < 0)
            t += torsion_orders_[k];
        out.push_back(t);
    }
    return out;
}

HomologyGroup HomologyBasis::group() const
{
    HomologyGroup h;
    h.degree = d_;
    h.betti = free_rank();
    for (const auto& f : normalize_diagonal(torsion_orders_))
        if (f > 1)
            h.torsion.push_back(f);
    return h;
}

std::vector<IntVec> induced_map(const SparseIntMatrix& f, const HomologyBasis& source,
                                const HomologyBasis& target)
{
    std::vector<IntVec> out;
    for (const auto& rep : source.representatives())
        out.push_back(target.coordinates(f.apply(rep)));
    return out;
}

bool universal_coefficients_hold(const ChainComplex& c, unsigned p)
{
    auto h = integral_homology(c);
    auto f = field_homology(c, p);
    auto divisible = [&](std::size_t d) {
        int count = 0;
        if (p != 0 && d < h.size())
            for (const auto& t : h[d].torsion)
                count += mpz_divisible_ui_p(t.get_mpz_t(), p) != 0;
        return count;
    };
    for (std::size_t d = 0; d < f.size(); ++d) {
        int expected = (d < h.size() ? h[d].betti : 0) + divisible(d) + (d > 0 ? divisible(d - 1) : 0);
        if (f[d] != expected)
            return false;
    }
    return true;
}

}  // namespace etb
