#include "etb/field.hpp"

#include <stdexcept>

namespace etb {

Coefficients Coefficients::parse(const std::string& s)
{
    if (s == "q" || s == "Q")
        return {};
    if (s.rfind("fp:", 0) == 0) {
        unsigned long p = 0;
        try {
            p = std::stoul(s.substr(3));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient field: " + s);
        }
        if (p < 2)
            throw std::invalid_argument("bad coefficient field: " + s);
        for (unsigned long d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw std::invalid_argument("coefficient modulus is not prime: " + s);
        return Coefficients{static_cast<unsigned>(p)};
    }
    throw std::invalid_argument("bad coefficient field: " + s);
}

std::string Coefficients::to_string() const
{
    return p == 0 ? "q" : "fp:" + std::to_string(p);
}

namespace {

struct RationalOps
{
    using T = mpq_class;
    T from(const mpq_class& x) const { return x; }
    mpq_class back(const T& x) const { return x; }
    bool zero(const T& x) const { return sgn(x) == 0; }
    T inv(const T& x) const { return 1 / x; }
    void axpy(T& y, const T& a, const T& x) const { y -= a * x; }
    T mul(const T& a, const T& b) const { return a * b; }
};

struct PrimeOps
{
    using T = long long;
    long long p;
    T from(const mpq_class& x) const
    {
        const long q = static_cast<long>(p);
        mpz_class num = x.get_num() % q;
        mpz_class den = x.get_den() % q;
        if (num < 0)
            num += q;
        if (den < 0)
            den += q;
        if (den == 0)
            throw std::domain_error("denominator divisible by the characteristic");
        return mul(num.get_si(), inv(den.get_si()));
    }
    mpq_class back(const T& x) const { return mpq_class(static_cast<long>(x)); }
    bool zero(const T& x) const { return x == 0; }
    T inv(T x) const
    {
        long long r = 1, e = p - 2;
        x %= p;
        while (e) {
            if (e & 1)
                r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    }
    void axpy(T& y, const T& a, const T& x) const { y = ((y - a * x % p) % p + p) % p; }
    T mul(const T& a, const T& b) const { return a * b % p; }
};

// Reduced row echelon form in place; returns the pivot column of each kept row.
template <class Ops>
std::vector<int> rref(std::vector<std::vector<typename Ops::T>>& rows, int cols, const Ops& ops)
{
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && ops.zero(rows[piv][c]))
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        auto s = ops.inv(rows[r][c]);
        for (int j = c; j < cols; ++j)
            rows[r][j] = ops.mul(rows[r][j], s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || ops.zero(rows[i][c]))
                continue;
            auto f = rows[i][c];
            for (int j = c; j < cols; ++j)
                if (!ops.zero(rows[r][j]))
                    ops.axpy(rows[i][j], f, rows[r][j]);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

template <class Ops>
std::vector<std::vector<typename Ops::T>> convert(const std::vector<FVec>& v, int dim, const Ops& ops)
{
    std::vector<std::vector<typename Ops::T>> out;
    for (const auto& x : v) {
        if (static_cast<int>(x.size()) != dim)
            throw std::invalid_argument("vector has the wrong length");
        std::vector<typename Ops::T> row;
        for (const auto& e : x)
            row.push_back(ops.from(e));
        out.push_back(std::move(row));
    }
    return out;
}

template <class Ops>
std::vector<FVec> back(const std::vector<std::vector<typename Ops::T>>& rows, const Ops& ops)
{
    std::vector<FVec> out;
    for (const auto& r : rows) {
        FVec v;
        for (const auto& e : r)
            v.push_back(ops.back(e));
        out.push_back(std::move(v));
    }
    return out;
}

template <class F>
auto dispatch(Coefficients k, F&& f)
{
    if (k.p == 0)
        return f(RationalOps{});
    return f(PrimeOps{static_cast<long long>(k.p)});
}

}  // namespace

FVec to_field(const IntVec& v, Coefficients k)
{
    FVec out;
    for (const auto& x : v) {
        if (k.p == 0) {
            out.emplace_back(x);
        } else {
            mpz_class r = x % k.p;
            if (r < 0)
                r += k.p;
            out.emplace_back(r);
        }
    }
    return out;
}

FVec to_field(const std::map<int, Integer>& column, int size, Coefficients k)
{
    IntVec v(static_cast<std::size_t>(size), 0);
    for (const auto& [r, x] : column)
        v[static_cast<std::size_t>(r)] = x;
    return to_field(v, k);
}

std::vector<FVec> span_basis(const std::vector<FVec>& vectors, int dim, Coefficients k)
{
    return dispatch(k, [&](const auto& ops) {
        auto rows = convert(vectors, dim, ops);
        rref(rows, dim, ops);
        return back(rows, ops);
    });
}

int rank(const std::vector<FVec>& vectors, int dim, Coefficients k)
{
    return static_cast<int>(span_basis(vectors, dim, k).size());
}

std::vector<FVec> kernel(const std::vector<FVec>& rows_in, int cols, Coefficients k)
{
    return dispatch(k, [&](const auto& ops) {
        auto rows = convert(rows_in, cols, ops);
        auto piv = rref(rows, cols, ops);
        std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
        for (int c : piv)
            is_pivot[c] = 1;
        std::vector<FVec> out;
        for (int f = 0; f < cols; ++f) {
            if (is_pivot[f])
                continue;
            FVec v(static_cast<std::size_t>(cols), 0);
            v[f] = 1;
            for (std::size_t i = 0; i < piv.size(); ++i) {
                auto x = ops.back(rows[i][f]);
                if (x != 0)
                    v[piv[i]] = k.p == 0 ? mpq_class(-x) : mpq_class((k.p - x.get_num()) % k.p);
            }
            out.push_back(std::move(v));
        }
        return out;
    });
}

std::optional<FVec> solve(const std::vector<FVec>& basis, const FVec& v, int dim, Coefficients k)
{
    return dispatch(k, [&](const auto& ops) -> std::optional<FVec> {
        const int m = static_cast<int>(basis.size());
        using T = typename std::decay_t<decltype(ops)>::T;
        std::vector<std::vector<T>> rows(static_cast<std::size_t>(dim), std::vector<T>(static_cast<std::size_t>(m + 1)));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < dim; ++i)
                rows[i][j] = ops.from(basis[j][i]);
        for (int i = 0; i < dim; ++i)
            rows[i][m] = ops.from(v[i]);
        auto piv = rref(rows, m + 1, ops);
        if (!piv.empty() && piv.back() == m)
            return std::nullopt;
        if (static_cast<int>(piv.size()) != m)
            throw std::invalid_argument("solve: basis is not independent");
        FVec out(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            out[i] = ops.back(rows[i][m]);
        return out;
    });
}

FVec apply(const SparseIntMatrix& m, const FVec& x, Coefficients k)
{
    FVec y(static_cast<std::size_t>(m.rows()), 0);
    for (int c = 0; c < m.cols(); ++c) {
        if (sgn(x[c]) == 0)
            continue;
        for (const auto& [r, v] : m.column(c))
            y[r] += mpq_class(v) * x[c];
    }
    if (k.p != 0)
        for (auto& e : y) {
            mpz_class n = e.get_num() % k.p;
            if (n < 0)
                n += k.p;
            e = n;
        }
    return y;
}

}  // namespace etb
