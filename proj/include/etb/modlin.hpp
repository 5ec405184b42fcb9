/**
 * @file modlin.hpp
 * @brief Linear algebra over a FiniteRing for the free modules A^n.
 *
 * Submodules are always handled through a canonical generator matrix: the
 * reduced row echelon form over a field and the Howell form over Z/m. Two
 * generating sets span the same submodule exactly when their canonical
 * forms coincide, so submodules can be interned and compared by id.
 */
#ifndef ETB_MODLIN_HPP
#define ETB_MODLIN_HPP

#include "etb/budget.hpp"
#include "etb/ring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace etb {

using Vec = std::vector<RingElement>;

class ModuleError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over a finite commutative ring.
class Matrix
{
  public:
    Matrix() = default;
    Matrix(Ring ring, int rows, int cols);

    static Matrix identity(Ring ring, int n);
    /// Columns given as vectors of equal length.
    static Matrix from_columns(Ring ring, std::span<const Vec> columns, int n);
    static Matrix from_rows(Ring ring, std::span<const Vec> rows, int n);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    RingElement operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    RingElement& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix operator*(const Matrix& other) const;
    Vec apply(const Vec& v) const;
    Vec column(int j) const;
    Vec row(int i) const;

    RingElement det() const;
    /// Adjugate over det^{-1}; throws NotInvertible when det is not a unit.
    Matrix inverse() const;
    bool is_invertible() const { return ring_->is_unit(det()); }

    std::vector<std::uint32_t> encode() const;
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    Ring ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<RingElement> a_;
};

/// Determinant of the square submatrix on the given rows and columns.
RingElement minor_det(const FiniteRing& ring, std::span<const Vec> rows, std::span<const int> cols);

/// v spans a free rank-one direct summand with free quotient, i.e. its
/// entries generate the unit ideal.
bool is_unimodular(const FiniteRing& ring, std::span<const RingElement> v);

/**
 * The vectors are the generators of distinct lines of A^n, n = vector length.
 * True iff their span is a free direct summand of rank |vectors| with free
 * cokernel; equivalently the maximal minors of the generator matrix
 * generate the unit ideal. Throws ModuleError when there are more than n.
 */
bool in_general_position(const FiniteRing& ring, std::span<const Vec> vectors);

/// Lexicographically least unit multiple of a unimodular vector.
Vec canonical_line_generator(const FiniteRing& ring, const Vec& v);

/// Canonical generator matrix of the span of gens in A^n (RREF or Howell).
std::vector<Vec> canonical_span(const FiniteRing& ring, std::vector<Vec> gens, int n);

/// Every element of span(gens), sorted; brute force, for tests and small cases.
std::vector<Vec> span_elements(const FiniteRing& ring, std::span<const Vec> gens, int n);

/// Encoding of a vector with coordinate 0 most significant.
std::uint64_t vector_code(const FiniteRing& ring, std::span<const RingElement> v);
Vec vector_from_code(const FiniteRing& ring, std::uint64_t code, int n);

/// The set L(A^n) of lines, each stored by its canonical generator, in
/// lexicographic order of generators.
class LineSpace
{
  public:
    LineSpace(Ring ring, int n, const Budget& budget = Budget::from_env());

    const Ring& ring() const { return ring_; }
    int rank() const { return n_; }
    int size() const { return static_cast<int>(lines_.size()); }
    const Vec& generator(int line) const { return lines_[static_cast<std::size_t>(line)]; }
    const std::vector<Vec>& generators() const { return lines_; }

    /// Line spanned by v, or nullopt when v is not unimodular.
    std::optional<int> index_of(std::span<const RingElement> v) const;

  private:
    Ring ring_;
    int n_;
    std::vector<Vec> lines_;
    std::vector<std::int32_t> by_code_;
};

struct Splitting
{
    std::vector<int> lines;  // sorted line ids

    friend auto operator<=>(const Splitting&, const Splitting&) = default;
};

struct Flag
{
    std::vector<int> steps;  // submodule ids F_1, ..., F_n = V

    friend auto operator<=>(const Flag&, const Flag&) = default;
};

/// An element (F, S) of E(V). Each splitting of F_i/F_{i-1} is recorded by
/// the preimages F_{i-1} + L in V of its lines, as sorted submodule ids.
struct PartialFlagSplit
{
    std::vector<int> steps;                    // F_1, ..., F_r = V
    std::vector<std::vector<int>> splittings;  // S_1, ..., S_r

    int length() const { return static_cast<int>(steps.size()); }
    friend auto operator<=>(const PartialFlagSplit&, const PartialFlagSplit&) = default;
};

struct Submodule
{
    int rank = -1;                // -1 when not known to be free
    std::vector<Vec> basis;       // free basis when known
    std::vector<Vec> canonical;   // canonical generator matrix
};

/// Coordinates on V/W for a free direct summand W: a basis of V starting
/// with a basis of W, and its inverse.
class QuotientChart
{
  public:
    QuotientChart() = default;
    QuotientChart(Ring ring, std::vector<Vec> sub_basis, std::vector<Vec> complement);

    int ambient_rank() const { return n_; }
    int quotient_rank() const { return n_ - k_; }
    /// Image of v in A^{n-k} under V -> V/W.
    Vec project(const Vec& v) const;
    /// A preimage in V of a vector of A^{n-k}.
    Vec lift(const Vec& w) const;

  private:
    Ring ring_;
    int n_ = 0;
    int k_ = 0;
    Matrix basis_;
    Matrix inverse_;
};

/// Extend vectors spanning a free summand to a basis of A^n. Standard basis
/// vectors are tried first, then every line of A^n in order.
std::vector<Vec> complete_to_basis(const LineSpace& lines, std::vector<Vec> partial);

/**
 * The free module V = A^n with its line table and an interning catalog of
 * submodules. Submodule ids are stable for the lifetime of the object.
 */
class FreeModule
{
  public:
    FreeModule(Ring ring, int n, const Budget& budget = Budget::from_env());

    const Ring& ring() const { return ring_; }
    int rank() const { return n_; }
    const LineSpace& lines() const { return lines_; }
    const Budget& budget() const { return budget_; }

    /// Intern span(gens). When the gens are in general position they are
    /// recorded as a free basis.
    int submodule(std::vector<Vec> gens);
    const Submodule& submodule_at(int id) const { return subs_[static_cast<std::size_t>(id)]; }
    int submodule_count() const { return static_cast<int>(subs_.size()); }
    int zero() const { return zero_; }
    int whole() const { return whole_; }
    int line_submodule(int line);
    /// The line spanned by a rank-one submodule, if it is one.
    std::optional<int> as_line(int sub) const;

    int sum(int a, int b);
    bool contains(int outer, int inner);

    std::vector<Splitting> splittings();
    std::vector<Flag> flags();
    /// [alpha]: the flags (0, L_s1, L_s1+L_s2, ...) over all orderings.
    std::vector<Flag> flags_of_splitting(const Splitting& alpha);
    /// The flag (L_s1, L_s1 + L_s2, ...) of one ordering of lines.
    Flag flag_of_ordering(std::span<const int> ordered_lines);

    /// Subsets of lines of size p+1 in general position, sorted.
    std::vector<std::vector<int>> general_position_sets(int p) const;

    QuotientChart chart(int sub);
    /// Canonical line of V/W (in the chart of W) that L maps to. Throws
    /// ModuleError if L lies in W or its image is not unimodular.
    int quotient_pushforward(int line, int sub, const LineSpace& quotient_lines);

    /// Apply an automorphism to a submodule.
    int image(const Matrix& g, int sub);

  private:
    int intern(std::vector<Vec> canonical, Submodule sub);

    Ring ring_;
    int n_;
    Budget budget_;
    LineSpace lines_;
    std::vector<Submodule> subs_;
    std::map<std::vector<std::uint32_t>, int> by_key_;
    std::vector<int> line_sub_;
    std::unordered_map<std::uint64_t, int> sum_cache_;
    std::map<int, QuotientChart> charts_;
    int zero_ = -1;
    int whole_ = -1;
};

}  // namespace etb

#endif
