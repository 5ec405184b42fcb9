/**
 * @file homology.hpp
 * @brief Exact integral homology via sparse Smith normal form.
 *
 * SmithReduction diagonalizes U * M * V = D with unimodular U, V, keeping
 * pivots in place (D has at most one nonzero per row and column) and
 * optionally logging the row and column operations so U, V and their
 * inverses can be applied to vectors afterwards.
 */
#ifndef ETB_HOMOLOGY_HPP
#define ETB_HOMOLOGY_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace etb {

using Integer = mpz_class;
using IntVec = std::vector<Integer>;

class SparseIntMatrix
{
  public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    /// Add v to entry (r, c); entries that become zero are dropped.
    void add(int r, int c, const Integer& v);
    Integer get(int r, int c) const;
    const std::map<int, Integer>& column(int c) const { return cols_data_[static_cast<std::size_t>(c)]; }
    std::size_t nonzeros() const;

    IntVec apply(const IntVec& x) const;
    SparseIntMatrix operator*(const SparseIntMatrix& other) const;
    SparseIntMatrix transpose() const;
    bool is_zero() const { return nonzeros() == 0; }
    std::vector<std::vector<Integer>> dense() const;
    static SparseIntMatrix from_dense(const std::vector<std::vector<Integer>>& a, int cols = -1);

    friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::map<int, Integer>> cols_data_;
};

struct Pivot
{
    int row;
    int col;
    Integer value;
};

class SmithReduction
{
  public:
    explicit SmithReduction(const SparseIntMatrix& m, bool track_rows = false, bool track_cols = false);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(pivots_.size()); }
    const std::vector<Pivot>& pivots() const { return pivots_; }

    /// Nonzero invariant factors d1 | d2 | ..., all positive.
    std::vector<Integer> invariant_factors() const;

    IntVec apply_u(IntVec x) const;
    IntVec apply_u_inverse(IntVec y) const;
    IntVec apply_v(IntVec y) const;
    IntVec apply_v_inverse(IntVec x) const;

    /// x lies in the column span of M over Z (needs row tracking).
    bool in_column_span(const IntVec& x) const;
    /// A basis of ker M over Z (needs column tracking).
    std::vector<IntVec> kernel_basis() const;

    /// M * U^{-1} for a matrix M with rows() columns; used to move a
    /// following boundary into the reduced coordinates.
    SparseIntMatrix right_multiply_u_inverse(const SparseIntMatrix& m) const;

  private:
    struct Op
    {
        bool two_by_two;
        int i, j;
        Integer a, b, c, d;  // add: x_i += a x_j; 2x2: (x_i, x_j) <- (a x_i + b x_j, c x_i + d x_j)
    };

    void reduce(const SparseIntMatrix& m);

    int rows_, cols_;
    bool track_rows_, track_cols_;
    std::vector<Pivot> pivots_;
    std::vector<Op> row_ops_;
    std::vector<Op> col_ops_;
    std::vector<int> pivot_of_row_;
    std::vector<int> pivot_of_col_;
};

/// Nonzero invariant factors of an arbitrary list of diagonal entries.
std::vector<Integer> normalize_diagonal(std::vector<Integer> diagonal);

struct HomologyGroup
{
    int degree = 0;
    int betti = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next

    std::string to_string() const;
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Graded free chain complex; boundary(d) maps C_d to C_{d-1}, boundary(0) is zero.
class ChainComplex
{
  public:
    ChainComplex() = default;
    explicit ChainComplex(std::vector<int> ranks);

    int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }
    int rank(int d) const;
    const SparseIntMatrix& boundary(int d) const;
    void set_boundary(int d, SparseIntMatrix m);
    const std::vector<int>& ranks() const { return ranks_; }

    /// Throws std::logic_error when some composite boundary is nonzero.
    void check_square_zero() const;
    long long euler_characteristic() const;

  private:
    std::vector<int> ranks_;
    std::vector<SparseIntMatrix> boundary_;
    SparseIntMatrix empty_;
};

std::vector<HomologyGroup> integral_homology(const ChainComplex& c);

/// Dimensions of homology with coefficients in F_p (p prime) or Q (p = 0).
std::vector<int> field_homology(const ChainComplex& c, unsigned p);

/// Universal coefficients: dim H_d(C; F_p) = b_d + t_d(p) + t_{d-1}(p), with
/// t_d(p) the number of invariant factors of H_d divisible by p.
bool universal_coefficients_hold(const ChainComplex& c, unsigned p);

/// Rank over F_p of an integer matrix (p = 0 means Q).
int rank_mod(const SparseIntMatrix& m, unsigned p);

/**
 * Explicit generators and coordinates for H_d of a chain complex. H_d is
 * presented as Z^free + sum Z/orders[i]; the orders are the non-unit pivots
 * of the next boundary and need not form a divisibility chain.
 */
class HomologyBasis
{
  public:
    HomologyBasis(const ChainComplex& c, int d);

    int degree() const { return d_; }
    int free_rank() const { return static_cast<int>(free_reps_.size()); }
    const std::vector<Integer>& torsion_orders() const { return torsion_orders_; }
    int size() const { return free_rank() + static_cast<int>(torsion_orders_.size()); }
    /// Cycle representatives: free generators first, then torsion.
    std::vector<IntVec> representatives() const;

    bool is_cycle(const IntVec& x) const;
    bool is_boundary(const IntVec& x) const;
    /// Coordinates of the class of a cycle; torsion parts reduced into [0, order).
    IntVec coordinates(const IntVec& cycle) const;
    HomologyGroup group() const;

  private:
    int d_;
    SparseIntMatrix boundary_d_;
    SmithReduction next_;
    std::vector<int> torsion_rows_;
    std::vector<Integer> torsion_orders_;
    std::vector<int> q_rows_;
    std::vector<IntVec> free_reps_;
    std::unique_ptr<SmithReduction> psi_;
    std::vector<int> free_cols_;
};

/// Matrix of the map H_d(C) -> H_d(C') induced by f_d : C_d -> C'_d, in the
/// bases given; column j holds the coordinates of f(generator j).
std::vector<IntVec> induced_map(const SparseIntMatrix& f, const HomologyBasis& source,
                                const HomologyBasis& target);

}  // namespace etb

#endif
