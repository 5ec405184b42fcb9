/**
 * @file complexes.hpp
 * @brief Simplicial complexes, finite posets and their nerves, and the
 * buildings FL(V), SPL(V) and ET(V) = nerve of E(V) with its cell structure.
 */
#ifndef ETB_COMPLEXES_HPP
#define ETB_COMPLEXES_HPP

#include "etb/budget.hpp"
#include "etb/homology.hpp"
#include "etb/modlin.hpp"

#include <functional>
#include <span>
#include <vector>

namespace etb {

using Simplex = std::vector<int>;

/// Simplices are sorted vertex-id tuples, stored per dimension in
/// lexicographic order; the position in that list is the chain basis index.
class SimplicialComplex
{
  public:
    SimplicialComplex() = default;

    /// Downward closure of the given simplices on vertices 0..vertex_count-1.
    /// Every vertex is a 0-simplex.
    static SimplicialComplex from_maximal(int vertex_count, std::vector<Simplex> simplices,
                                          const Budget& budget = Budget::from_env());

    /// The given list must already be closed under taking faces.
    static SimplicialComplex from_closed(int vertex_count, std::vector<Simplex> simplices);

    int vertex_count() const { return vertices_; }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Simplex>& simplices(int d) const;
    std::size_t simplex_count() const;
    /// Position of a sorted simplex in simplices(dim), or -1.
    int index_of(std::span<const int> simplex) const;

    std::vector<Simplex> maximal_simplices() const;
    std::vector<long long> f_vector() const;
    long long euler_characteristic() const;

    ChainComplex chain_complex() const;
    /// Nerve of the face poset; vertex i is the i-th simplex in the order
    /// of all simplices by dimension, then lexicographically.
    SimplicialComplex subdivision(const Budget& budget = Budget::from_env()) const;

  private:
    int vertices_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
};

/// Finite poset on 0..size-1 with a dense order matrix.
class Poset
{
  public:
    Poset() = default;
    Poset(int n, const std::function<bool(int, int)>& leq);

    int size() const { return n_; }
    bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a) * n_ + b] != 0; }
    bool less(int a, int b) const { return a != b && leq(a, b); }

    std::vector<int> minimal() const;
    std::vector<int> maximal() const;
    /// {x : x <= s for all s in S}, sorted.
    std::vector<int> lower_set(std::span<const int> s) const;
    std::vector<int> upper_set(std::span<const int> s) const;
    /// Induced subposet on the given sorted elements, relabeled 0..k-1.
    Poset induced(std::span<const int> elements) const;

    /// Throws std::logic_error unless reflexive, antisymmetric, transitive.
    void validate() const;
    /// Simplices are the nonempty chains.
    SimplicialComplex nerve(const Budget& budget = Budget::from_env()) const;

  private:
    int n_ = 0;
    std::vector<char> leq_;
};

/// Order relation of E(V): x <= y iff the flag of x refines that of y and
/// the splittings of y map onto those of x.
bool e_leq(FreeModule& v, const PartialFlagSplit& x, const PartialFlagSplit& y);

/// The flag F with its unique splittings, as an element of E(V).
PartialFlagSplit flag_element(const Flag& f);
/// The one-step element (0 < V, alpha).
PartialFlagSplit splitting_element(FreeModule& v, const Splitting& alpha);

/**
 * The poset E(V). Elements are sorted by decreasing number of flag steps
 * and then lexicographically, which is a linear extension of the order;
 * the nerve therefore lists every chain in increasing order.
 */
class EPoset
{
  public:
    explicit EPoset(FreeModule& v);

    FreeModule& module() const { return *v_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<PartialFlagSplit>& elements() const { return elements_; }
    const PartialFlagSplit& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
    int index_of(const PartialFlagSplit& x) const;
    const Poset& poset() const { return poset_; }

    /// Cell dimension n - r.
    int cell_dimension(int i) const;
    /// Filtration level t(p) = rank F_1 - 1.
    int level(int i) const;

    /// Elements whose flag contains the submodule w (as a step).
    std::vector<int> elements_through(int w) const;

  private:
    FreeModule* v_;
    std::vector<PartialFlagSplit> elements_;
    Poset poset_;
};

std::vector<PartialFlagSplit> enumerate_e(FreeModule& v);

/// FL(V): vertices are flags (in enumerate order), simplices subsets of [alpha].
SimplicialComplex build_fl(FreeModule& v, const std::vector<Flag>& flags,
                           const std::vector<Splitting>& splittings);
/// SPL(V): vertices are splittings, simplices sets with a common lower bound.
SimplicialComplex build_spl(FreeModule& v, const std::vector<Flag>& flags,
                            const std::vector<Splitting>& splittings);

/**
 * Map E(W) x E(V/W) -> E(V) for a free summand W. The factors are given as
 * E-posets of modules of the right ranks; W is identified with them through
 * its basis and V/W through the quotient chart of W.
 */
PartialFlagSplit product_embedding(FreeModule& v, int w, FreeModule& wmod, const PartialFlagSplit& a,
                                   FreeModule& qmod, const PartialFlagSplit& b);

struct Cell
{
    int element = 0;  // index in the EPoset, equal to the cell id
    int dim = 0;
    std::vector<std::pair<int, Integer>> boundary;  // (cell, incidence)
    std::vector<std::pair<int, Integer>> chain;     // fundamental chain on nerve simplices of dim
    std::vector<HomologyGroup> boundary_homology;   // homology of the nerve of L'(p)
    bool sphere = false;                            // boundary has the homology of S^{dim-1}
};

/// Polyhedral cell structure of ET(V) = nerve of E(V).
class CellStructure
{
  public:
    CellStructure(const EPoset& e, const SimplicialComplex& nerve);

    const std::vector<Cell>& cells() const { return cells_; }
    int count(int dim) const;
    ChainComplex cellular_chain_complex() const;
    const std::vector<int>& cells_of_dim(int d) const { return by_dim_[static_cast<std::size_t>(d)]; }
    /// Position of a cell within its dimension.
    int position(int cell) const { return position_[static_cast<std::size_t>(cell)]; }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  private:
    std::vector<Cell> cells_;
    std::vector<std::vector<int>> by_dim_;
    std::vector<int> position_;
};

/// True when the homology list is that of S^k (k = -1: the empty space).
bool is_sphere_homology(const std::vector<HomologyGroup>& h, int k, bool empty);

}  // namespace etb

#endif
