/**
 * @file grassmann.hpp
 * @brief The general position complex K(V), its cycle group D(V), the
 * coinvariant complexes Cbar_r(n) with the differentials d' and d'', and
 * the checks built on them.
 */
#ifndef ETB_GRASSMANN_HPP
#define ETB_GRASSMANN_HPP

#include "etb/complexes.hpp"
#include "etb/homology.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace etb {

/// K(V): vertices are the lines; S is a simplex iff every subset of at most
/// n elements is in general position.
struct GPComplex
{
    int n = 0;
    int max_dim = 0;
    SimplicialComplex k;
};

GPComplex build_k_complex(FreeModule& v, int max_dim);
/// Can `line` be added to the simplex `s` of K(V)?
bool extends_k_simplex(const FreeModule& v, std::span<const int> s, int line);
/// Homology with H_0 reduced.
std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& k);
/// Largest number of lines in a simplex of K(A^n).
int max_arc(const Ring& ring, int n, const Budget& budget = Budget::from_env());

/// D(V) = Z_{n-1} C(V), with n = 1 read as the reduced 0-cycles.
struct DModule
{
    int n = 0;
    int rank = 0;
    std::vector<IntVec> basis;
    bool equals_boundaries = false;
};

DModule compute_d(const Ring& ring, int n, const Budget& budget = Budget::from_env());

/**
 * Cbar_r(n) presented on PGL-orbits of ordered (r+1)-tuples spanning a
 * simplex of K(A^n). Each orbit is named by its tuple whose first n+1 lines
 * are the standard frame e_1, ..., e_n, e_1 + ... + e_n. Relations are
 * x + (x with two adjacent entries swapped). Zero when r < n.
 */
struct CbarPresentation
{
    int n = 0;
    int r = 0;
    std::vector<std::vector<int>> generators;
    SparseIntMatrix relations;  // generators x relations
    HomologyGroup group;

    int size() const { return static_cast<int>(generators.size()); }
    /// Does the integer vector on the generators vanish in the group?
    bool is_zero(const IntVec& x) const;

    std::shared_ptr<SmithReduction> reduction;
};

class GrassmannTower
{
  public:
    /// Fields only.
    GrassmannTower(Ring ring, int max_rank, const Budget& budget = Budget::from_env());

    const Ring& ring() const { return ring_; }
    int max_rank() const { return static_cast<int>(modules_.size()); }
    FreeModule& module(int n);

    const CbarPresentation& cbar(int n, int r);
    /// Orbit generator of an ordered tuple of lines of A^n; -1 when r < n.
    int canonical(int n, const std::vector<int>& tuple);

    /// d': Cbar_r(n) -> Cbar_{r-1}(n), columns indexed by generators of Cbar_r(n).
    SparseIntMatrix del_prime(int n, int r);
    /// d'': Cbar_r(n) -> Cbar_{r-1}(n-1), sum of (-1)^i times projection from L_i.
    SparseIntMatrix del_doubleprime(int n, int r);
    /// d' and d'' of an arbitrary ordered tuple, in generator coordinates.
    IntVec del_prime_of(int n, const std::vector<int>& tuple);
    IntVec del_doubleprime_of(int n, const std::vector<int>& tuple);

    /// Image of an ordered tuple of lines under g.
    std::vector<int> translate(int n, const Matrix& g, const std::vector<int>& tuple);

  private:
    Ring ring_;
    Budget budget_;
    std::vector<std::unique_ptr<FreeModule>> modules_;
    std::map<std::pair<int, int>, CbarPresentation> cbar_;
    std::map<std::pair<int, int>, std::map<std::vector<int>, int>> index_;
    std::vector<std::vector<int>> frame_;
};

struct TotalComplexReport
{
    int max_r = 0;
    int max_n = 0;
    bool prime_square_zero = true;        // d' d' = 0
    bool anticommute = true;              // d' d'' + d'' d' = 0
    bool doubleprime_square_zero = true;  // d'' d'' = 0
    std::map<std::pair<int, int>, HomologyGroup> groups;  // (n, r) -> Cbar_r(n)
    bool square_zero() const { return prime_square_zero && anticommute && doubleprime_square_zero; }
};

/// (d' + d'')^2 = 0 on F_r = sum_n Cbar_r(n) for r <= max_r, n <= max_n,
/// modulo the relations of each target.
TotalComplexReport check_total_complex(GrassmannTower& t, int max_r, int max_n);

struct BlochReport
{
    std::string ring;
    HomologyGroup group;  // coker(Cbar_4(2) -> Cbar_3(2))
    int rational_dim = 0;
    int generators = 0;
    int relations = 0;
};

BlochReport bloch_cokernel(const Ring& ring, const Budget& budget = Budget::from_env());

enum class ClaimVerdict { Pass, Fail, Vacuous };
std::string to_string(ClaimVerdict v);

struct ClaimReport
{
    std::string ring;
    ClaimVerdict verdict = ClaimVerdict::Vacuous;
    int cycles = 0;      // generators of the d'-cycle lattice in Cbar_4(3)
    HomologyGroup h4;    // H_4(Cbar(3), d')
    int arc = 0;         // largest arc in rank 3
};

/// Every class of H_4(Cbar(3), d') maps under d'' to a d'-boundary of Cbar_3(2).
ClaimReport claim_check(const Ring& ring, const Budget& budget = Budget::from_env());

/// H_0(GL_n, C_r(K(A^n))) computed directly from the oriented simplices.
HomologyGroup cbar_direct(const Ring& ring, int n, int r, const Budget& budget = Budget::from_env());

/// Homology of a complex of presented groups A -> B -> C at B; the maps are
/// given on generators and must respect the relations.
HomologyGroup presented_homology(const SparseIntMatrix& in, const CbarPresentation& mid, const SparseIntMatrix& out,
                                 const CbarPresentation& target);

}  // namespace etb

#endif
