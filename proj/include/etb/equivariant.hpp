/**
 * @file equivariant.hpp
 * @brief Finite matrix groups acting on lines, flags, splittings and the
 * complexes built from them; coinvariants of permutation-type modules.
 */
#ifndef ETB_EQUIVARIANT_HPP
#define ETB_EQUIVARIANT_HPP

#include "etb/complexes.hpp"
#include "etb/homology.hpp"
#include "etb/modlin.hpp"

#include <string>
#include <vector>

namespace etb {

enum class GroupFlavor { FullGL, Elementary, Diagonal, Permutation };

/// Generating matrices: elementary e_ij(a) for all a != 0, diagonal
/// diag(1,..,u,..,1), permutation matrices of adjacent transpositions.
/// FullGL is the union of the three.
std::vector<Matrix> group_generators(const Ring& ring, int n, GroupFlavor flavor);
std::vector<Matrix> elementary_generators(const Ring& ring, int n);

/// Closure of the generators under multiplication, duplicate-free.
std::vector<Matrix> enumerate_group(const Ring& ring, int n, GroupFlavor flavor,
                                    const Budget& budget = Budget::from_env());
std::vector<Matrix> closure(const Ring& ring, int n, const std::vector<Matrix>& gens, const Budget& budget);

/// Every n x n matrix with unit determinant; brute force, tests only.
std::vector<Matrix> brute_force_gl(const Ring& ring, int n, const Budget& budget = Budget::from_env());

/// Representative of g modulo unit scalars.
Matrix projective_normal_form(const Matrix& g);

/// Image of each line of V under g.
std::vector<int> act_on_lines(const FreeModule& v, const Matrix& g);
Splitting act_on_splitting(const FreeModule& v, const Matrix& g, const Splitting& s);
Flag act_on_flag(FreeModule& v, const Matrix& g, const Flag& f);
PartialFlagSplit act_on_e(FreeModule& v, const Matrix& g, const PartialFlagSplit& p);

/// Elements of the group fixing the splitting as an unordered set.
std::vector<Matrix> stabilizer_of_splitting(const FreeModule& v, const Splitting& beta,
                                            const std::vector<Matrix>& group);

/// Vertex permutations of FL, SPL and ET induced by g (vertex lists as built).
std::vector<int> permute_flags(FreeModule& v, const Matrix& g, const std::vector<Flag>& flags);
std::vector<int> permute_splittings(const FreeModule& v, const Matrix& g, const std::vector<Splitting>& splittings);
std::vector<int> permute_e(const EPoset& e, const Matrix& g);

/// Matrix of the chain map C_d(K) -> C_d(K') of a vertex map; simplices with
/// a repeated image vertex go to zero. Throws if an image is not a simplex.
SparseIntMatrix simplicial_chain_map(const SimplicialComplex& source, const SimplicialComplex& target,
                                     const std::vector<int>& vertex_map, int d);

/// Free Z-module with a Z-linear action of each generator.
struct ZGModule
{
    int dim = 0;
    std::vector<SparseIntMatrix> actions;
};

/// M / span{g x - x}; returned as a degree-0 HomologyGroup.
HomologyGroup coinvariants(const ZGModule& m);

/// For each chain x in `cycles`, is g x - x a boundary in the target, for each g?
struct ElementaryReport
{
    std::string ring;
    int n = 0;
    int degree = 0;
    int source_rank = 0;          // number of generators of H_d(FL(A^n))
    HomologyGroup target_group;   // H_d(FL(A^{n+1}))
    std::vector<Matrix> generators;
    std::vector<bool> verdicts;
    std::vector<std::vector<IntVec>> evidence;  // per generator: coordinates of g i(z) - i(z)
    bool passed() const;
};

ElementaryReport elementary_triviality_check(const Ring& ring, int n, int degree,
                                             const Budget& budget = Budget::from_env());

/// Flag (F_1 + 0, ..., F_n + 0, A^{n+1}) of A^{n+1} for a flag of A^n.
Flag include_flag(FreeModule& small, FreeModule& big, const Flag& f);

struct StabilizationProbe
{
    std::string ring;
    int m = 0;
    int d = 0;
    int source_dim = 0;        // dim H_m(ET(A^{m+1}); Q)
    int coinvariant_dim = 0;   // dim H_0(GL_{m+1}, H_m(ET(A^{m+1}); Q))
    int target_dim = 0;        // dim H_m(ET(A^d); Q)
    int map_rank = 0;          // rank of the map induced by A^{m+1} -> A^d
    int kernel_dim = 0;        // kernel of H_m(ET(A^{m+1})) -> H_m(ET(A^{m+2})), over Q
};

StabilizationProbe stabilization_probe(const Ring& ring, int m, int d, const Budget& budget = Budget::from_env());

/// E(A^k) -> E(A^d), (F, S) -> (F + 0, ..., A^k + 0 < A^d, S with the
/// standard lines of the last quotient appended).
PartialFlagSplit include_e(FreeModule& small, FreeModule& big, const PartialFlagSplit& p);

/// Rational rank of an integer matrix given as columns.
int rational_rank(const std::vector<IntVec>& columns, int rows);

}  // namespace etb

#endif
