// Independent reference implementations used only by the test suites.
#ifndef ETB_ORACLES_HPP
#define ETB_ORACLES_HPP

#include "etb/homology.hpp"
#include "etb/modlin.hpp"

namespace etb::oracle {

/// Brute force: the vectors extend to an invertible matrix over the ring.
bool completes_to_basis(const FiniteRing& ring, std::vector<Vec> vectors, int n);

/// All vectors of A^n, coordinate 0 most significant.
std::vector<Vec> all_vectors(const FiniteRing& ring, int n);

/// Textbook dense Smith normal form: the nonzero invariant factors.
std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a);

/// K(A^n) membership from the definition: every subset of at most n of the
/// vectors completes to a basis.
bool is_k_simplex(const FiniteRing& ring, const std::vector<Vec>& vectors, int n);

/// Z[F_q - {0, 1}] modulo the five-term relations
/// [x] - [y] + [y/x] - [(1 - 1/x)/(1 - 1/y)] + [(1 - x)/(1 - y)], x != y,
/// and [x] + [1/x], [x] + [1 - x]; q prime. Nonzero invariant factors of the
/// relation matrix and the number of generators.
struct PreBloch
{
    int generators = 0;
    int relations = 0;
    int rank = 0;
    std::vector<Integer> torsion;  // factors > 1
};
PreBloch pre_bloch(unsigned q);

}  // namespace etb::oracle

#endif
