/**
 * @file field.hpp
 * @brief Dense exact linear algebra over Q or F_p for the spectral sequence
 * and rational rank checks. Vectors over F_p hold integers in [0, p).
 */
#ifndef ETB_FIELD_HPP
#define ETB_FIELD_HPP

#include "etb/homology.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace etb {

/// Coefficient field: p = 0 is Q, otherwise F_p for a prime p.
struct Coefficients
{
    unsigned p = 0;

    /// "q" or "fp:<prime>".
    static Coefficients parse(const std::string& s);
    std::string to_string() const;
    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

using FVec = std::vector<mpq_class>;

FVec to_field(const IntVec& v, Coefficients k);
FVec to_field(const std::map<int, Integer>& column, int size, Coefficients k);

/// Reduced row echelon basis of the span of the given vectors.
std::vector<FVec> span_basis(const std::vector<FVec>& vectors, int dim, Coefficients k);
int rank(const std::vector<FVec>& vectors, int dim, Coefficients k);

/// Basis of {x : M x = 0} for M given by its rows, acting on `cols` coordinates.
std::vector<FVec> kernel(const std::vector<FVec>& rows, int cols, Coefficients k);

/// Coefficients c with sum c_i basis_i = v, or nothing. The basis must be independent.
std::optional<FVec> solve(const std::vector<FVec>& basis, const FVec& v, int dim, Coefficients k);

/// Matrix-vector product for a sparse integer matrix over the field.
FVec apply(const SparseIntMatrix& m, const FVec& x, Coefficients k);

}  // namespace etb

#endif
