/**
 * @file spectral.hpp
 * @brief The filtration of ET(V) by t(p), its spectral sequence over a
 * field, the structural E^1 count and the bottom row comparison with the
 * general position complex.
 */
#ifndef ETB_SPECTRAL_HPP
#define ETB_SPECTRAL_HPP

#include "etb/complexes.hpp"
#include "etb/field.hpp"

#include <map>
#include <utility>
#include <vector>

namespace etb {

/// Chain complex with a filtration level per generator.
struct FilteredComplex
{
    ChainComplex complex;
    std::vector<std::vector<int>> levels;  // levels[d][i] for generator i of C_d

    int min_level() const;
    int max_level() const;
    /// Throws std::logic_error when a boundary raises the level.
    void validate() const;
};

/// Cellular chains of ET(V) with level t(p) = rank F_1 - 1 on the cell p.
FilteredComplex filter_et(const EPoset& e, const CellStructure& cs);

struct SpectralPage
{
    int r = 1;
    std::map<std::pair<int, int>, int> dims;                // (p, q) -> dim E^r_{p,q}
    std::map<std::pair<int, int>, int> ranks;               // (p, q) -> rank d^r_{p,q}
    std::map<std::pair<int, int>, std::vector<FVec>> differentials;  // columns of d^r_{p,q}

    int dim(int p, int q) const;
    int rank(int p, int q) const;
};

struct SpectralSequence
{
    Coefficients coefficients;
    std::vector<SpectralPage> pages;  // E^1, E^2, ...; the last one is E^infinity
    std::vector<int> homology;        // dims of H_m of the underlying complex

    const SpectralPage& page(int r) const { return pages.at(static_cast<std::size_t>(r - 1)); }
    const SpectralPage& infinity() const { return pages.back(); }
    /// Sum over p + q = m of E^infinity equals dim H_m for all m.
    bool converges() const;
};

/**
 * Pages from the subquotients
 * E^r_{p} = A^r_p / (A^{r-1}_{p-1} + d A^{r-1}_{p+r-1}),
 * A^r_p = {c in F_p : dc in F_{p-r}}, in every total degree. Throws if
 * d^r d^r != 0 or E^{r+1} is not the homology of E^r.
 */
SpectralSequence run_spectral(const FilteredComplex& fc, Coefficients k);

/// Rank of the connecting map H_n(F_p/F_{p-1}) -> H_{n-1}(F_{p-1}/F_{p-2}).
int connecting_rank(const FilteredComplex& fc, int p, int n, Coefficients k);

/// Dimension of H_s(ET(A^m)) over the field; A^0 gives a point.
int et_homology_dim(const Ring& ring, int m, int s, Coefficients k, const Budget& budget = Budget::from_env());

/// For r = 0..n-1: sum over q in L_r(A^n) of dim H_s(ET(A^n / W(q))).
std::vector<int> e1_structural(const Ring& ring, int n, int s, Coefficients k,
                               const Budget& budget = Budget::from_env());

struct BottomRowReport
{
    std::vector<int> e1_dims;       // E^1_{m,0}, m < n
    std::vector<int> chain_dims;    // rank C_m of the general position complex
    std::vector<int> e1_ranks;      // rank d^1_{m,0}, m = 1..n-1
    std::vector<int> chain_ranks;   // rank of the simplicial boundary C_m -> C_{m-1}
    std::vector<int> e2_dims;       // E^2_{m,0}, m < n
    bool e2_pattern = false;        // E^2_{0,0} = 1 and E^2_{m,0} = 0 for 0 < m < n - 1
    bool passed() const { return e1_dims == chain_dims && e1_ranks == chain_ranks; }
};

BottomRowReport bottom_row_check(const Ring& ring, int n, Coefficients k, const Budget& budget = Budget::from_env());

/// Convenience: the filtered ET(A^n) and its spectral sequence.
SpectralSequence et_spectral_sequence(const Ring& ring, int n, Coefficients k,
                                      const Budget& budget = Budget::from_env());

}  // namespace etb

#endif
