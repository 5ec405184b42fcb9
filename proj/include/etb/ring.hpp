/**
 * @file ring.hpp
 * @brief Exact arithmetic in small finite commutative rings.
 *
 * Three families are supported: prime fields F_p, extension fields F_{p^k}
 * presented as F_p[x]/(f) with f monic irreducible, and the residue rings
 * Z/m. Elements are canonical integers in [0, cardinality): a residue for
 * F_p and Z/m, and the base-p packing sum c_i p^i of the coefficient vector
 * for F_{p^k}. Two equal elements therefore always share an encoding, which
 * is what the line and simplex tables downstream rely on.
 */
#ifndef ETB_RING_HPP
#define ETB_RING_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etb {

struct RingElement
{
    std::uint32_t value = 0;

    friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

enum class RingKind { PrimeField, ExtensionField, IntegersMod };

/// Raised for malformed descriptors and invalid ring parameters.
class RingError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by FiniteRing::inv on a non-unit.
class NotInvertible : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

class FiniteRing;
using Ring = std::shared_ptr<const FiniteRing>;

class FiniteRing
{
  public:
    static constexpr std::uint32_t kMaxCardinality = 1u << 16;

    /**
     * Parse a ring descriptor.
     *
     *   fq:p          prime field (p prime)
     *   fq:q          prime-power field, q = p^k with k >= 2
     *   fq:p^k        same, explicit exponent
     *   fq:p^k[c0,..,ck]  extension field with a user-supplied monic modulus
     *                 (coefficients low degree first, must be irreducible)
     *   zmod:m        integers modulo m, m >= 2
     */
    static Ring make(std::string_view descriptor);

    static Ring prime_field(std::uint32_t p);
    static Ring extension_field(std::uint32_t p, std::uint32_t k);
    static Ring extension_field(std::uint32_t p, std::uint32_t k,
                                std::vector<std::uint32_t> modulus);
    static Ring integers_mod(std::uint32_t m);

    RingKind kind() const { return kind_; }
    bool is_field() const { return kind_ != RingKind::IntegersMod; }
    std::uint32_t cardinality() const { return card_; }
    std::uint32_t characteristic() const { return char_; }
    std::uint32_t degree() const { return degree_; }
    std::uint32_t unit_count() const { return static_cast<std::uint32_t>(units_.size()); }

    /// Modulus polynomial, low degree first, leading 1 included. Empty unless
    /// kind() == ExtensionField.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    /// Canonical descriptor ("fq:2", "fq:3^2", "zmod:6").
    const std::string& descriptor() const { return descriptor_; }

    RingElement zero() const { return {0}; }
    RingElement one() const { return {1}; }
    RingElement element(std::uint32_t code) const;
    /// Image of an integer under Z -> ring.
    RingElement from_int(std::int64_t v) const;

    RingElement add(RingElement a, RingElement b) const;
    RingElement sub(RingElement a, RingElement b) const;
    RingElement neg(RingElement a) const;
    RingElement mul(RingElement a, RingElement b) const;

    bool is_zero(RingElement a) const { return a.value == 0; }
    bool is_unit(RingElement a) const { return inv_[a.value] != kNoInverse; }
    RingElement inv(RingElement a) const;

    /// Invertible elements in increasing encoding order.
    const std::vector<RingElement>& units() const { return units_; }

    /// True iff the ideal generated by the given elements is the whole ring.
    bool generates_unit_ideal(std::span<const RingElement> xs) const;

    /// Integer representative in [0, m) for Z/m and F_p. Meaningless for
    /// extension fields.
    std::uint32_t lift(RingElement a) const { return a.value; }

    std::string to_string(RingElement a) const;

  private:
    static constexpr std::uint32_t kNoInverse = 0xffffffffu;
    static constexpr std::uint32_t kTableLimit = 256;

    FiniteRing() = default;
    void finish_setup();
    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;

    RingKind kind_ = RingKind::PrimeField;
    std::uint32_t card_ = 0;
    std::uint32_t char_ = 0;
    std::uint32_t degree_ = 1;
    std::vector<std::uint32_t> modulus_;
    std::string descriptor_;
    std::vector<RingElement> units_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint16_t> add_table_;
    std::vector<std::uint16_t> mul_table_;
};

bool is_prime(std::uint64_t n);

/// Lexicographically least monic irreducible polynomial of degree k over
/// F_p, comparing coefficients from the highest degree down. Low degree
/// first in the returned vector, leading 1 included.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k);

/// Irreducibility over F_p by trial division (small degrees only).
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

}  // namespace etb

#endif
