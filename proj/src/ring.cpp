#include "etb/ring.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <tuple>
#include <utility>

namespace etb {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

// Remainder of a modulo monic-or-not b over F_p; b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    std::uint32_t lead_inv = 1;
    for (std::uint32_t t = 1; t < p; ++t)
        if ((static_cast<std::uint64_t>(t) * b.back()) % p == 1)
            lead_inv = t;
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - 1 - db;
        const std::uint64_t c = (static_cast<std::uint64_t>(a.back()) * lead_inv) % p;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = (c * b[i]) % p;
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

std::uint32_t parse_uint(std::string_view s, std::string_view what)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw RingError("malformed " + std::string(what) + " '" + std::string(s) + "'");
    if (v > 0xffffffffull)
        throw RingError("value out of range: " + std::string(s));
    return static_cast<std::uint32_t>(v);
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly)
{
    Poly f = poly;
    trim(f);
    if (f.size() < 2)
        return false;
    const std::size_t deg = f.size() - 1;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty())
                return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k)
{
    // Codes t = sum d_i p^i enumerate the lower coefficients with d_{k-1}
    // most significant, so increasing t is lexicographic from the top.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i)
        count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
        Poly f(k + 1, 0);
        std::uint64_t c = t;
        for (std::uint32_t i = 0; i < k; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[k] = 1;
        if (is_irreducible(p, f))
            return f;
    }
    throw RingError("no irreducible polynomial found");  // unreachable for prime p
}

Ring FiniteRing::prime_field(std::uint32_t p)
{
    if (!is_prime(p))
        throw RingError("field characteristic " + std::to_string(p) + " is not prime");
    if (p > kMaxCardinality)
        throw RingError("ring too large");
    auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
    r->kind_ = RingKind::PrimeField;
    r->card_ = p;
    r->char_ = p;
    r->degree_ = 1;
    r->descriptor_ = "fq:" + std::to_string(p);
    r->finish_setup();
    return r;
}

Ring FiniteRing::extension_field(std::uint32_t p, std::uint32_t k)
{
    if (!is_prime(p))
        throw RingError("field characteristic " + std::to_string(p) + " is not prime");
    if (k == 1)
        return prime_field(p);
    if (k == 0)
        throw RingError("extension degree must be positive");
    return extension_field(p, k, default_modulus(p, k));
}

Ring FiniteRing::extension_field(std::uint32_t p, std::uint32_t k,
                                 std::vector<std::uint32_t> modulus)
{
    if (!is_prime(p))
        throw RingError("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 2)
        throw RingError("extension degree must be at least 2");
    std::uint64_t card = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        card *= p;
        if (card > kMaxCardinality)
            throw RingError("ring too large");
    }
    if (modulus.size() != k + 1 || modulus.back() != 1)
        throw RingError("modulus must be monic of degree " + std::to_string(k));
    for (auto c : modulus)
        if (c >= p)
            throw RingError("modulus coefficient out of range");
    if (!is_irreducible(p, modulus))
        throw RingError("modulus polynomial is reducible");

    auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
    r->kind_ = RingKind::ExtensionField;
    r->card_ = static_cast<std::uint32_t>(card);
    r->char_ = p;
    r->degree_ = k;
    const bool is_default = modulus == default_modulus(p, k);
    r->modulus_ = std::move(modulus);
    r->descriptor_ = "fq:" + std::to_string(p) + "^" + std::to_string(k);
    if (!is_default) {
        r->descriptor_ += "[";
        for (std::size_t i = 0; i < r->modulus_.size(); ++i)
            r->descriptor_ += (i ? "," : "") + std::to_string(r->modulus_[i]);
        r->descriptor_ += "]";
    }
    r->finish_setup();
    return r;
}

Ring FiniteRing::integers_mod(std::uint32_t m)
{
    if (m < 2)
        throw RingError("modulus must be at least 2");
    if (m > kMaxCardinality)
        throw RingError("ring too large");
    auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
    r->kind_ = RingKind::IntegersMod;
    r->card_ = m;
    r->char_ = m;
    r->degree_ = 1;
    r->descriptor_ = "zmod:" + std::to_string(m);
    r->finish_setup();
    return r;
}

Ring FiniteRing::make(std::string_view d)
{
    auto colon = d.find(':');
    if (colon == std::string_view::npos)
        throw RingError("ring descriptor needs a kind prefix: '" + std::string(d) + "'");
    const std::string_view kind = d.substr(0, colon);
    std::string_view rest = d.substr(colon + 1);
    if (kind == "zmod")
        return integers_mod(parse_uint(rest, "modulus"));
    if (kind != "fq")
        throw RingError("unknown ring kind '" + std::string(kind) + "'");

    std::vector<std::uint32_t> user_modulus;
    bool has_modulus = false;
    if (auto lb = rest.find('['); lb != std::string_view::npos) {
        if (rest.back() != ']')
            throw RingError("unterminated modulus list");
        std::string_view list = rest.substr(lb + 1, rest.size() - lb - 2);
        rest = rest.substr(0, lb);
        has_modulus = true;
        while (!list.empty()) {
            auto comma = list.find(',');
            user_modulus.push_back(parse_uint(list.substr(0, comma), "coefficient"));
            if (comma == std::string_view::npos)
                break;
            list.remove_prefix(comma + 1);
        }
    }

    std::uint32_t p = 0;
    std::uint32_t k = 1;
    if (auto caret = rest.find('^'); caret != std::string_view::npos) {
        p = parse_uint(rest.substr(0, caret), "characteristic");
        k = parse_uint(rest.substr(caret + 1), "exponent");
        if (!is_prime(p))
            throw RingError("field characteristic " + std::to_string(p) + " is not prime");
    } else {
        const std::uint32_t q = parse_uint(rest, "field order");
        if (q < 2)
            throw RingError("field order must be at least 2");
        // q = p^k with p its least prime factor
        std::uint32_t f = 2;
        while (q % f != 0)
            ++f;
        p = f;
        std::uint32_t t = q;
        k = 0;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t != 1)
            throw RingError("field order " + std::to_string(q) + " is not a prime power");
    }
    if (has_modulus)
        return extension_field(p, k, std::move(user_modulus));
    if (k == 1)
        return prime_field(p);
    return extension_field(p, k);
}

void FiniteRing::finish_setup()
{
    if (card_ <= kTableLimit) {
        add_table_.resize(static_cast<std::size_t>(card_) * card_);
        mul_table_.resize(static_cast<std::size_t>(card_) * card_);
        for (std::uint32_t a = 0; a < card_; ++a)
            for (std::uint32_t b = 0; b < card_; ++b) {
                std::uint32_t s = 0;
                if (kind_ == RingKind::ExtensionField) {
                    std::uint32_t x = a, y = b, place = 1;
                    for (std::uint32_t i = 0; i < degree_; ++i) {
                        s += ((x % char_ + y % char_) % char_) * place;
                        x /= char_;
                        y /= char_;
                        place *= char_;
                    }
                } else {
                    s = (a + b) % card_;
                }
                add_table_[a * card_ + b] = static_cast<std::uint16_t>(s);
                mul_table_[a * card_ + b] = static_cast<std::uint16_t>(mul_raw(a, b));
            }
    }
    inv_.assign(card_, kNoInverse);
    for (std::uint32_t a = 1; a < card_; ++a) {
        if (kind_ == RingKind::ExtensionField) {
            // a^(q-2) in the multiplicative group of order q-1
            std::uint32_t e = card_ - 2, base = a, acc = 1;
            while (e) {
                if (e & 1)
                    acc = mul_raw(acc, base);
                base = mul_raw(base, base);
                e >>= 1;
            }
            inv_[a] = acc;
            continue;
        }
        std::int64_t r0 = card_, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        }
        if (r0 == 1)
            inv_[a] = static_cast<std::uint32_t>(((s0 % card_) + card_) % card_);
    }
    units_.clear();
    for (std::uint32_t a = 0; a < card_; ++a)
        if (inv_[a] != kNoInverse)
            units_.push_back(RingElement{a});
}

std::uint32_t FiniteRing::mul_raw(std::uint32_t a, std::uint32_t b) const
{
    if (kind_ != RingKind::ExtensionField)
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % card_);
    Poly x(degree_), y(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) {
        x[i] = a % char_;
        y[i] = b % char_;
        a /= char_;
        b /= char_;
    }
    Poly prod(2 * degree_, 0);
    for (std::uint32_t i = 0; i < degree_; ++i)
        for (std::uint32_t j = 0; j < degree_; ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % char_);
    Poly r = poly_mod(std::move(prod), modulus_, char_);
    std::uint32_t code = 0;
    for (std::size_t i = r.size(); i-- > 0;)
        code = code * char_ + r[i];
    return code;
}

RingElement FiniteRing::element(std::uint32_t code) const
{
    if (code >= card_)
        throw RingError("element code " + std::to_string(code) + " out of range for " + descriptor_);
    return {code};
}

RingElement FiniteRing::from_int(std::int64_t v) const
{
    const auto c = static_cast<std::int64_t>(char_);
    std::int64_t r = v % c;
    if (r < 0)
        r += c;
    return {static_cast<std::uint32_t>(r)};
}

RingElement FiniteRing::add(RingElement a, RingElement b) const
{
    if (!add_table_.empty())
        return {add_table_[a.value * card_ + b.value]};
    if (kind_ != RingKind::ExtensionField)
        return {(a.value + b.value) % card_};
    std::uint32_t x = a.value, y = b.value, place = 1, s = 0;
    for (std::uint32_t i = 0; i < degree_; ++i) {
        s += ((x % char_ + y % char_) % char_) * place;
        x /= char_;
        y /= char_;
        place *= char_;
    }
    return {s};
}

RingElement FiniteRing::neg(RingElement a) const
{
    if (kind_ != RingKind::ExtensionField)
        return {(card_ - a.value) % card_};
    std::uint32_t x = a.value, place = 1, s = 0;
    for (std::uint32_t i = 0; i < degree_; ++i) {
        s += ((char_ - x % char_) % char_) * place;
        x /= char_;
        place *= char_;
    }
    return {s};
}

RingElement FiniteRing::sub(RingElement a, RingElement b) const
{
    return add(a, neg(b));
}

RingElement FiniteRing::mul(RingElement a, RingElement b) const
{
    if (!mul_table_.empty())
        return {mul_table_[a.value * card_ + b.value]};
    return {mul_raw(a.value, b.value)};
}

RingElement FiniteRing::inv(RingElement a) const
{
    if (inv_[a.value] == kNoInverse)
        throw NotInvertible(to_string(a) + " is not invertible in " + descriptor_);
    return {inv_[a.value]};
}

bool FiniteRing::generates_unit_ideal(std::span<const RingElement> xs) const
{
    if (is_field())
        return std::any_of(xs.begin(), xs.end(), [](RingElement x) { return x.value != 0; });
    std::uint32_t g = card_;
    for (auto x : xs)
        g = std::gcd(g, x.value);
    return g == 1;
}

std::string FiniteRing::to_string(RingElement a) const
{
    return std::to_string(a.value);
}

}  // namespace etb
