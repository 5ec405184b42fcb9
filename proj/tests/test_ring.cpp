#include "doctest.h"
#include "etb/ring.hpp"

using namespace etb;

namespace {

void check_axioms(const FiniteRing& r)
{
    const auto q = r.cardinality();
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
            RingElement x{a}, y{b};
            CHECK(r.add(x, y) == r.add(y, x));
            CHECK(r.mul(x, y) == r.mul(y, x));
            CHECK(r.sub(r.add(x, y), y) == x);
            for (std::uint32_t c = 0; c < q; ++c) {
                RingElement z{c};
                REQUIRE(r.mul(x, r.add(y, z)) == r.add(r.mul(x, y), r.mul(x, z)));
                REQUIRE(r.mul(r.mul(x, y), z) == r.mul(x, r.mul(y, z)));
            }
        }
    std::uint32_t units = 0;
    for (std::uint32_t a = 0; a < q; ++a) {
        RingElement x{a};
        bool has_inverse = false;
        for (std::uint32_t b = 0; b < q; ++b)
            has_inverse = has_inverse || r.mul(x, RingElement{b}) == r.one();
        CHECK(r.is_unit(x) == has_inverse);
        if (has_inverse) {
            ++units;
            CHECK(r.mul(x, r.inv(x)) == r.one());
        } else {
            CHECK_THROWS_AS(r.inv(x), NotInvertible);
        }
    }
    CHECK(units == r.unit_count());
}

}  // namespace

TEST_CASE("ring axioms hold for small rings")
{
    for (auto d : {"fq:2", "fq:3", "fq:5", "fq:7", "fq:4", "fq:8", "fq:9", "fq:2^4", "zmod:4", "zmod:6",
                   "zmod:8", "zmod:12", "fq:3^2[2,2,1]"}) {
        CAPTURE(d);
        check_axioms(*FiniteRing::make(d));
    }
}

TEST_CASE("field sizes and unit counts")
{
    CHECK(FiniteRing::make("fq:9")->unit_count() == 8);
    CHECK(FiniteRing::make("fq:3^2")->descriptor() == FiniteRing::make("fq:9")->descriptor());
    CHECK(FiniteRing::make("zmod:12")->unit_count() == 4);
    CHECK(FiniteRing::make("zmod:7")->is_field() == false);
    CHECK(FiniteRing::make("fq:256")->unit_count() == 255);
}

TEST_CASE("default moduli")
{
    CHECK(default_modulus(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(default_modulus(3, 2) == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(default_modulus(2, 3) == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(is_irreducible(2, {1, 1, 0, 0, 1}));
    CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
}

TEST_CASE("bad descriptors are rejected")
{
    for (auto d : {"fq:6", "fq:1", "zmod:1", "foo:3", "fq:2^2[1,0,1]", "fq:", "fq:2^0", "fq:65537"}) {
        CAPTURE(d);
        CHECK_THROWS_AS(FiniteRing::make(d), RingError);
    }
}

TEST_CASE("unit ideal test")
{
    auto r = FiniteRing::make("zmod:6");
    std::vector<RingElement> a{{2}, {3}}, b{{2}, {4}};
    CHECK(r->generates_unit_ideal(a));
    CHECK_FALSE(r->generates_unit_ideal(b));
}
