#include <doctest.h>

#include "spingr/dyadic.hpp"

#include <random>

using namespace spingr;

TEST_CASE("val2 on integers and odd denominators")
{
    CHECK(Dyadic(12).val2() == Val2(2));   // 12 = 4*3
    CHECK(Dyadic(0).val2().is_infinite()); // zero sentinel
    CHECK(Dyadic(8, 3).val2() == Val2(3)); // odd denominator ignored
    CHECK(Dyadic(-8, 5).val2() == Val2(3));
    CHECK(Dyadic(1, 3).val2() == Val2(0));
}

TEST_CASE("ring arithmetic stays 2-local and canonical")
{
    CHECK(Dyadic(1, 3) + Dyadic(2, 3) == Dyadic(1));
    CHECK(Dyadic(2) * Dyadic(1, 3) == Dyadic(2, 3));
    CHECK((Dyadic(2) * Dyadic(6)).val2() == Val2(2));
    CHECK(Dyadic(6, 9) == Dyadic(2, 3)); // canonical form is reduced
    CHECK(Dyadic(1, -3) == Dyadic(-1, 3));
    CHECK_THROWS_AS(Dyadic(1, 2), std::domain_error);
    CHECK_THROWS_AS(Dyadic(1) / Dyadic(2), std::domain_error);
    CHECK(Dyadic(6) / Dyadic(2) == Dyadic(3));
    CHECK(Dyadic(2, 3) / Dyadic(2) == Dyadic(1, 3));
}

TEST_CASE("serialization: canonical num/den strings")
{
    CHECK(Dyadic(3).str() == "3/1");
    CHECK(Dyadic(-8, 5).str() == "-8/5");
    CHECK(Dyadic::parse("3/1").value() == Dyadic(3));
    CHECK(Dyadic::parse("-8/5").value() == Dyadic(-8, 5));
    CHECK(Dyadic::parse("7").value() == Dyadic(7));
    CHECK(!Dyadic::parse("1/2").has_value());
    CHECK(!Dyadic::parse("x").has_value());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        long n = static_cast<long>(rng() % 4000) - 2000;
        long d = 2 * static_cast<long>(rng() % 400) + 1;
        Dyadic x(n, d);
        CHECK(Dyadic::parse(x.str()).value() == x);
    }
}

TEST_CASE("valuation laws")
{
    std::mt19937_64 rng(11);
    auto rnd = [&rng]() {
        long n = static_cast<long>(rng() % 2000) - 1000;
        long d = 2 * static_cast<long>(rng() % 50) + 1;
        return Dyadic(n, d);
    };
    for (int i = 0; i < 500; ++i) {
        Dyadic x = rnd(), y = rnd();
        CHECK((x * y).val2() == x.val2() + y.val2());
        Val2 lo = Val2::min(x.val2(), y.val2());
        CHECK((x + y).val2() >= lo);
        if (x.val2() != y.val2())
            CHECK((x + y).val2() == lo);
    }
}
