#include <doctest.h>

#include "spingr/zmodule.hpp"

#include <random>

using namespace spingr;

namespace {

DVec vec(std::vector<long> v)
{
    DVec out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

LatCol col(std::vector<long> v, Val2 q = Val2::infinity())
{
    return {vec(std::move(v)), q, -1};
}

} // namespace

TEST_CASE("echelon membership over the 2-local integers")
{
    // span{ (2,1,0), (0,2,0) } in 3 rows with v-exponents (0,0,0)
    ColEchelon e({0, 0, 0}, {col({2, 1, 0}), col({0, 2, 0})});
    CHECK(e.rank() == 2);
    CHECK(e.contains(vec({2, 1, 0})));
    CHECK(e.contains(vec({2, 3, 0})));
    CHECK(e.contains(vec({4, 2, 0})));
    CHECK(!e.contains(vec({1, 0, 0})));
    CHECK(!e.contains(vec({0, 1, 0})));
    CHECK(!e.contains(vec({0, 0, 1})));

    // odd denominators are units: 3/5 generates everything in rank 1
    ColEchelon u({0}, {{{Dyadic(3, 5)}, Val2::infinity(), -1}});
    CHECK(u.contains({Dyadic(1)}));
    CHECK(u.contains({Dyadic(7, 9)}));
}

TEST_CASE("pivot tail validity")
{
    // pivot valuation 1 with tail level 2 is exact; tail level 1 is not
    ColEchelon good({0}, {col({2}, Val2(2))});
    CHECK(good.pivots_q_valid());
    ColEchelon bad({0}, {col({2}, Val2(1))});
    CHECK(!bad.pivots_q_valid());
    // row v-exponent counts toward the entry's filtration
    ColEchelon shifted({1}, {col({2}, Val2(2))});
    CHECK(!shifted.pivots_q_valid()); // full valuation 2 not below level 2
}

TEST_CASE("smith invariant valuations")
{
    // diag(1, 2, 8) up to units
    std::vector<DVec> m = {vec({1, 0, 0}), vec({0, 2, 0}), vec({0, 0, 8})};
    CHECK(snf_valuations(m) == std::vector<long>{0, 1, 3});

    // [[2, 2], [2, 6]] ~ diag(2, 4): valuations 1, 2
    std::vector<DVec> m2 = {vec({2, 2}), vec({2, 6})};
    CHECK(snf_valuations(m2) == std::vector<long>{1, 2});

    CHECK(snf_valuations({}).empty());
    CHECK(snf_valuations({vec({0, 0})}).empty());
}

TEST_CASE("echelon and smith membership agree on random lattices")
{
    std::mt19937_64 rng(41);
    auto rnd_val = [&rng]() {
        long n = static_cast<long>(rng() % 17) - 8;
        return Dyadic(n);
    };
    for (int trial = 0; trial < 300; ++trial) {
        size_t rows = 2 + rng() % 4, ncols = 1 + rng() % 5;
        std::vector<LatCol> cols;
        std::vector<DVec> raw;
        for (size_t c = 0; c < ncols; ++c) {
            DVec v;
            for (size_t r = 0; r < rows; ++r)
                v.push_back(rnd_val());
            raw.push_back(v);
            cols.push_back({v, Val2::infinity(), -1});
        }
        ColEchelon ech(std::vector<long>(rows, 0), cols);
        for (int probe = 0; probe < 6; ++probe) {
            DVec x;
            if (probe % 2 == 0) {
                // random combination: member by construction
                x.assign(rows, Dyadic());
                for (size_t c = 0; c < ncols; ++c) {
                    Dyadic lambda = rnd_val();
                    for (size_t r = 0; r < rows; ++r)
                        x[r] += lambda * raw[c][r];
                }
            }
            else {
                for (size_t r = 0; r < rows; ++r)
                    x.push_back(rnd_val());
            }
            bool a = ech.contains(x);
            bool b = snf_membership(raw, x);
            CHECK(a == b);
            if (probe % 2 == 0)
                CHECK(a);
        }
    }
}
