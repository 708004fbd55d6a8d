#include <doctest.h>

#include "spingr/model.hpp"

using namespace spingr;

namespace {

AmbientElement term(const GroupModel& g, TheorySpec th, long c, int vexp,
                    std::vector<int> degrees, Val2 prec = Val2::infinity())
{
    MonoMask m = 0;
    for (int d : degrees)
        m |= MonoMask{1} << *g.gens().index_of_degree(d);
    return AmbientElement::term(&g.gens(), th, Dyadic(c), vexp, m, prec);
}

std::vector<int> gen_degrees(const GroupModel& g)
{
    std::vector<int> out;
    for (int i = 0; i < g.gens().size(); ++i)
        out.push_back(g.gens().degree(i));
    return out;
}

} // namespace

TEST_CASE("spin models carry the advertised combinatorics")
{
    GroupModel s13 = GroupModel::build(Family::spin, 13);
    CHECK(gen_degrees(s13) == std::vector<int>{6, 10, 12});
    CHECK(s13.t() == 2);
    CHECK(s13.torsion_index() == 4);
    CHECK(s13.gens().gen(0).rule == SquareRule::exact); // y6^2 = y12
    CHECK(s13.gens().gen(0).square_index == 2);
    CHECK(s13.gens().gen(1).rule == SquareRule::zero_with_error);
    CHECK(s13.gens().gen(2).rule == SquareRule::zero_with_error);

    GroupModel s17 = GroupModel::build(Family::spin, 17);
    CHECK(gen_degrees(s17) == std::vector<int>{6, 10, 12, 14});
    CHECK(s17.ell_bar() == 7); // l = 8 is a two-power
    CHECK(s17.t() == 3);
    CHECK(s17.torsion_index() == 16);
    CHECK(s17.euler_codim() == 16);

    GroupModel s9 = GroupModel::build(Family::spin, 9);
    CHECK(gen_degrees(s9) == std::vector<int>{6});
    CHECK(s9.t() == 2);

    GroupModel s19 = GroupModel::build(Family::spin, 19);
    CHECK(gen_degrees(s19) == std::vector<int>{6, 10, 12, 14, 18});
    CHECK(s19.ytop_degree() == 60);

    CHECK_THROWS_AS(GroupModel::build(Family::spin, 12), std::invalid_argument);
    CHECK_THROWS_AS(GroupModel::build(Family::spin, 5), std::invalid_argument);
}

TEST_CASE("so models")
{
    GroupModel so11 = GroupModel::build(Family::so, 11);
    CHECK(gen_degrees(so11) == std::vector<int>{2, 4, 6, 8, 10});
    CHECK(so11.gens().gen(0).rule == SquareRule::exact); // y2^2 = y4
    CHECK(so11.gens().gen(1).rule == SquareRule::exact); // y4^2 = y8
    CHECK(so11.gens().gen(2).rule == SquareRule::zero_with_error);
    CHECK(so11.gens().gen(3).rule == SquareRule::zero_with_error);
    CHECK(so11.chern_lo() == 1);
    CHECK(!so11.has_euler());
    CHECK(so11.torsion_index() == 32);
}

TEST_CASE("Chern class images")
{
    TheorySpec k1(1), k2(2);
    GroupModel s13 = GroupModel::build(Family::spin, 13);
    CHECK(s13.chern_image(2, k1) == term(s13, k1, 1, 1, {6}, Val2(2)));
    auto c5 = term(s13, k1, 2, 0, {10}, Val2(2)) + term(s13, k1, 1, 1, {12}, Val2(2));
    CHECK(s13.chern_image(5, k1) == c5);
    CHECK(s13.chern_image(6, k1) == term(s13, k1, 2, 0, {12}, Val2(2)));

    GroupModel s17 = GroupModel::build(Family::spin, 17);
    CHECK(s17.chern_image(2, k2) == term(s17, k2, 1, 1, {10}, Val2(2)));

    CHECK_THROWS_AS(s13.chern_image(7, k1), std::invalid_argument);
    CHECK_THROWS_AS(s13.chern_image(1, k1), std::invalid_argument);

    // SO low-index form: c_i = 2 y_{2i} + v y_{2i+2} at level 1
    GroupModel so11 = GroupModel::build(Family::so, 11);
    for (int i = 1; i <= 4; ++i) {
        auto img = so11.chern_image(i, k1);
        auto expect = term(so11, k1, 2, 0, {2 * i}, Val2(2)) +
                      term(so11, k1, 1, 1, {2 * i + 2}, Val2(2));
        CHECK(img == expect);
    }
    CHECK(so11.chern_image(5, k1) == term(so11, k1, 2, 0, {10}, Val2(2)));
}

TEST_CASE("Euler-type class images")
{
    TheorySpec k1(1);
    GroupModel s11 = GroupModel::build(Family::spin, 11);
    CHECK(s11.euler_image(k1) == term(s11, k1, 2, 0, {6, 10}, Val2(2)));

    GroupModel s13 = GroupModel::build(Family::spin, 13);
    auto e8 = term(s13, k1, 2, 0, {6, 10}, Val2(2)) + term(s13, k1, 1, 1, {6, 12}, Val2(2));
    CHECK(s13.euler_image(k1) == e8);

    GroupModel s19 = GroupModel::build(Family::spin, 19);
    CHECK(s19.euler_image(k1) == term(s19, k1, 2, 0, {14, 18}, Val2(2)));

    GroupModel s17 = GroupModel::build(Family::spin, 17);
    CHECK(s17.euler_image(k1).stored_empty()); // no live pair hits degree 32

    GroupModel so11 = GroupModel::build(Family::so, 11);
    CHECK_THROWS_AS(so11.euler_image(k1), std::invalid_argument);
}

TEST_CASE("monomial images")
{
    TheorySpec k1(1);
    GroupModel s13 = GroupModel::build(Family::spin, 13);

    // e_8 c_6 hits 4 y_top on the nose
    ChernMonomial m1 = {{true, 8}, {false, 6}};
    CHECK(s13.monomial_image(m1, k1) == term(s13, k1, 4, 0, {6, 10, 12}, Val2(3)));

    // empty product is the exact unit
    CHECK(s13.monomial_image({}, k1) == AmbientElement::one(&s13.gens(), k1));

    // precision of an s-fold product is at least s+1
    ChernMonomial m2 = {{false, 2}, {false, 4}, {false, 5}};
    auto img = s13.monomial_image(m2, k1);
    CHECK(img == term(s13, k1, 1, 3, {6, 10, 12}, Val2(4)));
}

TEST_CASE("image valuations and degrees across models and levels")
{
    for (int ell = 3; ell <= 9; ++ell) {
        GroupModel g = GroupModel::build(Family::spin, 2 * ell + 1);
        for (int n = 1; n <= 3; ++n) {
            TheorySpec th(n);
            for (int i = g.chern_lo(); i <= g.chern_hi(); ++i) {
                auto img = g.chern_image(i, th);
                CHECK(img.inf_valuation() >= Val2(1));
                if (!img.stored_empty())
                    CHECK(img.degree() == 2 * i);
            }
            auto e = g.euler_image(th);
            CHECK(e.inf_valuation() >= Val2(1));
            if (!e.stored_empty())
                CHECK(e.degree() == g.euler_degree());
        }
    }
}

TEST_CASE("torsion bound search reproduces the index table")
{
    const std::map<int, long> expect = {{3, 1}, {4, 1}, {5, 1}, {6, 2},
                                        {7, 3}, {8, 4}, {9, 4}};
    for (auto [ell, v] : expect) {
        GroupModel g = GroupModel::build(Family::spin, 2 * ell + 1);
        auto res = torsion_bound_search(g, TheorySpec(1), default_max_factors(g));
        REQUIRE(res.found);
        CHECK(res.bound_val2 == v);
        CHECK(res.bound == g.torsion_index());
    }
    // named witnesses
    auto w5 = torsion_bound_search(GroupModel::build(Family::spin, 11), TheorySpec(1), 8);
    CHECK(monomial_str(w5.witness) == "e_8");
    auto w6 = torsion_bound_search(GroupModel::build(Family::spin, 13), TheorySpec(1), 8);
    CHECK(monomial_str(w6.witness) == "c_6*e_8");
    auto w8 = torsion_bound_search(GroupModel::build(Family::spin, 17), TheorySpec(1), 10);
    CHECK(monomial_str(w8.witness) == "c_3*c_5*c_6*c_7");
    auto w9 = torsion_bound_search(GroupModel::build(Family::spin, 19), TheorySpec(1), 10);
    CHECK(monomial_str(w9.witness) == "c_3*c_5*c_6*e_16");

    // SO(7): c_1 c_2 c_3 realizes 2^3
    GroupModel so7 = GroupModel::build(Family::so, 7);
    auto r = torsion_bound_search(so7, TheorySpec(1), default_max_factors(so7));
    REQUIRE(r.found);
    CHECK(r.bound == 8);
}

TEST_CASE("monomial parsing and printing")
{
    CHECK(monomial_str(*parse_chern_monomial("c_3*c_2")) == "c_2*c_3");
    CHECK(monomial_str(*parse_chern_monomial("e_8*c_6")) == "c_6*e_8");
    CHECK(parse_chern_monomial("1").value().empty());
    CHECK(!parse_chern_monomial("q_3").has_value());
}
