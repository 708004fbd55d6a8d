#include <doctest.h>

#include "spingr/lattice.hpp"

#include <algorithm>

using namespace spingr;

namespace {

std::map<std::string, std::vector<std::string>> profile_map(const GroupModel& g,
                                                            LatticeEngine& eng)
{
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& row : eng.image_profile()) {
        std::vector<std::string> gens;
        for (const auto& p : row.gens)
            gens.push_back(p.str());
        out[g.gens().mono_name(row.mono)] = gens;
    }
    return out;
}

} // namespace

TEST_CASE("Spin(11) image profile")
{
    GroupModel g = GroupModel::build(Family::spin, 11);
    LatticeEngine eng(g, TheorySpec(1));
    auto prof = profile_map(g, eng);
    CHECK(prof["1"] == std::vector<std::string>{"1"});
    CHECK(prof["y6"] == std::vector<std::string>{"2", "v^1"});
    CHECK(prof["y10"] == std::vector<std::string>{"2", "v^1"});
    CHECK(prof["y6*y10"] == std::vector<std::string>{"2", "v^2"});
    for (const auto& row : eng.image_profile())
        CHECK(row.certified);
}

TEST_CASE("Spin(13) image profile")
{
    GroupModel g = GroupModel::build(Family::spin, 13);
    LatticeEngine eng(g, TheorySpec(1));
    auto prof = profile_map(g, eng);
    CHECK(prof["1"] == std::vector<std::string>{"1"});
    CHECK(prof["y6"] == std::vector<std::string>{"2", "v^1"});
    CHECK(prof["y10"] == std::vector<std::string>{"2", "v^1"});
    CHECK(prof["y12"] == std::vector<std::string>{"2", "v^2"});
    CHECK(prof["y6*y10"] == std::vector<std::string>{"2", "v^2"});
    CHECK(prof["y6*y12"] == std::vector<std::string>{"2^2", "2*v^1", "v^2"});
    CHECK(prof["y10*y12"] == std::vector<std::string>{"2^2", "2*v^1", "v^2"});
    CHECK(prof["y6*y10*y12"] == std::vector<std::string>{"2^2", "v^2"});
}

TEST_CASE("Spin(17) top-row profile at both levels")
{
    GroupModel g = GroupModel::build(Family::spin, 17);
    std::string top = g.gens().mono_name(g.ytop());
    {
        LatticeEngine eng(g, TheorySpec(1));
        auto prof = profile_map(g, eng);
        REQUIRE(prof[top].size() >= 2);
        CHECK(prof[top][0] == "2^4");
        CHECK(prof[top][1] == "2^3*v^1");
    }
    {
        LatticeEngine eng(g, TheorySpec(2));
        auto prof = profile_map(g, eng);
        REQUIRE(prof[top].size() >= 2);
        CHECK(prof[top][0] == "2^4");
        CHECK(prof[top][1] == "2^3*v^1");
    }
}

TEST_CASE("Spin(11) norm quotient is the exterior algebra on c_2, c_4")
{
    GroupModel g = GroupModel::build(Family::spin, 11);
    LatticeEngine eng(g, TheorySpec(1));
    auto table = builtin_norm_table(g);
    REQUIRE(table.has_value());
    auto q = eng.norm_quotient(*table);
    std::vector<std::pair<int, std::string>> got;
    for (const auto& c : q.components)
        for (const auto& f : c.factors) {
            CHECK(!f.free);
            CHECK(f.torsion_val2 == 1);
            got.emplace_back(c.degree, monomial_str(f.rep));
        }
    std::sort(got.begin(), got.end());
    std::vector<std::pair<int, std::string>> expect = {
        {0, "1"}, {4, "c_2"}, {8, "c_4"}, {12, "c_2*c_4"}};
    CHECK(got == expect);
}

TEST_CASE("Spin(13) norm quotient kills (2, c_3c_6, c_5c_6, e_8c_6)")
{
    GroupModel g = GroupModel::build(Family::spin, 13);
    LatticeEngine eng(g, TheorySpec(1));
    auto table = builtin_norm_table(g);
    REQUIRE(table.has_value());
    auto q = eng.norm_quotient(*table);
    std::vector<std::pair<int, std::string>> got;
    for (const auto& c : q.components)
        for (const auto& f : c.factors) {
            CHECK(!f.free);
            got.emplace_back(c.degree, monomial_str(f.rep));
        }
    std::sort(got.begin(), got.end());
    std::vector<std::pair<int, std::string>> expect = {
        {0, "1"},         {4, "c_2"},      {6, "c_3"},      {8, "c_4"},
        {10, "c_5"},      {12, "c_2*c_4"}, {12, "c_6"},     {14, "c_3*c_4"},
        {16, "c_2*c_6"},  {16, "e_8"},     {18, "c_4*c_5"}, {20, "c_4*c_6"},
        {24, "c_4*e_8"}};
    CHECK(got == expect);
}

TEST_CASE("incomplete norm tables are rejected")
{
    GroupModel g = GroupModel::build(Family::spin, 11);
    LatticeEngine eng(g, TheorySpec(1));
    NormTable partial;
    partial.entries[0] = {Dyadic(2), {}};
    CHECK_THROWS_AS(eng.norm_quotient(partial), std::invalid_argument);
}

TEST_CASE("quotient by a table that kills everything leaves the torsion classes")
{
    // Quotienting gr by all of 2*Im plus every free generator's class leaves
    // one Z/2 for each free class and keeps every torsion class: the total
    // count is (number of torsion representatives) + (number of frees).
    GroupModel g = GroupModel::build(Family::spin, 11);
    LatticeEngine eng(g, TheorySpec(1));
    auto table = builtin_norm_table(g);
    REQUIRE(table.has_value());
    auto q = eng.norm_quotient(*table);
    size_t classes = 0;
    for (const auto& c : q.components)
        classes += c.factors.size();
    // torsion reps of Spin(11): c_2, c_4, c_2c_4; the unit class survives as Z/2
    CHECK(classes == 4);
}
