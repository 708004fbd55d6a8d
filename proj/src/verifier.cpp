#include "spingr/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace spingr {

namespace {

ChernMonomial mono(const std::string& s)
{
    auto m = parse_chern_monomial(s);
    if (!m)
        throw std::logic_error("bad monomial literal: " + s);
    return *m;
}

std::string canon(const std::string& s) { return monomial_str(mono(s)); }

struct BasisTable {
    std::vector<BasisEntry> entries;

    void free(int degree, const std::string& rep)
    {
        entries.push_back({degree, -1, canon(rep)});
    }
    void tors(int degree, const std::string& rep, long k = 1)
    {
        entries.push_back({degree, k, canon(rep)});
    }
};

// Spin(11): 2-torsion exactly at c_2, c_4, c_2c_4; free at 1, c_3, c_5, e_8.
BasisTable spin11_table()
{
    BasisTable t;
    t.free(0, "1");
    t.tors(4, "c_2");
    t.free(6, "c_3");
    t.tors(8, "c_4");
    t.free(10, "c_5");
    t.tors(12, "c_2*c_4");
    t.free(16, "e_8");
    return t;
}

// Spin(13), first presentation: the P(b)/(c_2c_5, c_2c_4c_5) block plus the
// listed torsion and free summands.
BasisTable spin13_table_a()
{
    BasisTable t;
    t.free(0, "1");
    t.tors(4, "c_2");
    t.tors(8, "c_4");
    t.free(10, "c_5");
    t.tors(12, "c_2*c_4");
    t.tors(18, "c_4*c_5");
    t.tors(14, "c_3*c_4");
    t.tors(24, "e_8*c_4");
    t.tors(16, "c_2*c_6");
    t.tors(20, "c_4*c_6");
    t.free(6, "c_3");
    t.free(12, "c_6");
    t.free(16, "e_8");
    t.free(18, "c_3*c_6");
    t.free(22, "c_5*c_6");
    t.free(28, "e_8*c_6");
    return t;
}

// Spin(13), second presentation: A (x) (Z{1, c_6} + Z/2{c_4}) + Z/2{c_4c_6}
// with A = Z{1, c_3, c_5, e_8} + Z/2{c_2}, expanded programmatically.
BasisTable spin13_table_b()
{
    struct Summand {
        std::string rep;
        int degree;
        bool free;
    };
    std::vector<Summand> A = {
        {"", 0, true}, {"c_3", 6, true}, {"c_5", 10, true}, {"e_8", 16, true}, {"c_2", 4, false}};
    std::vector<Summand> B = {{"", 0, true}, {"c_6", 12, true}, {"c_4", 8, false}};
    BasisTable t;
    for (const auto& a : A)
        for (const auto& b : B) {
            std::string rep;
            if (a.rep.empty() && b.rep.empty())
                rep = "1";
            else if (a.rep.empty())
                rep = b.rep;
            else if (b.rep.empty())
                rep = a.rep;
            else
                rep = a.rep + "*" + b.rep;
            // normalize factor order
            rep = monomial_str(mono(rep));
            if (a.free && b.free)
                t.free(a.degree + b.degree, rep);
            else
                t.tors(a.degree + b.degree, rep);
        }
    t.tors(20, "c_4*c_6");
    return t;
}

std::vector<BasisEntry> sorted_entries(std::vector<BasisEntry> v)
{
    std::sort(v.begin(), v.end(), [](const BasisEntry& a, const BasisEntry& b) {
        if (a.degree != b.degree)
            return a.degree < b.degree;
        if (a.order != b.order)
            return a.order < b.order;
        return a.rep < b.rep;
    });
    return v;
}

Json entries_json(const std::vector<BasisEntry>& v)
{
    Json j = Json::array();
    for (const auto& e : v)
        j.push_back(Json::array(
            {e.degree, e.order < 0 ? std::string("free") : (BigInt(1) << e.order).str(), e.rep}));
    return j;
}

FactReport class_fact(VerifyContext& ctx, const std::string& id, Family f, int m, int n,
                      const std::string& cls, bool expect_zero, const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    ClassVerdict v = ctx.check_class(f, m, n, mono(cls));
    r.pass = v.zero == expect_zero;
    r.certified = v.certified;
    r.witness["class"] = cls;
    r.witness["theory"] = n;
    r.witness["degree"] = v.degree;
    r.witness["computed"] = v.zero ? "zero" : "nonzero";
    r.witness["image"] = element_to_json(v.image);
    return r;
}

FactReport saturation_fact(VerifyContext& ctx, const std::string& id, Family f, int m, int n,
                           int dmax, int expected, bool at_most, const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    auto& eng = ctx.engine(f, m, n);
    SaturationResult s = eng.saturation(0, dmax);
    r.pass = s.found && (at_most ? s.threshold <= expected : s.threshold == expected);
    r.certified = s.found;
    r.witness["threshold"] = s.threshold;
    r.witness["containment_level"] = s.containment_level;
    r.witness["depth"] = s.depth;
    return r;
}

struct ProfileExpect {
    std::string mono;
    std::vector<ProfileGen> gens;
    bool prefix_only = false; // expected gens form the leading part of the row
};

FactReport profile_fact(VerifyContext& ctx, const std::string& id, Family f, int m, int n,
                        const std::vector<ProfileExpect>& expected, const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    auto& eng = ctx.engine(f, m, n);
    auto rows = eng.image_profile();
    const GroupModel& model = ctx.model(f, m);
    r.pass = true;
    r.certified = true;
    Json w = Json::array();
    for (const auto& exp : expected) {
        const ProfileRow* found = nullptr;
        for (const auto& row : rows)
            if (model.gens().mono_name(row.mono) == exp.mono)
                found = &row;
        bool ok = found != nullptr;
        if (ok) {
            if (exp.prefix_only)
                ok = found->gens.size() >= exp.gens.size() &&
                     std::equal(exp.gens.begin(), exp.gens.end(), found->gens.begin());
            else
                ok = found->gens == exp.gens;
            r.certified = r.certified && found->certified;
        }
        r.pass = r.pass && ok;
        Json e;
        e["mono"] = exp.mono;
        e["ok"] = ok;
        if (found)
            e["computed"] = profile_row_to_json(model, *found)["ideal"];
        w.push_back(e);
    }
    r.witness["rows"] = w;
    r.witness["theory"] = n;
    return r;
}

FactReport torsion_fact(VerifyContext& ctx, const std::string& id, int ell,
                        const std::string& expect_witness, const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    const GroupModel& model = ctx.model(Family::spin, 2 * ell + 1);
    auto res = torsion_bound_search(model, TheorySpec(1), default_max_factors(model));
    r.pass = res.found && model.torsion_known() && res.bound == model.torsion_index();
    r.certified = res.found;
    if (!expect_witness.empty())
        r.pass = r.pass && monomial_str(res.witness) == expect_witness;
    r.witness["bound"] = res.found ? res.bound.str() : "none";
    if (res.found)
        r.witness["witness"] = monomial_str(res.witness);
    if (model.torsion_known())
        r.witness["table"] = model.torsion_index().str();
    return r;
}

FactReport norm_quotient_fact(VerifyContext& ctx, const std::string& id, int m,
                              const std::vector<BasisEntry>& expected,
                              const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    const GroupModel& model = ctx.model(Family::spin, m);
    auto table = builtin_norm_table(model);
    if (!table) {
        r.pass = false;
        r.witness["error"] = "no norm table";
        return r;
    }
    auto& eng = ctx.engine(Family::spin, m, 1);
    NormQuotientResult q = eng.norm_quotient(*table);
    std::vector<BasisEntry> got;
    r.certified = true;
    for (const auto& c : q.components) {
        for (const auto& f : c.factors)
            got.push_back({c.degree, f.free ? -1 : f.torsion_val2, monomial_str(f.rep)});
        r.certified = r.certified && c.certified;
    }
    auto ge = sorted_entries(got);
    auto xe = sorted_entries(expected);
    r.pass = ge.size() == xe.size();
    if (r.pass)
        for (size_t i = 0; i < ge.size(); ++i)
            if (ge[i].degree != xe[i].degree || ge[i].order != xe[i].order ||
                ge[i].rep != xe[i].rep)
                r.pass = false;
    r.witness["computed"] = entries_json(ge);
    r.witness["expected"] = entries_json(xe);
    return r;
}

std::vector<BasisEntry> lambda_c2_c4()
{
    return {{0, 1, "1"}, {4, 1, "c_2"}, {8, 1, "c_4"}, {12, 1, "c_2*c_4"}};
}

std::vector<BasisEntry> spin13_norm_quotient()
{
    // gr / (2, c_3c_6, c_5c_6, e_8c_6): every class 2-torsion, the three
    // listed products and their consequences removed.
    return {{0, 1, "1"},        {4, 1, "c_2"},      {6, 1, "c_3"},      {8, 1, "c_4"},
            {10, 1, "c_5"},     {12, 1, "c_6"},     {12, 1, "c_2*c_4"}, {14, 1, "c_3*c_4"},
            {16, 1, "e_8"},     {16, 1, "c_2*c_6"}, {18, 1, "c_4*c_5"}, {20, 1, "c_4*c_6"},
            {24, 1, "c_4*e_8"}};
}

FactReport stability_fact(VerifyContext& ctx, const std::string& id, const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    // Square-free words in c_2..c_7 predicted by the limit.  The stable
    // window for a given l covers degrees below 2^{n+1} for the largest n
    // with 2^n <= l (so degrees < 8 for l = 7 and < 16 for l = 8, 9): at
    // l = 7 the Euler class e_8 interferes above that window, where
    // c_2c_5 = v e_8 already collapses in the graded ring.
    //
    // Certified content: the listed representatives are robustly nonzero and
    // linearly independent in gr/2, and the component structure is stable
    // wherever the tail calculus can pin it.  At (l, d) = (9, 14) the class
    // c_7 enters at the raw image precision 2, so the absence of further
    // classes in that single component is reported as heuristic.
    std::map<int, std::vector<std::string>> expected = {
        {2, {}},
        {4, {"c_2"}},
        {6, {"c_3"}},
        {8, {"c_4"}},
        {10, {"c_2*c_3", "c_5"}},
        {12, {"c_2*c_4", "c_6"}},
        {14, {"c_2*c_5", "c_3*c_4", "c_7"}},
    };
    r.pass = true;
    r.certified = true;
    Json w = Json::array();
    for (int ell : {7, 8, 9}) {
        auto& eng = ctx.engine(Family::spin, 2 * ell + 1, 1);
        int n = 0;
        while ((1 << (n + 1)) <= ell)
            ++n;
        int dmax = 1 << (n + 1); // exclusive
        for (auto& [d, reps] : expected) {
            if (d >= dmax)
                continue;
            GrComponent c = eng.gr_component(d);
            std::vector<std::string> got;
            for (const auto& f : c.factors)
                got.push_back(monomial_str(f.rep));
            std::sort(got.begin(), got.end());
            auto want = reps;
            std::sort(want.begin(), want.end());
            bool ok = got == want;
            r.pass = r.pass && ok;

            // Robust class-level certificates: every nonempty subset sum of
            // the predicted representatives is nonzero in gr/2.
            bool classes_certified = true;
            for (size_t bits = 1; bits < (size_t{1} << reps.size()); ++bits) {
                AmbientElement sum =
                    AmbientElement::zero(&eng.model().gens(), eng.theory());
                for (size_t i = 0; i < reps.size(); ++i)
                    if (bits & (size_t{1} << i))
                        sum = sum + eng.image_of(mono(reps[i]));
                ClassVerdict v = eng.element_in_gr(sum, d);
                classes_certified = classes_certified && !v.zero && v.certified;
            }
            r.certified = r.certified && ok && classes_certified;

            Json e;
            e["ell"] = ell;
            e["degree"] = d;
            e["ok"] = ok;
            e["reps"] = got;
            e["classes_certified"] = classes_certified;
            e["structure_certified"] = c.certified;
            w.push_back(e);
        }
    }
    r.witness["cases"] = w;
    return r;
}

FactReport euler_fact(VerifyContext& ctx, const std::string& id, const std::string& citation)
{
    FactReport r;
    r.id = id;
    r.citation = citation;
    r.pass = true;
    r.certified = true;
    Json w = Json::array();
    // The nonvanishing statement needs 2^t < l < 2^{t+1}; l = 8 is a
    // two-power rank and carries no claim, so the check runs over l = 5, 6, 7, 9.
    for (int ell : {5, 6, 7, 9}) {
        const GroupModel& model = ctx.model(Family::spin, 2 * ell + 1);
        ChernMonomial e = {{true, model.euler_codim()}};
        ClassVerdict v = ctx.check_class(Family::spin, 2 * ell + 1, 1, e);
        r.pass = r.pass && !v.zero;
        r.certified = r.certified && v.certified;
        Json entry;
        entry["ell"] = ell;
        entry["class"] = monomial_str(e);
        entry["computed"] = v.zero ? "zero" : "nonzero";
        w.push_back(entry);
    }
    r.witness["cases"] = w;
    return r;
}

std::vector<PaperFact> build_registry()
{
    std::vector<PaperFact> facts;
    auto add = [&facts](std::string id, std::string title, std::vector<std::string> tags,
                        std::string citation, std::function<FactReport(VerifyContext&)> run) {
        facts.push_back({std::move(id), std::move(title), std::move(tags), std::move(citation),
                         std::move(run)});
    };

    add("T7.1", "Spin(11) gamma-graded basis", {"spin11", "basis"},
        "Spin(11): free at 1, c_3, c_5, e_8; 2-torsion at c_2, c_4, c_2c_4; zero elsewhere",
        [](VerifyContext& ctx) {
            return check_basis(ctx, "T7.1", Family::spin, 11, 1, 32, spin11_table().entries);
        });

    add("T9.5", "Spin(13) gamma-graded basis, first presentation", {"spin13", "basis"},
        "Spin(13): free at 1, c_3, c_5, c_6, e_8, c_3c_6, c_5c_6, e_8c_6; 2-torsion at eight "
        "listed products",
        [](VerifyContext& ctx) {
            return check_basis(ctx, "T9.5", Family::spin, 13, 1, 56, spin13_table_a().entries);
        });

    add("T1.3", "Spin(13) gamma-graded basis, tensor presentation", {"spin13", "basis"},
        "Spin(13): A (x) (Z{1, c_6} + Z/2{c_4}) + Z/2{c_4c_6}, A = Z{1, c_3, c_5, e_8} + "
        "Z/2{c_2}; must agree with the first presentation per degree",
        [](VerifyContext& ctx) {
            FactReport r =
                check_basis(ctx, "T1.3", Family::spin, 13, 1, 56, spin13_table_b().entries);
            auto a = sorted_entries(spin13_table_a().entries);
            auto b = sorted_entries(spin13_table_b().entries);
            bool agree = a.size() == b.size();
            if (agree)
                for (size_t i = 0; i < a.size(); ++i)
                    if (a[i].degree != b[i].degree || a[i].order != b[i].order ||
                        a[i].rep != b[i].rep)
                        agree = false;
            r.witness["presentations_agree"] = agree;
            r.pass = r.pass && agree;
            return r;
        });

    add("L8.1", "Spin(11) saturation threshold", {"spin11", "saturation"},
        "classes of filtration 3 vanish in the Spin(11) graded ring", [](VerifyContext& ctx) {
            return saturation_fact(ctx, "L8.1", Family::spin, 11, 1, 32, 3, false,
                                   "saturation threshold 3");
        });

    add("L9.1", "Spin(13) saturation threshold", {"spin13", "saturation"},
        "classes of filtration 4 vanish in the Spin(13) graded ring", [](VerifyContext& ctx) {
            return saturation_fact(ctx, "L9.1", Family::spin, 13, 1, 56, 4, false,
                                   "saturation threshold 4");
        });

    add("L9.2", "c_2c_3 vanishes for Spin(13)", {"spin13", "vanishing"},
        "c_2c_3 = 0 in the Spin(13) graded ring mod 2", [](VerifyContext& ctx) {
            return class_fact(ctx, "L9.2", Family::spin, 13, 1, "c_2*c_3", true,
                              "c_2c_3 = 0 in gr/2 for Spin(13)");
        });

    add("L10.1", "c_2c_3 survives for Spin(15)", {"spin15", "nonvanishing"},
        "c_2c_3 != 0 in the Spin(15) graded ring mod 2", [](VerifyContext& ctx) {
            return class_fact(ctx, "L10.1", Family::spin, 15, 1, "c_2*c_3", false,
                              "c_2c_3 != 0 in gr/2 for Spin(15)");
        });

    add("L10.2", "counterexample class vanishes at level 1", {"spin17", "counterexample"},
        "c_2c_3c_6c_7 = 0 in the Spin(17) level-1 graded ring mod 2", [](VerifyContext& ctx) {
            return class_fact(ctx, "L10.2", Family::spin, 17, 1, "c_2*c_3*c_6*c_7", true,
                              "c_2c_3c_6c_7 = 0 in gr(1)/2 for Spin(17)");
        });

    add("L10.3", "counterexample class survives at level 2", {"spin17", "counterexample"},
        "c_2c_3c_6c_7 != 0 in the Spin(17) level-2 graded ring mod 2", [](VerifyContext& ctx) {
            return class_fact(ctx, "L10.3", Family::spin, 17, 2, "c_2*c_3*c_6*c_7", false,
                              "c_2c_3c_6c_7 != 0 in gr(2)/2 for Spin(17)");
        });

    add("T10.4", "Spin(17): the level-1 kernel ideal is nonzero",
        {"spin17", "counterexample"},
        "conjunction of the level-1 vanishing and level-2 survival of c_2c_3c_6c_7",
        [](VerifyContext& ctx) {
            FactReport a = verify_fact("L10.2", ctx);
            FactReport b = verify_fact("L10.3", ctx);
            FactReport r;
            r.id = "T10.4";
            r.citation = "the class c_2c_3c_6c_7 witnesses a nonzero kernel ideal at level 1";
            r.pass = a.pass && b.pass;
            r.certified = a.certified && b.certified;
            r.witness["level1"] = a.witness;
            r.witness["level2"] = b.witness;
            return r;
        });

    add("L10.5", "Spin(19) boundary class", {"spin19"},
        "c_2c_3c_6e_16: zero at level 1, nonzero at level 2 for Spin(19)",
        [](VerifyContext& ctx) {
            FactReport r;
            r.id = "L10.5";
            r.citation = "c_2c_3c_6e_16 = 0 in gr(1)/2 but != 0 in gr(2)/2 for Spin(19)";
            ClassVerdict v1 = ctx.check_class(Family::spin, 19, 1, mono("c_2*c_3*c_6*e_16"));
            ClassVerdict v2 = ctx.check_class(Family::spin, 19, 2, mono("c_2*c_3*c_6*e_16"));
            r.pass = v1.zero && !v2.zero;
            r.certified = v1.certified && v2.certified;
            r.witness["level1"] = v1.zero ? "zero" : "nonzero";
            r.witness["level2"] = v2.zero ? "zero" : "nonzero";
            return r;
        });

    add("C8.5", "Spin(11) image profile", {"spin11", "profile"},
        "image ideals (1){1} + (2, v){y6, y10} + (2, v^2){y6y10}", [](VerifyContext& ctx) {
            std::vector<ProfileExpect> exp = {
                {"1", {{0, 0}}, false},
                {"y6", {{1, 0}, {0, 1}}, false},
                {"y10", {{1, 0}, {0, 1}}, false},
                {"y6*y10", {{1, 0}, {0, 2}}, false},
            };
            return profile_fact(ctx, "C8.5", Family::spin, 11, 1, exp,
                                "Spin(11) restriction-image profile");
        });

    add("L9.8", "Spin(13) image profile", {"spin13", "profile"},
        "image ideals: (2){y12} refined to (2, v^2); (4, 2v, v^2){y6y12, y10y12}; (4, "
        "v^2){y_top}",
        [](VerifyContext& ctx) {
            std::vector<ProfileExpect> exp = {
                {"1", {{0, 0}}, false},
                {"y6", {{1, 0}, {0, 1}}, false},
                {"y10", {{1, 0}, {0, 1}}, false},
                {"y12", {{1, 0}, {0, 2}}, false},
                {"y6*y10", {{1, 0}, {0, 2}}, false},
                {"y6*y12", {{2, 0}, {1, 1}, {0, 2}}, false},
                {"y10*y12", {{2, 0}, {1, 1}, {0, 2}}, false},
                {"y6*y10*y12", {{2, 0}, {0, 2}}, false},
            };
            return profile_fact(ctx, "L9.8", Family::spin, 13, 1, exp,
                                "Spin(13) restriction-image profile");
        });

    add("C10.6", "Spin(17) top-row profile", {"spin17", "profile"},
        "y_top ideal contains 2^4 and 2^3 v at level 1, and 2^3 v at level 2",
        [](VerifyContext& ctx) {
            std::vector<ProfileExpect> exp1 = {{"y6*y10*y12*y14", {{4, 0}, {3, 1}}, true}};
            FactReport a = profile_fact(ctx, "C10.6", Family::spin, 17, 1, exp1,
                                        "Spin(17) y_top ideal, level 1");
            std::vector<ProfileExpect> exp2 = {{"y6*y10*y12*y14", {{4, 0}, {3, 1}}, true}};
            FactReport b = profile_fact(ctx, "C10.6", Family::spin, 17, 2, exp2,
                                        "Spin(17) y_top ideal, level 2");
            FactReport r;
            r.id = "C10.6";
            r.citation = "(2^4, 2^3 v_1, 2^3 v_2) y_top inside the restriction image";
            r.pass = a.pass && b.pass;
            r.certified = a.certified && b.certified;
            r.witness["level1"] = a.witness;
            r.witness["level2"] = b.witness;
            return r;
        });

    add("T8.2", "Spin(11) norm quotient", {"spin11", "norm"},
        "gr/N additively the exterior algebra on c_2, c_4", [](VerifyContext& ctx) {
            return norm_quotient_fact(ctx, "T8.2", 11, lambda_c2_c4(),
                                      "Spin(11) norm quotient");
        });

    add("L9.7", "Spin(13) norm quotient", {"spin13", "norm"},
        "gr/N = gr/(2, c_3c_6, c_5c_6, e_8c_6)", [](VerifyContext& ctx) {
            return norm_quotient_fact(ctx, "L9.7", 13, spin13_norm_quotient(),
                                      "Spin(13) norm quotient");
        });

    for (int ell = 3; ell <= 9; ++ell) {
        std::string id = "L3.9-l" + std::to_string(ell);
        std::string witness;
        if (ell == 5)
            witness = "e_8";
        else if (ell == 6)
            witness = "c_6*e_8";
        else if (ell == 8)
            witness = "c_3*c_5*c_6*c_7";
        add(id, "torsion index bound, l = " + std::to_string(ell), {"torsion"},
            "the monomial search reproduces the torsion index",
            [ell, witness](VerifyContext& ctx) {
                return torsion_fact(ctx, "L3.9-l" + std::to_string(ell), ell, witness,
                                    "torsion index of Spin(" + std::to_string(2 * ell + 1) +
                                        ")");
            });
    }

    add("T11.1", "low-degree stability across l = 7, 8, 9", {"stability"},
        "below degree 16 the graded basis is the square-free words in c_2..c_7",
        [](VerifyContext& ctx) {
            return stability_fact(ctx, "T11.1", "stable range of the graded basis");
        });

    add("L11.2", "the Euler-type class survives", {"stability"},
        "e_{2^{t+1}} != 0 in gr/2 for l = 5, 6, 7, 9 (two-power ranks carry no claim)",
        [](VerifyContext& ctx) {
            return euler_fact(ctx, "L11.2", "Euler-type class nonvanishing");
        });

    return facts;
}

} // namespace

VerifyContext::VerifyContext(std::string cache_dir, int max_factors)
    : cache_dir_(std::move(cache_dir)), max_factors_(max_factors)
{
}

const GroupModel& VerifyContext::model(Family f, int m)
{
    std::string key = (f == Family::spin ? "s" : "o") + std::to_string(m);
    auto it = models_.find(key);
    if (it == models_.end())
        it = models_.emplace(key, GroupModel::build(f, m)).first;
    return it->second;
}

LatticeEngine& VerifyContext::engine(Family f, int m, int n)
{
    std::string key =
        (f == Family::spin ? "s" : "o") + std::to_string(m) + "n" + std::to_string(n);
    auto it = engines_.find(key);
    if (it == engines_.end()) {
        auto eng = std::make_unique<LatticeEngine>(model(f, m), TheorySpec(n), max_factors_);
        if (!cache_dir_.empty()) {
            caches_.push_back(std::make_unique<LatticeCache>(
                cache_dir_, eng->model(), eng->theory(), eng->max_factors(), Val2::infinity()));
            caches_.back()->attach(*eng);
        }
        it = engines_.emplace(key, std::move(eng)).first;
    }
    return *it->second;
}

ClassVerdict VerifyContext::check_class(Family f, int m, int n, const ChernMonomial& mono)
{
    LatticeEngine& eng = engine(f, m, n);
    ClassVerdict v = eng.class_in_gr(mono);
    if (dual_check) {
        bool dense = eng.vanishing_membership_dense(v.degree, v.image);
        ++dual_checks_run;
        if (dense != v.zero)
            throw std::logic_error("membership oracles disagree on " + monomial_str(mono));
    }
    return v;
}

FactReport check_basis(VerifyContext& ctx, const std::string& id, Family f, int m, int n,
                       int dmax, const std::vector<BasisEntry>& expected)
{
    FactReport r;
    r.id = id;
    auto& eng = ctx.engine(f, m, n);
    std::vector<BasisEntry> got;
    bool certified = true;
    Json table = Json::array();
    for (int d = 0; d <= dmax; d += 2) {
        GrComponent c = eng.gr_component(d);
        for (const auto& fac : c.factors)
            got.push_back({d, fac.free ? -1 : fac.torsion_val2, monomial_str(fac.rep)});
        if (!c.factors.empty()) {
            certified = certified && c.certified;
            table.push_back(gr_component_to_json(eng.model(), c));
        }
    }
    auto ge = sorted_entries(got);
    auto xe = sorted_entries(expected);
    r.pass = ge.size() == xe.size();
    if (r.pass)
        for (size_t i = 0; i < ge.size(); ++i)
            if (ge[i].degree != xe[i].degree || ge[i].order != xe[i].order ||
                ge[i].rep != xe[i].rep)
                r.pass = false;
    // Each expected representative must itself be robustly nonzero in gr/2.
    for (const auto& e : xe) {
        ClassVerdict v = ctx.check_class(f, m, n, mono(e.rep));
        if (v.zero || !v.certified)
            r.pass = r.pass && false;
        certified = certified && v.certified;
    }
    r.certified = certified;
    r.witness["computed"] = entries_json(ge);
    r.witness["expected"] = entries_json(xe);
    r.witness["table"] = table;
    return r;
}

const std::vector<PaperFact>& fact_registry()
{
    static const std::vector<PaperFact> registry = build_registry();
    return registry;
}

bool fact_exists(const std::string& id)
{
    for (const auto& f : fact_registry())
        if (f.id == id)
            return true;
    return false;
}

FactReport verify_fact(const std::string& id, VerifyContext& ctx)
{
    for (const auto& f : fact_registry())
        if (f.id == id) {
            FactReport r = f.run(ctx);
            if (r.citation.empty())
                r.citation = f.citation;
            return r;
        }
    throw std::invalid_argument("unknown fact id: " + id);
}

SuiteReport run_suite(const std::string& filter, VerifyContext& ctx)
{
    SuiteReport s;
    for (const auto& f : fact_registry()) {
        bool match = filter.empty() || f.id.find(filter) != std::string::npos;
        for (const auto& t : f.tags)
            match = match || t.find(filter) != std::string::npos;
        if (!match)
            continue;
        FactReport r = f.run(ctx);
        if (r.citation.empty())
            r.citation = f.citation;
        if (r.pass && r.certified)
            ++s.passed;
        else if (r.pass)
            ++s.uncertified;
        else
            ++s.failed;
        s.reports.push_back(std::move(r));
    }
    std::sort(s.reports.begin(), s.reports.end(),
              [](const FactReport& a, const FactReport& b) { return a.id < b.id; });
    return s;
}

std::string suite_text(const SuiteReport& s)
{
    std::ostringstream out;
    for (const auto& r : s.reports)
        out << (r.pass ? (r.certified ? "PASS " : "PASS?") : "FAIL ") << " " << r.id << "  "
            << r.citation << "\n";
    out << "passed " << s.passed << ", failed " << s.failed << ", uncertified "
        << s.uncertified << "\n";
    return out.str();
}

Json suite_json(const SuiteReport& s)
{
    Json j;
    Json reports = Json::array();
    for (const auto& r : s.reports) {
        Json e;
        e["id"] = r.id;
        e["pass"] = r.pass;
        e["certified"] = r.certified;
        e["citation"] = r.citation;
        e["witness"] = r.witness;
        reports.push_back(e);
    }
    j["facts"] = reports;
    j["passed"] = s.passed;
    j["failed"] = s.failed;
    j["uncertified"] = s.uncertified;
    return j;
}

} // namespace spingr
