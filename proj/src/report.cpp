#include "spingr/report.hpp"

namespace spingr {

std::string val2_str(const Val2& v) { return v.str(); }

Val2 val2_parse(const std::string& s)
{
    if (s == "inf")
        return Val2::infinity();
    return Val2(std::stol(s));
}

Json model_to_json(const GroupModel& model)
{
    Json j;
    j["family"] = model.family() == Family::spin ? "spin" : "so";
    j["m"] = model.m();
    j["ell"] = model.ell();
    if (model.family() == Family::spin) {
        j["ell_bar"] = model.ell_bar();
        j["t"] = model.t();
        j["euler_class"] = "e_" + std::to_string(model.euler_codim());
        j["euler_degree"] = model.euler_degree();
    }
    Json gens = Json::array();
    const GeneratorTable& g = model.gens();
    for (int i = 0; i < g.size(); ++i) {
        Json e;
        e["name"] = g.name(i);
        e["degree"] = g.degree(i);
        switch (g.gen(i).rule) {
        case SquareRule::exact:
            e["square"] = g.name(g.gen(i).square_index);
            break;
        case SquareRule::zero_exact:
            e["square"] = "0";
            break;
        case SquareRule::zero_with_error:
            e["square"] = "0 mod higher filtration";
            break;
        }
        gens.push_back(e);
    }
    j["generators"] = gens;
    j["chern_indices"] = Json::array();
    for (int i = model.chern_lo(); i <= model.chern_hi(); ++i)
        j["chern_indices"].push_back(i);
    if (model.torsion_known())
        j["torsion_index"] = model.torsion_index().str();
    j["y_top"] = g.mono_name(model.ytop());
    j["y_top_degree"] = model.ytop_degree();
    return j;
}

Json element_to_json(const AmbientElement& x)
{
    Json j;
    j["theory"] = x.theory().n;
    j["prec"] = val2_str(x.precision());
    Json terms = Json::array();
    for (const auto& [k, c] : x.terms()) {
        Json t;
        t["v"] = k.vexp;
        t["mono"] = x.table()->mono_name(k.mono);
        t["coeff"] = c.str();
        terms.push_back(t);
    }
    j["terms"] = terms;
    j["text"] = x.str();
    return j;
}

Json gr_component_to_json(const GroupModel& model, const GrComponent& c)
{
    (void)model;
    Json j;
    j["degree"] = c.degree;
    j["certified"] = c.certified;
    Json fs = Json::array();
    for (const auto& f : c.factors) {
        Json e;
        e["order"] = f.order_str();
        e["rep"] = monomial_str(f.rep);
        fs.push_back(e);
    }
    j["factors"] = fs;
    return j;
}

Json gr_table_json(const GroupModel& model, const std::vector<GrComponent>& comps)
{
    Json table;
    table["model"] = model.name();
    Json by_degree = Json::object();
    for (const auto& c : comps) {
        if (c.factors.empty())
            continue;
        Json e;
        Json orders = Json::array(), reps = Json::array();
        for (const auto& f : c.factors) {
            orders.push_back(f.order_str());
            reps.push_back(monomial_str(f.rep));
        }
        e["factors"] = orders;
        e["representatives"] = reps;
        e["certified"] = c.certified;
        by_degree[std::to_string(c.degree)] = e;
    }
    table["components"] = by_degree;
    return table;
}

Json profile_row_to_json(const GroupModel& model, const ProfileRow& r)
{
    Json j;
    j["mono"] = model.gens().mono_name(r.mono);
    j["certified"] = r.certified;
    Json gens = Json::array();
    for (const auto& g : r.gens)
        gens.push_back(g.str());
    j["ideal"] = gens;
    return j;
}

std::string gr_table_csv(const GroupModel& model, const std::vector<GrComponent>& comps)
{
    (void)model;
    std::string s = "degree,factor_order,representative,certified\n";
    for (const auto& c : comps)
        for (const auto& f : c.factors)
            s += std::to_string(c.degree) + "," + f.order_str() + "," + monomial_str(f.rep) +
                 "," + (c.certified ? "true" : "false") + "\n";
    return s;
}

std::string gr_table_text(const GroupModel& model, const std::vector<GrComponent>& comps)
{
    std::string s = "gr table for " + model.name() + "\n";
    for (const auto& c : comps) {
        if (c.factors.empty())
            continue;
        s += "  d=" + std::to_string(c.degree) + ": ";
        bool first = true;
        for (const auto& f : c.factors) {
            if (!first)
                s += " + ";
            first = false;
            s += (f.free ? std::string("Z_(2)") : "Z/" + f.order_str()) + "{" +
                 monomial_str(f.rep) + "}";
        }
        if (!c.certified)
            s += "   [heuristic]";
        s += "\n";
    }
    return s;
}

} // namespace spingr
