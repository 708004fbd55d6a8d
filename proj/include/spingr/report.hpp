#pragma once

#include "spingr/lattice.hpp"

#include <json.hpp>

#include <string>

namespace spingr {

using Json = nlohmann::json;

Json model_to_json(const GroupModel& model);
Json element_to_json(const AmbientElement& x);
Json gr_component_to_json(const GroupModel& model, const GrComponent& c);
Json gr_table_json(const GroupModel& model, const std::vector<GrComponent>& comps);
Json profile_row_to_json(const GroupModel& model, const ProfileRow& r);

std::string gr_table_csv(const GroupModel& model, const std::vector<GrComponent>& comps);
std::string gr_table_text(const GroupModel& model, const std::vector<GrComponent>& comps);

std::string val2_str(const Val2& v);
Val2 val2_parse(const std::string& s);

} // namespace spingr
