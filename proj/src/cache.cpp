#include "spingr/cache.hpp"

#include "spingr/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace spingr {

namespace {

constexpr int kCacheFormat = 1;

std::optional<MonoMask> parse_mono_mask(const GeneratorTable& g, const std::string& s)
{
    if (s == "1")
        return MonoMask{0};
    MonoMask m = 0;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        if (tok.size() < 2 || tok[0] != 'y')
            return std::nullopt;
        auto idx = g.index_of_degree(std::stoi(tok.substr(1)));
        if (!idx)
            return std::nullopt;
        m |= MonoMask{1} << *idx;
    }
    return m;
}

} // namespace

std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

LatticeCache::LatticeCache(std::string dir, const GroupModel& model, TheorySpec theory,
                           int max_factors, const Val2& precision_cap)
    : dir_(std::move(dir)), model_(&model)
{
    std::string cfg = model_to_json(model).dump() + "|n=" + std::to_string(theory.n) +
                      "|mf=" + std::to_string(max_factors) + "|prec=" + precision_cap.str() +
                      "|fmt=" + std::to_string(kCacheFormat);
    std::uint64_t h = fnv1a64(cfg);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    key_ = std::string(buf) + "|" + cfg;
}

std::string LatticeCache::path_for(int degree) const
{
    std::string hash = key_.substr(0, 16);
    std::string tag = degree < 0 ? "m" + std::to_string(-degree) : std::to_string(degree);
    return dir_ + "/" + hash + "-d" + tag + ".json";
}

bool LatticeCache::load(int degree, DegreeLattice* out) const
{
    if (!enabled())
        return false;
    std::ifstream in(path_for(degree));
    if (!in)
        return false;
    Json j;
    try {
        in >> j;
    }
    catch (const std::exception&) {
        return false;
    }
    if (!j.contains("config") || j["config"].get<std::string>() != key_)
        return false;
    DegreeLattice lat;
    lat.degree = j["degree"].get<int>();
    for (const auto& r : j["rows"]) {
        auto mask = parse_mono_mask(model_->gens(), r[1].get<std::string>());
        if (!mask)
            return false;
        lat.rows.push_back(TermKey{r[0].get<int>(), *mask});
    }
    for (const auto& g : j["gens"]) {
        DegreeLattice::Gen gen;
        auto mono = parse_chern_monomial(g["mono"].get<std::string>());
        if (!mono)
            return false;
        gen.mono = *mono;
        gen.kshift = g["k"].get<int>();
        gen.q = val2_parse(g["q"].get<std::string>());
        for (const auto& e : g["vec"]) {
            auto d = Dyadic::parse(e.get<std::string>());
            if (!d)
                return false;
            gen.vec.push_back(*d);
        }
        if (gen.vec.size() != lat.rows.size())
            return false;
        lat.gens.push_back(std::move(gen));
    }
    lat.oracle = j["oracle"].get<bool>();
    lat.cert_precision = val2_parse(j["cert_precision"].get<std::string>());
    *out = std::move(lat);
    return true;
}

void LatticeCache::store(const DegreeLattice& lat) const
{
    if (!enabled())
        return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    Json j;
    j["config"] = key_;
    j["degree"] = lat.degree;
    Json rows = Json::array();
    for (const auto& r : lat.rows)
        rows.push_back(Json::array({r.vexp, model_->gens().mono_name(r.mono)}));
    j["rows"] = rows;
    Json gens = Json::array();
    for (const auto& g : lat.gens) {
        Json e;
        e["mono"] = monomial_str(g.mono);
        e["k"] = g.kshift;
        e["q"] = g.q.str();
        Json vec = Json::array();
        for (const auto& d : g.vec)
            vec.push_back(d.str());
        e["vec"] = vec;
        gens.push_back(e);
    }
    j["gens"] = gens;
    j["oracle"] = lat.oracle;
    j["cert_precision"] = lat.cert_precision.str();
    std::string tmp = path_for(lat.degree) + ".tmp";
    {
        std::ofstream outf(tmp);
        outf << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path_for(lat.degree), ec);
}

void LatticeCache::attach(LatticeEngine& engine)
{
    if (!enabled())
        return;
    engine.set_cache([this](int d, DegreeLattice* out) { return load(d, out); },
                     [this](const DegreeLattice& lat) { store(lat); });
}

} // namespace spingr
