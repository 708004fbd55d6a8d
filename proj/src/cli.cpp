#include "spingr/cli.hpp"

#include "spingr/cache.hpp"
#include "spingr/report.hpp"
#include "spingr/verifier.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <iostream>
#include <thread>

namespace spingr {

namespace {

struct RunConfig {
    std::string family = "spin";
    int m = 11;
    int n = 1;
    int dmin = 0;
    int dmax = -1; // default: top degree
    int max_factors = 0;
    long precision = -1; // optional cap on image precision
    std::string format = "text";
    std::string cache_dir;

    Family fam() const { return family == "so" ? Family::so : Family::spin; }
    Val2 prec_cap() const { return precision < 0 ? Val2::infinity() : Val2(precision); }
};

void add_model_options(CLI::App* cmd, RunConfig& cfg, bool with_theory = true)
{
    cmd->add_option("--family", cfg.family, "group family: spin or so")
        ->check(CLI::IsMember({"spin", "so"}));
    cmd->add_option("--m", cfg.m, "group parameter m in Spin(m)/SO(m), odd");
    if (with_theory)
        cmd->add_option("--n", cfg.n, "theory level n of k(n)")->check(CLI::Range(1, 8));
}

void add_common_options(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--dmin", cfg.dmin, "lowest topological degree");
    cmd->add_option("--dmax", cfg.dmax, "highest topological degree (default: top)");
    cmd->add_option("--max-factors", cfg.max_factors, "generation depth override");
    cmd->add_option("--precision", cfg.precision, "cap image precision (testing aid)");
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--cache-dir", cfg.cache_dir, "lattice cache directory");
}

std::unique_ptr<LatticeEngine> make_engine(const GroupModel& model, const RunConfig& cfg,
                                           std::vector<std::unique_ptr<LatticeCache>>& caches)
{
    auto eng = std::make_unique<LatticeEngine>(model, TheorySpec(cfg.n), cfg.max_factors,
                                               cfg.prec_cap());
    std::string dir = cfg.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("SPINGR_CACHE_DIR"))
            dir = env;
    if (!dir.empty()) {
        caches.push_back(std::make_unique<LatticeCache>(dir, eng->model(), eng->theory(),
                                                        eng->max_factors(), cfg.prec_cap()));
        caches.back()->attach(*eng);
    }
    return eng;
}

std::vector<GrComponent> gr_table(const GroupModel& model, const RunConfig& cfg,
                                  std::vector<std::unique_ptr<LatticeCache>>& caches)
{
    int hi = cfg.dmax < 0 ? model.ytop_degree() : cfg.dmax;
    int lo = std::max(0, cfg.dmin);
    if (lo % 2)
        ++lo;
    std::vector<int> degrees;
    for (int d = lo; d <= hi; d += 2)
        degrees.push_back(d);

    // Degrees are independent; shard them across a few worker engines and
    // assemble in order.
    unsigned workers = std::min<unsigned>(4, std::thread::hardware_concurrency());
    if (workers < 2 || degrees.size() < 4) {
        auto eng = make_engine(model, cfg, caches);
        std::vector<GrComponent> out;
        for (int d : degrees)
            out.push_back(eng->gr_component(d));
        return out;
    }
    std::vector<GrComponent> out(degrees.size());
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&, w]() {
            std::vector<std::unique_ptr<LatticeCache>> local_caches;
            auto eng = make_engine(model, cfg, local_caches);
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= degrees.size())
                    break;
                out[i] = eng->gr_component(degrees[i]);
            }
        }));
    for (auto& f : futs)
        f.get();
    return out;
}

int run_model(const RunConfig& cfg, std::ostream& out)
{
    GroupModel model = GroupModel::build(cfg.fam(), cfg.m);
    Json j = model_to_json(model);
    if (cfg.format == "json")
        out << j.dump(1) << "\n";
    else {
        out << model.name() << ": generators";
        for (int i = 0; i < model.gens().size(); ++i)
            out << " " << model.gens().name(i);
        out << ", y_top = " << model.gens().mono_name(model.ytop());
        if (model.family() == Family::spin)
            out << ", t = " << model.t() << ", e-class e_" << model.euler_codim();
        if (model.torsion_known())
            out << ", torsion index " << model.torsion_index().str();
        out << "\n";
        for (const auto& g : j["generators"])
            out << "  " << g["name"].get<std::string>() << " (degree " << g["degree"]
                << "): square = " << g["square"].get<std::string>() << "\n";
    }
    return 0;
}

int run_image(const RunConfig& cfg, const std::string& cls, std::ostream& out,
              std::ostream& err)
{
    auto mono = parse_chern_monomial(cls);
    if (!mono) {
        err << "cannot parse class '" << cls << "'\n";
        return 2;
    }
    GroupModel model = GroupModel::build(cfg.fam(), cfg.m);
    AmbientElement img = model.monomial_image(*mono, TheorySpec(cfg.n));
    if (cfg.format == "json")
        out << element_to_json(img).dump(1) << "\n";
    else
        out << monomial_str(*mono) << " -> " << img.str() << "\n";
    return 0;
}

int run_gr(const RunConfig& cfg, std::ostream& out)
{
    GroupModel model = GroupModel::build(cfg.fam(), cfg.m);
    std::vector<std::unique_ptr<LatticeCache>> caches;
    auto comps = gr_table(model, cfg, caches);
    if (cfg.format == "csv")
        out << gr_table_csv(model, comps);
    else if (cfg.format == "json")
        out << gr_table_json(model, comps).dump(1) << "\n";
    else
        out << gr_table_text(model, comps);
    return 0;
}

int run_profile(const RunConfig& cfg, std::ostream& out)
{
    GroupModel model = GroupModel::build(cfg.fam(), cfg.m);
    std::vector<std::unique_ptr<LatticeCache>> caches;
    auto eng = make_engine(model, cfg, caches);
    auto rows = eng->image_profile();
    if (cfg.format == "json") {
        Json j = Json::array();
        for (const auto& r : rows)
            j.push_back(profile_row_to_json(model, r));
        out << j.dump(1) << "\n";
    }
    else {
        out << "image profile for " << model.name() << ", level " << cfg.n << "\n";
        for (const auto& r : rows) {
            out << "  " << model.gens().mono_name(r.mono) << ": (";
            for (size_t i = 0; i < r.gens.size(); ++i)
                out << (i ? ", " : "") << r.gens[i].str();
            out << ")" << (r.certified ? "" : "   [heuristic]") << "\n";
        }
    }
    return 0;
}

int run_torsion(const RunConfig& cfg, std::ostream& out)
{
    GroupModel model = GroupModel::build(cfg.fam(), cfg.m);
    int mf = cfg.max_factors > 0 ? cfg.max_factors : default_max_factors(model);
    auto res = torsion_bound_search(model, TheorySpec(cfg.n), mf);
    if (cfg.format == "json") {
        Json j;
        j["found"] = res.found;
        if (res.found) {
            j["bound"] = res.bound.str();
            j["witness"] = monomial_str(res.witness);
        }
        if (model.torsion_known())
            j["table"] = model.torsion_index().str();
        out << j.dump(1) << "\n";
    }
    else if (res.found)
        out << "torsion bound " << res.bound.str() << " with witness "
            << monomial_str(res.witness) << "\n";
    else
        out << "no bound found within " << mf << " factors\n";
    return res.found ? 0 : 1;
}

int run_saturate(const RunConfig& cfg, std::ostream& out)
{
    GroupModel model = GroupModel::build(cfg.fam(), cfg.m);
    std::vector<std::unique_ptr<LatticeCache>> caches;
    auto eng = make_engine(model, cfg, caches);
    int hi = cfg.dmax < 0 ? model.ytop_degree() : cfg.dmax;
    SaturationResult s = eng->saturation(cfg.dmin, hi);
    if (cfg.format == "json") {
        Json j;
        j["found"] = s.found;
        j["threshold"] = s.threshold;
        j["containment_level"] = s.containment_level;
        j["depth"] = s.depth;
        out << j.dump(1) << "\n";
    }
    else if (s.found)
        out << "saturation threshold " << s.threshold << " (containment level "
            << s.containment_level << ", depth " << s.depth << ")\n";
    else
        out << "no saturation level <= 8 found\n";
    return s.found ? 0 : 1;
}

int run_verify(const RunConfig& cfg, const std::string& fact, const std::string& filter,
               std::ostream& out, std::ostream& err)
{
    VerifyContext ctx(cfg.cache_dir, cfg.max_factors);
    if (!fact.empty()) {
        if (!fact_exists(fact)) {
            err << "unknown fact id '" << fact << "'\n";
            return 2;
        }
        FactReport r = verify_fact(fact, ctx);
        if (cfg.format == "json") {
            Json j;
            j["id"] = r.id;
            j["pass"] = r.pass;
            j["certified"] = r.certified;
            j["citation"] = r.citation;
            j["witness"] = r.witness;
            out << j.dump(1) << "\n";
        }
        else
            out << (r.pass ? (r.certified ? "PASS " : "PASS?") : "FAIL ") << " " << r.id
                << "  " << r.citation << "\n";
        return r.pass && r.certified ? 0 : 1;
    }
    SuiteReport s = run_suite(filter, ctx);
    if (cfg.format == "json")
        out << suite_json(s).dump(1) << "\n";
    else
        out << suite_text(s);
    return s.ok() ? 0 : 1;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"graded rings of K-theories for versal spin-group torsors"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* model = app.add_subcommand("model", "print the group model");
    add_model_options(model, cfg, false);
    model->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* image = app.add_subcommand("image", "restriction image of a class");
    add_model_options(image, cfg);
    std::string cls = "c_2";
    image->add_option("--class", cls, "Chern monomial, e.g. c_2*c_3 or e_8");
    image->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* gr = app.add_subcommand("gr", "per-degree graded components");
    add_model_options(gr, cfg);
    add_common_options(gr, cfg);

    CLI::App* profile = app.add_subcommand("profile", "restriction-image profile");
    add_model_options(profile, cfg);
    add_common_options(profile, cfg);

    CLI::App* torsion = app.add_subcommand("torsion", "torsion index bound search");
    add_model_options(torsion, cfg);
    torsion->add_option("--max-factors", cfg.max_factors);
    torsion->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* verify = app.add_subcommand("verify", "run registered fact checks");
    std::string fact, filter;
    verify->add_option("--fact", fact, "single fact id, e.g. T10.4");
    verify->add_option("--filter", filter, "substring filter on ids and tags");
    verify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--max-factors", cfg.max_factors);
    verify->add_option("--cache-dir", cfg.cache_dir);

    CLI::App* saturate = app.add_subcommand("saturate", "saturation threshold");
    add_model_options(saturate, cfg);
    add_common_options(saturate, cfg);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (model->parsed())
            return run_model(cfg, out);
        if (image->parsed())
            return run_image(cfg, cls, out, err);
        if (gr->parsed())
            return run_gr(cfg, out);
        if (profile->parsed())
            return run_profile(cfg, out);
        if (torsion->parsed())
            return run_torsion(cfg, out);
        if (verify->parsed())
            return run_verify(cfg, fact, filter, out, err);
        if (saturate->parsed())
            return run_saturate(cfg, out);
    }
    catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace spingr
