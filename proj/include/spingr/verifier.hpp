#pragma once

#include "spingr/cache.hpp"
#include "spingr/lattice.hpp"
#include "spingr/report.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace spingr {

struct FactReport {
    std::string id;
    bool pass = false;
    bool certified = false;
    std::string citation;
    Json witness;
};

/// Shared engines across facts; optionally cross-checks every vanishing
/// membership against the independent Smith-reduction route.
class VerifyContext {
public:
    explicit VerifyContext(std::string cache_dir = "", int max_factors = 0);

    LatticeEngine& engine(Family f, int m, int n);
    const GroupModel& model(Family f, int m);

    bool dual_check = false;
    int dual_checks_run = 0;

    /// class_in_gr with the optional dense cross-check; throws on oracle
    /// disagreement.
    ClassVerdict check_class(Family f, int m, int n, const ChernMonomial& mono);

private:
    std::string cache_dir_;
    int max_factors_;
    std::map<std::string, GroupModel> models_;
    std::map<std::string, std::unique_ptr<LatticeEngine>> engines_;
    std::vector<std::unique_ptr<LatticeCache>> caches_;
};

struct PaperFact {
    std::string id;
    std::string title;
    std::vector<std::string> tags;
    std::string citation;
    std::function<FactReport(VerifyContext&)> run;
};

const std::vector<PaperFact>& fact_registry();
bool fact_exists(const std::string& id);
FactReport verify_fact(const std::string& id, VerifyContext& ctx);

struct SuiteReport {
    std::vector<FactReport> reports;
    int passed = 0;
    int failed = 0;
    int uncertified = 0;

    /// Suite contract: an uncertified pass counts as a failure.
    bool ok() const { return failed == 0 && uncertified == 0; }
};

SuiteReport run_suite(const std::string& filter, VerifyContext& ctx);

std::string suite_text(const SuiteReport& s);
Json suite_json(const SuiteReport& s);

/// Expected gr structure: (degree, order valuation with -1 = free, monomial).
struct BasisEntry {
    int degree;
    long order; // -1 free, k >= 1 torsion 2^k
    std::string rep;
};

/// Checks a gr table against an expected basis on [0, dmax]; zero elsewhere.
FactReport check_basis(VerifyContext& ctx, const std::string& id, Family f, int m, int n,
                       int dmax, const std::vector<BasisEntry>& expected);

} // namespace spingr
