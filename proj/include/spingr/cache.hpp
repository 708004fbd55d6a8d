#pragma once

#include "spingr/lattice.hpp"

#include <string>

namespace spingr {

/// One JSON file per (model, theory, degree) lattice, keyed by a content hash
/// of the model and every semantically relevant configuration value.
class LatticeCache {
public:
    LatticeCache(std::string dir, const GroupModel& model, TheorySpec theory, int max_factors,
                 const Val2& precision_cap);

    bool enabled() const { return !dir_.empty(); }
    bool load(int degree, DegreeLattice* out) const;
    void store(const DegreeLattice& lat) const;

    /// Installs load/store hooks on an engine.
    void attach(LatticeEngine& engine);

    const std::string& config_key() const { return key_; }

private:
    std::string path_for(int degree) const;

    std::string dir_;
    const GroupModel* model_;
    std::string key_;
};

std::uint64_t fnv1a64(const std::string& s);

} // namespace spingr
