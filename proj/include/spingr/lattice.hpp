#pragma once

#include "spingr/model.hpp"
#include "spingr/zmodule.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spingr {

/// The degree-d slice of Z_(2)[v] (x) P(y): basis of pairs (v-exponent,
/// square-free monomial) ordered by (v-exponent, mask), spanning columns
/// v^k * image(M) with their tail levels, and the exact top-degree torsion
/// normalization when the torsion index is known.
struct DegreeLattice {
    int degree = 0;
    std::vector<TermKey> rows;
    struct Gen {
        ChernMonomial mono;
        int kshift = 0;
        Val2 q = Val2::infinity();
        DVec vec;
    };
    std::vector<Gen> gens;   // stored-nonzero generators only
    bool oracle = false;     // top degree: lattice equals t(G) * Z * y_top
    Val2 cert_precision = Val2::infinity(); // least tail level among gens
};

struct GrFactor {
    bool free = false;
    long torsion_val2 = 0; // order 2^k for torsion factors
    ChernMonomial rep;

    std::string order_str() const
    {
        if (free)
            return "free";
        return (BigInt(1) << torsion_val2).str();
    }
};

struct GrComponent {
    int degree = 0;
    std::vector<GrFactor> factors;
    bool certified = false;
};

struct ClassVerdict {
    bool zero = false;
    bool certified = false;
    int degree = 0;
    AmbientElement image;
};

struct SaturationResult {
    bool found = false;
    int threshold = 0;         // reported: max(containment level, depth + 1)
    int containment_level = 0; // least s with W_s inside 2*Im + v*Im, all degrees
    int depth = 0;             // largest factor count with a surviving image
};

struct ProfileGen {
    long pow2 = 0;
    int vpow = 0;

    std::string str() const
    {
        std::string s;
        if (pow2 > 0 || vpow == 0)
            s = pow2 == 0 ? "1" : (pow2 == 1 ? "2" : "2^" + std::to_string(pow2));
        if (vpow > 0) {
            if (!s.empty())
                s += "*";
            s += "v^" + std::to_string(vpow);
        }
        return s;
    }

    friend bool operator==(const ProfileGen& a, const ProfileGen& b)
    {
        return a.pow2 == b.pow2 && a.vpow == b.vpow;
    }
};

struct ProfileRow {
    MonoMask mono = 0;
    std::vector<ProfileGen> gens;
    bool certified = false;
};

/// Norm-map data: for each square-free monomial, the scalar * monomial class
/// realizing its transfer.
struct NormValue {
    Dyadic scalar;
    ChernMonomial mono;
};
struct NormTable {
    std::map<MonoMask, NormValue> entries;
};

/// Built-in norm tables where the values are known (Spin(11), Spin(13)).
std::optional<NormTable> builtin_norm_table(const GroupModel& model);

struct NormQuotientResult {
    std::vector<GrComponent> components; // nonempty degrees only
};

/// Per-degree integer linear algebra over Z_(2) for one model and theory:
/// restriction-image lattices, associated-graded components, membership
/// verdicts, saturation levels, image profiles and norm quotients.
///
/// Certification model: every verdict is re-checked against perturbations of
/// the spanning columns inside their tail lattices I^q; verdicts that are not
/// stable are flagged, never asserted.
class LatticeEngine {
public:
    using CacheHook = std::function<bool(int degree, DegreeLattice*)>;
    using StoreHook = std::function<void(const DegreeLattice&)>;

    enum class ColumnOrder { forward, reversed };

    LatticeEngine(const GroupModel& model, TheorySpec theory, int max_factors = 0,
                  Val2 precision_cap = Val2::infinity(),
                  ColumnOrder order = ColumnOrder::forward);

    const GroupModel& model() const { return model_; }
    TheorySpec theory() const { return theory_; }
    int max_factors() const { return max_factors_; }
    int shift() const { return theory_.shift(); }
    int top_degree() const { return model_.ytop_degree(); }

    void set_cache(CacheHook load, StoreHook store)
    {
        cache_load_ = std::move(load);
        cache_store_ = std::move(store);
    }

    std::vector<TermKey> slice_rows(int d) const;
    const DegreeLattice& lattice_at(int d);

    /// Invariant factors of Im^d / (v * Im^{d+shift}) with greedy monomial
    /// representatives.
    GrComponent gr_component(int d);

    /// Zero/nonzero verdict for a Chern-monomial class in gr(n)^d / 2.
    ClassVerdict class_in_gr(const ChernMonomial& mono);

    /// As class_in_gr for an arbitrary element of the given degree (used for
    /// sums of monomial classes).
    ClassVerdict element_in_gr(const AmbientElement& x, int degree);

    SaturationResult saturation(int dmin, int dmax);

    /// Leading-coefficient ideals of Im per square-free monomial.
    std::vector<ProfileRow> image_profile();

    NormQuotientResult norm_quotient(const NormTable& table);

    /// Least s <= cap with W_s^d inside 2 L_d + v L_{d+shift}; -1 if none.
    int satlevel(int d);

    /// As satlevel, but every spanning column enters scaled so that its tail
    /// sits beyond level s+1; this is the level at which the containment is
    /// robust against the unknown image tails.
    int satlevel_certified(int d);

    const AmbientElement& image_of(const ChernMonomial& mono);

    /// Membership of an ambient element in 2*Im^d + v*Im^{d+shift} through the
    /// independent Smith-reduction route (the cross-check oracle).
    bool vanishing_membership_dense(int d, const AmbientElement& x);

    static constexpr int kSatCap = 16;

private:
    DVec to_vec(const std::vector<TermKey>& rows, const AmbientElement& x) const;
    const ColEchelon& span_echelon(int d);
    const ColEchelon& vanish_echelon(int d); // 2 L_d + v L_{d+shift}
    std::vector<LatCol> vanish_cols(int d);
    std::vector<LatCol> shifted_up_cols(int d);
    std::vector<LatCol> transfer_cols(int d);
    std::vector<LatCol> wlattice_cols(const std::vector<TermKey>& rows, long s) const;
    bool local_certified(int d); // span stability under tail perturbations
    std::vector<GrFactor> quotient_factors(int d, const std::vector<LatCol>& rels,
                                           bool* certified_match);

    GroupModel model_;
    TheorySpec theory_;
    int max_factors_;
    Val2 precision_cap_;
    ColumnOrder order_;
    std::vector<ChernMonomial> enumeration_;
    std::map<ChernMonomial, AmbientElement> images_;
    std::map<int, DegreeLattice> lattices_;
    std::map<int, ColEchelon> span_ech_, vanish_ech_;
    std::map<int, int> satlevel_, satlevel_cg_;
    std::map<int, bool> local_cert_;
    CacheHook cache_load_;
    StoreHook cache_store_;
};

} // namespace spingr
