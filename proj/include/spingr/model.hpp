#pragma once

#include "spingr/ambient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spingr {

enum class Family { spin, so };

/// A named class on the classifying-space side: c_i or the Euler-type class e_j
/// (j its Chow codimension, a power of two).
struct ChernSymbol {
    bool euler = false;
    int index = 0; // i for c_i; 2^{t+1} for e

    friend bool operator<(const ChernSymbol& a, const ChernSymbol& b)
    {
        if (a.euler != b.euler)
            return !a.euler; // all c's before e
        return a.index < b.index;
    }
    friend bool operator==(const ChernSymbol& a, const ChernSymbol& b)
    {
        return a.euler == b.euler && a.index == b.index;
    }

    std::string str() const
    {
        return (euler ? "e_" : "c_") + std::to_string(index);
    }
};

/// A multiset of symbols, kept sorted.
using ChernMonomial = std::vector<ChernSymbol>;

std::string monomial_str(const ChernMonomial& m);
std::optional<ChernMonomial> parse_chern_monomial(const std::string& s);

/// Combinatorial model of Spin(2l+1) or SO(2l+1): generator table, two-power
/// data, Chern/Euler image rules and the torsion index.
class GroupModel {
public:
    static GroupModel build(Family family, int m);

    Family family() const { return family_; }
    int m() const { return m_; }
    int ell() const { return ell_; }
    int ell_bar() const { return ell_bar_; }
    int t() const { return t_; } // spin only
    const GeneratorTable& gens() const { return gens_; }
    int chern_lo() const { return chern_lo_; }
    int chern_hi() const { return chern_hi_; }
    bool has_euler() const { return family_ == Family::spin; }
    int euler_codim() const { return euler_codim_; }      // 2^{t+1}
    int euler_degree() const { return 2 * euler_codim_; } // topological
    bool torsion_known() const { return torsion_known_; }
    const BigInt& torsion_index() const { return torsion_index_; }
    long torsion_val2() const;
    MonoMask ytop() const { return gens_.full_mask(); }
    int ytop_degree() const { return gens_.mono_degree(ytop()); }
    std::string name() const;

    bool valid_symbol(const ChernSymbol& s) const;

    /// Image of c_i: 2 y_{2i} + v y_{2i + 2^{n+1} - 2}, dead indices dropped;
    /// precision 2.
    AmbientElement chern_image(int i, TheorySpec theory) const;

    /// Image of e_{2^{t+1}}: 2 (pairs of degree sum 2^{t+2}) + v (pairs of
    /// degree sum 2^{t+2} + 2^{n+1} - 2); precision 2.  Spin models only.
    AmbientElement euler_image(TheorySpec theory) const;

    AmbientElement symbol_image(const ChernSymbol& s, TheorySpec theory) const;

    /// Ordered product of the factor images; the empty product is 1 at
    /// infinite precision.
    AmbientElement monomial_image(const ChernMonomial& mono, TheorySpec theory) const;

    int symbol_degree(const ChernSymbol& s) const
    {
        return s.euler ? euler_degree() : 2 * s.index;
    }
    int monomial_degree(const ChernMonomial& m) const
    {
        int d = 0;
        for (const auto& s : m)
            d += symbol_degree(s);
        return d;
    }

    /// The exact leading 2-part of an image: product of the coefficient-2
    /// components of the factors, square-reduced.  `defect_floor` bounds the
    /// valuation of everything this computation cannot see.
    struct LeadingPart {
        std::map<MonoMask, Dyadic> terms;
        Val2 defect_floor;
    };
    LeadingPart leading_two_part(const ChernMonomial& mono) const;

private:
    std::optional<int> resolve_degree(int d) const { return gens_.index_of_degree(d); }

    Family family_ = Family::spin;
    int m_ = 0;
    int ell_ = 0;
    int ell_bar_ = 0;
    int t_ = 0;
    GeneratorTable gens_;
    int chern_lo_ = 0;
    int chern_hi_ = 0;
    int euler_codim_ = 0;
    bool torsion_known_ = false;
    BigInt torsion_index_ = 0;
};

struct TorsionSearchResult {
    bool found = false;
    BigInt bound = 0;
    long bound_val2 = 0;
    ChernMonomial witness;
};

/// Enumerates Chern monomials of top degree and returns the least 2-power
/// coefficient certified to hit a unit multiple of y_top with v-exponent 0.
TorsionSearchResult torsion_bound_search(const GroupModel& model, TheorySpec theory,
                                         int max_factors);

/// Candidate monomials for lattice generation: square-free in the c's with an
/// arbitrary power of the Euler class, degree <= max_degree, at most
/// max_factors factors.  Deterministic order: (factor count, symbol-lex).
std::vector<ChernMonomial> enumerate_monomials(const GroupModel& model, int max_degree,
                                               int max_factors);

/// Default lattice generation depth: degree(y_top)/4 + 1, capped at 10.
int default_max_factors(const GroupModel& model);

} // namespace spingr
