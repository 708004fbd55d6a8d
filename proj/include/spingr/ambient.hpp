#pragma once

#include "spingr/dyadic.hpp"
#include "spingr/gentable.hpp"
#include "spingr/theory.hpp"

#include <map>
#include <vector>

namespace spingr {

/// One slot of the ambient module: v^vexp times a square-free monomial.
struct TermKey {
    int vexp = 0;
    MonoMask mono = 0;

    friend bool operator<(const TermKey& a, const TermKey& b)
    {
        if (a.vexp != b.vexp)
            return a.vexp < b.vexp;
        return a.mono < b.mono;
    }
    friend bool operator==(const TermKey& a, const TermKey& b)
    {
        return a.vexp == b.vexp && a.mono == b.mono;
    }
};

/// A term before square reduction: exponents may exceed one.
struct RawTerm {
    Dyadic coeff;
    int vexp = 0;
    std::vector<int> exps; // one slot per table generator
};

/// A finite sum of coefficient * v^a * monomial, known modulo (2, v)^precision.
/// Stored terms always have val2(coeff) + a < precision.
class AmbientElement {
public:
    AmbientElement(const GeneratorTable* table, TheorySpec theory)
        : table_(table), theory_(theory), prec_(Val2::infinity())
    {
    }

    static AmbientElement zero(const GeneratorTable* table, TheorySpec theory)
    {
        return AmbientElement(table, theory);
    }
    static AmbientElement one(const GeneratorTable* table, TheorySpec theory)
    {
        AmbientElement e(table, theory);
        e.terms_[TermKey{}] = Dyadic(1);
        return e;
    }
    static AmbientElement term(const GeneratorTable* table, TheorySpec theory, Dyadic c,
                               int vexp, MonoMask mono, Val2 prec = Val2::infinity())
    {
        AmbientElement e(table, theory);
        e.prec_ = prec;
        if (!c.is_zero())
            e.terms_[TermKey{vexp, mono}] = std::move(c);
        e.normalize();
        return e;
    }

    /// Rewrites raw terms by the table's square rules.  ZeroWithError discards
    /// lower the precision to val2(coeff) + vexp + 1; exact kills discard freely.
    static AmbientElement normal_form(const GeneratorTable* table, TheorySpec theory,
                                      const std::vector<RawTerm>& raw,
                                      Val2 prec = Val2::infinity());

    const GeneratorTable* table() const { return table_; }
    const TheorySpec& theory() const { return theory_; }
    const Val2& precision() const { return prec_; }
    const std::map<TermKey, Dyadic>& terms() const { return terms_; }
    bool stored_empty() const { return terms_.empty(); }

    void set_precision(Val2 p)
    {
        prec_ = p;
        normalize();
    }

    /// Minimal val2(coeff) + vexp over stored terms; infinity when empty.
    Val2 inf_valuation() const
    {
        Val2 v = Val2::infinity();
        for (const auto& [k, c] : terms_)
            v = Val2::min(v, c.val2() + k.vexp);
        return v;
    }

    int term_degree(const TermKey& k) const
    {
        return table_->mono_degree(k.mono) + k.vexp * theory_.v_degree();
    }

    bool is_homogeneous() const
    {
        bool first = true;
        int d = 0;
        for (const auto& [k, c] : terms_) {
            int dk = term_degree(k);
            if (first) {
                d = dk;
                first = false;
            }
            else if (dk != d)
                return false;
        }
        return true;
    }

    /// Degree of a homogeneous element (throws if mixed; 0 for empty).
    int degree() const
    {
        if (!is_homogeneous())
            throw std::logic_error("AmbientElement: degree of a mixed element");
        return terms_.empty() ? 0 : term_degree(terms_.begin()->first);
    }

    /// Partition by total degree; each part keeps the element's precision.
    std::vector<std::pair<int, AmbientElement>> degree_split() const;

    AmbientElement operator+(const AmbientElement& o) const;
    AmbientElement operator*(const AmbientElement& o) const;
    AmbientElement operator*(const Dyadic& c) const;

    /// Multiplication by v^k: shifts exponents and raises precision by k.
    AmbientElement shift_v(int k) const;

    friend bool operator==(const AmbientElement& a, const AmbientElement& b)
    {
        return a.theory_ == b.theory_ && a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void normalize()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero() || it->second.val2() + it->first.vexp >= prec_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    const GeneratorTable* table_;
    TheorySpec theory_;
    std::map<TermKey, Dyadic> terms_;
    Val2 prec_;

    friend class AmbientBuilder;
};

} // namespace spingr
