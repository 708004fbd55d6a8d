#include "spingr/ambient.hpp"

#include <algorithm>

namespace spingr {

namespace {

// Reduces an exponent vector to a square-free mask.  Returns false when the
// term dies (a zero square rule fired); a zero_with_error rule also tightens
// `penalty` to val2(coeff) + vexp + 1.
bool reduce_exponents(const GeneratorTable& table, std::vector<int>& e, const Dyadic& coeff,
                      int vexp, Val2& penalty, MonoMask& out)
{
    const int n = table.size();
    for (int i = 0; i < n; ++i) {
        while (e[static_cast<size_t>(i)] >= 2) {
            const Generator& g = table.gen(i);
            switch (g.rule) {
            case SquareRule::exact:
                e[static_cast<size_t>(i)] -= 2;
                e[static_cast<size_t>(g.square_index)] += 1;
                break;
            case SquareRule::zero_exact:
                return false;
            case SquareRule::zero_with_error:
                penalty = Val2::min(penalty, coeff.val2() + vexp + 1);
                return false;
            }
        }
    }
    out = 0;
    for (int i = 0; i < n; ++i)
        if (e[static_cast<size_t>(i)])
            out |= MonoMask{1} << i;
    return true;
}

} // namespace

AmbientElement AmbientElement::normal_form(const GeneratorTable* table, TheorySpec theory,
                                           const std::vector<RawTerm>& raw, Val2 prec)
{
    // Accumulate equal raw terms first: the discard penalty of a killed square
    // depends on the total coefficient in front of it.
    std::map<std::pair<int, std::vector<int>>, Dyadic> acc;
    for (const RawTerm& t : raw) {
        if (t.coeff.is_zero())
            continue;
        std::vector<int> e = t.exps;
        e.resize(static_cast<size_t>(table->size()), 0);
        acc[{t.vexp, std::move(e)}] += t.coeff;
    }
    AmbientElement r(table, theory);
    Val2 penalty = Val2::infinity();
    for (auto& [key, coeff] : acc) {
        if (coeff.is_zero())
            continue;
        std::vector<int> e = key.second;
        MonoMask m = 0;
        if (!reduce_exponents(*table, e, coeff, key.first, penalty, m))
            continue;
        r.terms_[TermKey{key.first, m}] += coeff;
    }
    r.prec_ = Val2::min(prec, penalty);
    r.normalize();
    return r;
}

std::vector<std::pair<int, AmbientElement>> AmbientElement::degree_split() const
{
    std::map<int, AmbientElement> parts;
    for (const auto& [k, c] : terms_) {
        int d = term_degree(k);
        auto it = parts.find(d);
        if (it == parts.end()) {
            AmbientElement e(table_, theory_);
            e.prec_ = prec_;
            it = parts.emplace(d, std::move(e)).first;
        }
        it->second.terms_[k] = c;
    }
    std::vector<std::pair<int, AmbientElement>> out;
    out.reserve(parts.size());
    for (auto& [d, e] : parts)
        out.emplace_back(d, std::move(e));
    return out;
}

AmbientElement AmbientElement::operator+(const AmbientElement& o) const
{
    if (theory_ != o.theory_)
        throw std::invalid_argument("AmbientElement: theory mismatch in addition");
    AmbientElement r(table_, theory_);
    r.terms_ = terms_;
    for (const auto& [k, c] : o.terms_)
        r.terms_[k] += c;
    r.prec_ = Val2::min(prec_, o.prec_);
    r.normalize();
    return r;
}

AmbientElement AmbientElement::operator*(const AmbientElement& o) const
{
    if (theory_ != o.theory_)
        throw std::invalid_argument("AmbientElement: theory mismatch in multiplication");
    const int n = table_->size();
    std::vector<RawTerm> raw;
    raw.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            RawTerm t;
            t.coeff = ca * cb;
            t.vexp = ka.vexp + kb.vexp;
            t.exps.resize(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                t.exps[static_cast<size_t>(i)] = ((ka.mono >> i) & 1) + ((kb.mono >> i) & 1);
            raw.push_back(std::move(t));
        }
    }
    // The represented parts annihilate each other's unknown tails down to
    // these levels; killed squares may lower the result further.
    Val2 p = Val2::min(prec_ + o.inf_valuation(),
                       Val2::min(o.prec_ + inf_valuation(), prec_ + o.prec_));
    return normal_form(table_, theory_, raw, p);
}

AmbientElement AmbientElement::operator*(const Dyadic& c) const
{
    AmbientElement r(table_, theory_);
    if (c.is_zero()) {
        r.prec_ = Val2::infinity();
        return r;
    }
    for (const auto& [k, t] : terms_)
        r.terms_[k] = t * c;
    r.prec_ = prec_ + c.val2();
    r.normalize();
    return r;
}

AmbientElement AmbientElement::shift_v(int k) const
{
    AmbientElement r(table_, theory_);
    for (const auto& [key, c] : terms_)
        r.terms_[TermKey{key.vexp + k, key.mono}] = c;
    r.prec_ = prec_ + k;
    r.normalize();
    return r;
}

std::string AmbientElement::str() const
{
    std::string s;
    for (const auto& [k, c] : terms_) {
        if (!s.empty())
            s += " + ";
        std::string parts;
        bool unit_coeff = c.is_one();
        if (!unit_coeff)
            parts = c.den() == 1 ? c.num().str() : c.str();
        if (k.vexp > 0) {
            if (!parts.empty())
                parts += "*";
            parts += "v^" + std::to_string(k.vexp);
        }
        if (k.mono != 0) {
            if (!parts.empty())
                parts += "*";
            parts += table_->mono_name(k.mono);
        }
        if (parts.empty())
            parts = "1";
        s += parts;
    }
    if (s.empty())
        s = "0";
    return s + " (prec " + prec_.str() + ")";
}

} // namespace spingr
