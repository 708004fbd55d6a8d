#include "spingr/model.hpp"

#include <algorithm>

namespace spingr {

namespace {

bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

// Known 2-primary torsion indices of the odd spin groups, l = 3..9.  The
// l = 4 entry is validated by torsion_bound_search rather than table data.
const std::map<int, long> kSpinTorsionVal2 = {
    {3, 1}, {4, 1}, {5, 1}, {6, 2}, {7, 3}, {8, 4}, {9, 4},
};

} // namespace

std::string monomial_str(const ChernMonomial& m)
{
    if (m.empty())
        return "1";
    std::string s;
    for (const auto& sym : m) {
        if (!s.empty())
            s += "*";
        s += sym.str();
    }
    return s;
}

std::optional<ChernMonomial> parse_chern_monomial(const std::string& s)
{
    ChernMonomial out;
    if (s == "1" || s.empty())
        return out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find('*', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        bool euler;
        if (tok.rfind("c_", 0) == 0 || tok.rfind("c", 0) == 0)
            euler = false;
        else if (tok.rfind("e_", 0) == 0 || tok.rfind("e", 0) == 0)
            euler = true;
        else
            return std::nullopt;
        size_t digits = tok.find_first_of("0123456789");
        if (digits == std::string::npos)
            return std::nullopt;
        try {
            out.push_back({euler, std::stoi(tok.substr(digits))});
        }
        catch (const std::exception&) {
            return std::nullopt;
        }
        pos = next == std::string::npos ? s.size() : next + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroupModel GroupModel::build(Family family, int m)
{
    if (m % 2 == 0)
        throw std::invalid_argument("GroupModel: m must be odd (groups Spin/SO(2l+1))");
    int ell = (m - 1) / 2;
    GroupModel g;
    g.family_ = family;
    g.m_ = m;
    g.ell_ = ell;

    if (family == Family::spin) {
        if (ell < 3)
            throw std::invalid_argument("GroupModel: spin requires l >= 3");
        if (ell > 24)
            throw std::invalid_argument("GroupModel: spin l > 24 not supported");
        g.ell_bar_ = is_pow2(ell) ? ell - 1 : ell;
        int t = 0;
        while ((1 << (t + 1)) <= ell)
            ++t;
        g.t_ = t;
        // Generators y_{2i} with 2i <= 2*ell_bar and 2i not a power of two.
        for (int d = 2; d <= 2 * g.ell_bar_; d += 2)
            if (!is_pow2(d))
                g.gens_.add(d);
        g.chern_lo_ = 2;
        g.chern_hi_ = ell;
        g.euler_codim_ = 1 << (t + 1);
        auto it = kSpinTorsionVal2.find(ell);
        if (it != kSpinTorsionVal2.end()) {
            g.torsion_known_ = true;
            g.torsion_index_ = BigInt(1) << it->second;
        }
    }
    else {
        if (ell < 1)
            throw std::invalid_argument("GroupModel: so requires l >= 1");
        if (ell > GeneratorTable::kMaxGenerators)
            throw std::invalid_argument("GroupModel: so l too large for this implementation");
        for (int d = 2; d <= 2 * ell; d += 2)
            g.gens_.add(d);
        g.chern_lo_ = 1;
        g.chern_hi_ = ell;
        g.euler_codim_ = 0;
        // c_1 ... c_l maps onto 2^l y_top, and no smaller power is hit.
        g.torsion_known_ = true;
        g.torsion_index_ = BigInt(1) << ell;
    }

    // Square rules: y_d^2 lives in degree 2d.
    GeneratorTable fixed;
    for (int i = 0; i < g.gens_.size(); ++i) {
        int d = g.gens_.degree(i);
        int dd = 2 * d;
        auto target = g.gens_.index_of_degree(dd);
        if (target)
            fixed.add(d, SquareRule::exact, *target);
        else if (family == Family::spin && is_pow2(dd) && dd <= 2 * ell)
            fixed.add(d, SquareRule::zero_exact);
        else
            fixed.add(d, SquareRule::zero_with_error);
    }
    g.gens_ = fixed;
    return g;
}

long GroupModel::torsion_val2() const
{
    if (!torsion_known_)
        throw std::logic_error("GroupModel: torsion index unknown for this model");
    long v = 0;
    BigInt t = torsion_index_;
    while ((t & 1) == 0) {
        t >>= 1;
        ++v;
    }
    return v;
}

std::string GroupModel::name() const
{
    return (family_ == Family::spin ? "Spin(" : "SO(") + std::to_string(m_) + ")";
}

bool GroupModel::valid_symbol(const ChernSymbol& s) const
{
    if (s.euler)
        return has_euler() && s.index == euler_codim_;
    return s.index >= chern_lo_ && s.index <= chern_hi_;
}

AmbientElement GroupModel::chern_image(int i, TheorySpec theory) const
{
    if (i < chern_lo_ || i > chern_hi_)
        throw std::invalid_argument("chern_image: index out of range for " + name());
    AmbientElement e(&gens_, theory);
    if (auto g0 = resolve_degree(2 * i))
        e = e + AmbientElement::term(&gens_, theory, Dyadic(2), 0, MonoMask{1} << *g0);
    int vdeg = 2 * i + (1 << (theory.n + 1)) - 2;
    if (auto g1 = resolve_degree(vdeg))
        e = e + AmbientElement::term(&gens_, theory, Dyadic(1), 1, MonoMask{1} << *g1);
    e.set_precision(Val2(2));
    return e;
}

AmbientElement GroupModel::euler_image(TheorySpec theory) const
{
    if (!has_euler())
        throw std::invalid_argument("euler_image: no Euler-type class on " + name());
    AmbientElement e(&gens_, theory);
    auto pair_sum = [&](int degsum, Dyadic coeff, int vexp) {
        for (int i = 0; i < gens_.size(); ++i)
            for (int j = i + 1; j < gens_.size(); ++j)
                if (gens_.degree(i) + gens_.degree(j) == degsum)
                    e = e + AmbientElement::term(&gens_, theory, coeff, vexp,
                                                 (MonoMask{1} << i) | (MonoMask{1} << j));
    };
    pair_sum(euler_degree(), Dyadic(2), 0);
    pair_sum(euler_degree() + (1 << (theory.n + 1)) - 2, Dyadic(1), 1);
    e.set_precision(Val2(2));
    return e;
}

AmbientElement GroupModel::symbol_image(const ChernSymbol& s, TheorySpec theory) const
{
    if (!valid_symbol(s))
        throw std::invalid_argument("symbol_image: invalid symbol " + s.str() + " for " + name());
    return s.euler ? euler_image(theory) : chern_image(s.index, theory);
}

AmbientElement GroupModel::monomial_image(const ChernMonomial& mono, TheorySpec theory) const
{
    AmbientElement acc = AmbientElement::one(&gens_, theory);
    ChernMonomial sorted = mono;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& s : sorted)
        acc = acc * symbol_image(s, theory);
    return acc;
}

GroupModel::LeadingPart GroupModel::leading_two_part(const ChernMonomial& mono) const
{
    LeadingPart acc;
    acc.terms[0] = Dyadic(1);
    acc.defect_floor = Val2::infinity();
    const int n = gens_.size();
    for (const auto& s : mono) {
        // 2-part of one factor image.
        std::map<MonoMask, Dyadic> factor;
        if (s.euler) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (gens_.degree(i) + gens_.degree(j) == euler_degree())
                        factor[(MonoMask{1} << i) | (MonoMask{1} << j)] = Dyadic(2);
        }
        else if (auto g0 = resolve_degree(2 * s.index)) {
            factor[MonoMask{1} << *g0] = Dyadic(2);
        }
        std::map<MonoMask, Dyadic> next;
        for (const auto& [ma, ca] : acc.terms) {
            for (const auto& [mb, cb] : factor) {
                Dyadic c = ca * cb;
                std::vector<int> e(static_cast<size_t>(n), 0);
                for (int i = 0; i < n; ++i)
                    e[static_cast<size_t>(i)] = ((ma >> i) & 1) + ((mb >> i) & 1);
                bool dead = false;
                for (int i = 0; i < n && !dead; ++i) {
                    while (e[static_cast<size_t>(i)] >= 2) {
                        const Generator& g = gens_.gen(i);
                        if (g.rule == SquareRule::exact) {
                            e[static_cast<size_t>(i)] -= 2;
                            e[static_cast<size_t>(g.square_index)] += 1;
                        }
                        else {
                            if (g.rule == SquareRule::zero_with_error)
                                acc.defect_floor = Val2::min(acc.defect_floor, c.val2() + 1);
                            dead = true;
                            break;
                        }
                    }
                }
                if (dead)
                    continue;
                MonoMask m = 0;
                for (int i = 0; i < n; ++i)
                    if (e[static_cast<size_t>(i)])
                        m |= MonoMask{1} << i;
                next[m] += c;
            }
        }
        acc.terms = std::move(next);
    }
    for (auto it = acc.terms.begin(); it != acc.terms.end();)
        it = it->second.is_zero() ? acc.terms.erase(it) : std::next(it);
    // Unknown tails of the factors contribute only beyond the product of the
    // leading 2-powers.
    acc.defect_floor = Val2::min(acc.defect_floor, Val2(static_cast<long>(mono.size()) + 1));
    return acc;
}

TorsionSearchResult torsion_bound_search(const GroupModel& model, TheorySpec theory,
                                         int max_factors)
{
    (void)theory; // the leading 2-part does not depend on the theory level
    TorsionSearchResult best;
    const int top = model.ytop_degree();
    for (const ChernMonomial& mono : enumerate_monomials(model, top, max_factors)) {
        if (model.monomial_degree(mono) != top || mono.empty())
            continue;
        auto lead = model.leading_two_part(mono);
        auto it = lead.terms.find(model.ytop());
        if (it == lead.terms.end())
            continue;
        Val2 v = it->second.val2();
        if (!(v < lead.defect_floor))
            continue; // discarded squares could cancel the coefficient
        long s = v.value();
        if (!best.found || s < best.bound_val2) {
            best.found = true;
            best.bound_val2 = s;
            best.bound = BigInt(1) << s;
            best.witness = mono;
        }
    }
    return best;
}

std::vector<ChernMonomial> enumerate_monomials(const GroupModel& model, int max_degree,
                                               int max_factors)
{
    std::vector<ChernMonomial> out;
    std::vector<int> cs;
    for (int i = model.chern_lo(); i <= model.chern_hi(); ++i)
        cs.push_back(i);
    int e_deg = model.has_euler() ? model.euler_degree() : 0;
    int e_max = (model.has_euler() && e_deg <= max_degree) ? max_degree / e_deg : 0;

    ChernMonomial cur;
    auto rec = [&](auto&& self, size_t pos, int deg, int count) -> void {
        if (count > max_factors || deg > max_degree)
            return;
        for (int ep = 0; ep <= e_max; ++ep) {
            int total = deg + ep * e_deg;
            int c = count + ep;
            if (total > max_degree || c > max_factors)
                break;
            ChernMonomial m = cur;
            for (int r = 0; r < ep; ++r)
                m.push_back({true, model.euler_codim()});
            out.push_back(std::move(m));
        }
        for (size_t i = pos; i < cs.size(); ++i) {
            cur.push_back({false, cs[i]});
            self(self, i + 1, deg + 2 * cs[i], count + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0, 0);

    std::sort(out.begin(), out.end(), [](const ChernMonomial& a, const ChernMonomial& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

int default_max_factors(const GroupModel& model)
{
    return std::min(10, model.ytop_degree() / 4 + 1);
}

} // namespace spingr
