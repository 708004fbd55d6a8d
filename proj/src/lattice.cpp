#include "spingr/lattice.hpp"

#include <algorithm>

namespace spingr {

namespace {

std::vector<LatCol> all_columns(const DegreeLattice& lat, const GroupModel& model)
{
    std::vector<LatCol> cols;
    cols.reserve(lat.gens.size() + 1);
    for (size_t i = 0; i < lat.gens.size(); ++i)
        cols.push_back({lat.gens[i].vec, lat.gens[i].q, static_cast<int>(i)});
    if (lat.oracle) {
        DVec v(lat.rows.size());
        v[0] = Dyadic(model.torsion_index());
        cols.push_back({std::move(v), Val2::infinity(), -2});
    }
    return cols;
}

DVec scale_vec(const DVec& v, const Dyadic& c)
{
    DVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = v[i] * c;
    return r;
}

std::vector<long> row_vexps(const std::vector<TermKey>& rows)
{
    std::vector<long> v;
    v.reserve(rows.size());
    for (const auto& k : rows)
        v.push_back(k.vexp);
    return v;
}

} // namespace

std::optional<NormTable> builtin_norm_table(const GroupModel& model)
{
    auto sym = [](int i) { return ChernSymbol{false, i}; };
    auto e = [&model]() { return ChernSymbol{true, model.euler_codim()}; };
    const GeneratorTable& g = model.gens();
    auto mask_of = [&g](std::vector<int> degs) {
        MonoMask m = 0;
        for (int d : degs)
            m |= MonoMask{1} << *g.index_of_degree(d);
        return m;
    };
    NormTable t;
    if (model.family() == Family::spin && model.m() == 11) {
        t.entries[0] = {Dyadic(2), {}};
        t.entries[mask_of({6})] = {Dyadic(1), {sym(3)}};
        t.entries[mask_of({10})] = {Dyadic(1), {sym(5)}};
        t.entries[mask_of({6, 10})] = {Dyadic(1), {e()}};
        return t;
    }
    if (model.family() == Family::spin && model.m() == 13) {
        t.entries[0] = {Dyadic(2), {}};
        t.entries[mask_of({6})] = {Dyadic(2), {sym(3)}};
        t.entries[mask_of({10})] = {Dyadic(2), {sym(5)}};
        t.entries[mask_of({12})] = {Dyadic(2), {sym(6)}};
        t.entries[mask_of({6, 10})] = {Dyadic(2), {e()}};
        t.entries[mask_of({6, 12})] = {Dyadic(1), {sym(3), sym(6)}};
        t.entries[mask_of({10, 12})] = {Dyadic(1), {sym(5), sym(6)}};
        t.entries[mask_of({6, 10, 12})] = {Dyadic(1), {sym(6), e()}};
        return t;
    }
    return std::nullopt;
}

LatticeEngine::LatticeEngine(const GroupModel& model, TheorySpec theory, int max_factors,
                             Val2 precision_cap, ColumnOrder order)
    : model_(model), theory_(theory),
      max_factors_(max_factors > 0 ? max_factors : default_max_factors(model)),
      precision_cap_(precision_cap), order_(order)
{
    enumeration_ = enumerate_monomials(model_, model_.ytop_degree(), max_factors_);
    if (order_ == ColumnOrder::reversed)
        std::reverse(enumeration_.begin(), enumeration_.end());
}

const AmbientElement& LatticeEngine::image_of(const ChernMonomial& mono)
{
    ChernMonomial key = mono;
    std::sort(key.begin(), key.end());
    auto it = images_.find(key);
    if (it == images_.end()) {
        AmbientElement img = model_.monomial_image(key, theory_);
        if (precision_cap_ < img.precision())
            img.set_precision(precision_cap_);
        it = images_.emplace(std::move(key), std::move(img)).first;
    }
    return it->second;
}

std::vector<TermKey> LatticeEngine::slice_rows(int d) const
{
    std::vector<TermKey> rows;
    const int D = shift();
    const int top = model_.ytop_degree();
    for (int a = 0;; ++a) {
        int md = d + D * a;
        if (md > top)
            break;
        if (md >= 0)
            for (MonoMask m : model_.gens().monomials_of_degree(md))
                rows.push_back(TermKey{a, m});
    }
    return rows;
}

DVec LatticeEngine::to_vec(const std::vector<TermKey>& rows, const AmbientElement& x) const
{
    DVec v(rows.size());
    for (const auto& [key, c] : x.terms()) {
        auto it = std::lower_bound(rows.begin(), rows.end(), key);
        if (it == rows.end() || !(*it == key))
            throw std::logic_error("LatticeEngine: term outside the degree slice");
        v[static_cast<size_t>(it - rows.begin())] = c;
    }
    return v;
}

const DegreeLattice& LatticeEngine::lattice_at(int d)
{
    auto it = lattices_.find(d);
    if (it != lattices_.end())
        return it->second;

    DegreeLattice lat;
    if (cache_load_ && cache_load_(d, &lat))
        return lattices_.emplace(d, std::move(lat)).first->second;

    lat.degree = d;
    lat.rows = slice_rows(d);
    const int D = shift();
    for (const ChernMonomial& mono : enumeration_) {
        int degM = model_.monomial_degree(mono);
        int rem = degM - d;
        if (rem < 0 || rem % D != 0)
            continue;
        const AmbientElement& img = image_of(mono);
        if (img.stored_empty())
            continue;
        AmbientElement shifted = img.shift_v(rem / D);
        if (shifted.stored_empty())
            continue;
        DegreeLattice::Gen g;
        g.mono = mono;
        g.kshift = rem / D;
        g.q = shifted.precision();
        g.vec = to_vec(lat.rows, shifted);
        lat.gens.push_back(std::move(g));
    }
    if (model_.torsion_known() && d == model_.ytop_degree() && !lat.rows.empty()) {
        long tv = model_.torsion_val2();
        for (const auto& g : lat.gens)
            if (g.vec[0].val2() < Val2(tv))
                throw std::logic_error("LatticeEngine: image contradicts the torsion index");
        lat.oracle = true;
    }
    lat.cert_precision = Val2::infinity();
    if (!lat.oracle)
        for (const auto& g : lat.gens)
            lat.cert_precision = Val2::min(lat.cert_precision, g.q);

    if (cache_store_)
        cache_store_(lat);
    return lattices_.emplace(d, std::move(lat)).first->second;
}

// Columns of v * L_{d+shift} written in the coordinates of the degree-d slice.
std::vector<LatCol> LatticeEngine::shifted_up_cols(int d)
{
    const DegreeLattice& up = lattice_at(d + shift());
    const DegreeLattice& lat = lattice_at(d);
    std::vector<LatCol> cols;
    if (up.rows.empty())
        return cols;
    std::vector<int> rowmap(up.rows.size());
    for (size_t i = 0; i < up.rows.size(); ++i) {
        TermKey key{up.rows[i].vexp + 1, up.rows[i].mono};
        auto it = std::lower_bound(lat.rows.begin(), lat.rows.end(), key);
        if (it == lat.rows.end() || !(*it == key))
            throw std::logic_error("LatticeEngine: v-shift row missing");
        rowmap[i] = static_cast<int>(it - lat.rows.begin());
    }
    for (auto& c : all_columns(up, model_)) {
        LatCol sh;
        sh.v.assign(lat.rows.size(), Dyadic());
        for (size_t i = 0; i < up.rows.size(); ++i)
            sh.v[static_cast<size_t>(rowmap[i])] = c.v[i];
        sh.q = c.q + 1;
        sh.tag = -3;
        cols.push_back(std::move(sh));
    }
    return cols;
}

// Transfer relations: the composite of restriction and norm is multiplication
// by 2 on the motive's Chow group, so 2 * image(M) lies in the boundary
// lattice whenever the Chow-level restriction of M (its exact leading 2-part)
// vanishes.  These are exactly the 2-torsion relations of the kernel classes.
std::vector<LatCol> LatticeEngine::transfer_cols(int d)
{
    const DegreeLattice& lat = lattice_at(d);
    std::vector<LatCol> cols;
    for (const auto& g : lat.gens) {
        if (g.kshift != 0)
            continue;
        if (!model_.leading_two_part(g.mono).terms.empty())
            continue;
        LatCol c;
        c.v = scale_vec(g.vec, Dyadic(2));
        c.q = g.q + 1;
        c.tag = -6;
        cols.push_back(std::move(c));
    }
    return cols;
}

const ColEchelon& LatticeEngine::span_echelon(int d)
{
    auto it = span_ech_.find(d);
    if (it != span_ech_.end())
        return it->second;
    const DegreeLattice& lat = lattice_at(d);
    return span_ech_.emplace(d, ColEchelon(row_vexps(lat.rows), all_columns(lat, model_)))
        .first->second;
}

std::vector<LatCol> LatticeEngine::vanish_cols(int d)
{
    const DegreeLattice& lat = lattice_at(d);
    std::vector<LatCol> cols;
    for (auto& c : all_columns(lat, model_)) {
        LatCol two;
        two.v = scale_vec(c.v, Dyadic(2));
        two.q = c.q + 1;
        two.tag = c.tag;
        cols.push_back(std::move(two));
    }
    for (auto& c : shifted_up_cols(d))
        cols.push_back(std::move(c));
    return cols;
}

const ColEchelon& LatticeEngine::vanish_echelon(int d)
{
    auto it = vanish_ech_.find(d);
    if (it != vanish_ech_.end())
        return it->second;
    const DegreeLattice& lat = lattice_at(d);
    return vanish_ech_.emplace(d, ColEchelon(row_vexps(lat.rows), vanish_cols(d)))
        .first->second;
}

std::vector<LatCol> LatticeEngine::wlattice_cols(const std::vector<TermKey>& rows, long s) const
{
    std::vector<LatCol> cols;
    for (size_t r = 0; r < rows.size(); ++r) {
        long need = s - rows[r].vexp;
        LatCol c;
        c.v.assign(rows.size(), Dyadic());
        c.v[r] = Dyadic::pow2(need > 0 ? need : 0);
        c.tag = -4;
        cols.push_back(std::move(c));
    }
    return cols;
}

int LatticeEngine::satlevel(int d)
{
    auto it = satlevel_.find(d);
    if (it != satlevel_.end())
        return it->second;
    const DegreeLattice& lat = lattice_at(d);
    int result = -1;
    if (lat.rows.empty())
        result = 0;
    else {
        const ColEchelon& van = vanish_echelon(d);
        for (int s = 0; s <= kSatCap && result < 0; ++s) {
            bool ok = true;
            for (auto& w : wlattice_cols(lat.rows, s))
                if (!van.contains(w.v)) {
                    ok = false;
                    break;
                }
            if (ok)
                result = s;
        }
    }
    satlevel_[d] = result;
    return result;
}

int LatticeEngine::satlevel_certified(int d)
{
    auto it = satlevel_cg_.find(d);
    if (it != satlevel_cg_.end())
        return it->second;
    const DegreeLattice& lat = lattice_at(d);
    int result = -1;
    if (lat.rows.empty())
        result = 0;
    else {
        std::vector<LatCol> base = vanish_cols(d);
        for (int s = 0; s <= kSatCap && result < 0; ++s) {
            // Scale every generator so its unknown tail lies beyond s+1, then
            // allow a residual one level down; the containment then survives
            // every completion of the images.
            std::vector<LatCol> cols;
            for (const auto& c : base) {
                long extra = 0;
                if (!c.q.is_infinite())
                    extra = std::max<long>(0, s + 1 - c.q.value());
                cols.push_back({scale_vec(c.v, Dyadic::pow2(extra)), Val2::infinity(), c.tag});
            }
            for (auto& w : wlattice_cols(lat.rows, s + 1))
                cols.push_back(std::move(w));
            ColEchelon ech(row_vexps(lat.rows), std::move(cols));
            bool ok = true;
            for (auto& w : wlattice_cols(lat.rows, s))
                if (!ech.contains(w.v)) {
                    ok = false;
                    break;
                }
            if (ok)
                result = s;
        }
    }
    satlevel_cg_[d] = result;
    return result;
}

bool LatticeEngine::local_certified(int d)
{
    auto it = local_cert_.find(d);
    if (it != local_cert_.end())
        return it->second;
    const DegreeLattice& lat = lattice_at(d);
    bool ok = true;
    if (!lat.oracle && !lat.rows.empty()) {
        const ColEchelon& E = span_echelon(d);
        ok = E.pivots_q_valid();
        if (ok) {
            // The reduced tail levels: the span is stable iff each column's
            // tail lattice already lies inside the span.
            Val2 qmin = Val2::infinity();
            for (const auto& c : E.cols())
                qmin = Val2::min(qmin, c.q);
            if (!qmin.is_infinite())
                for (auto& w : wlattice_cols(lat.rows, qmin.value()))
                    if (!E.contains(w.v)) {
                        ok = false;
                        break;
                    }
        }
    }
    local_cert_[d] = ok;
    return ok;
}

std::vector<GrFactor> LatticeEngine::quotient_factors(int d, const std::vector<LatCol>& rels,
                                                      bool* certified_match)
{
    const DegreeLattice& lat = lattice_at(d);
    const ColEchelon& E = span_echelon(d);
    *certified_match = true;
    std::vector<GrFactor> factors;
    if (E.rank() == 0)
        return factors;

    std::vector<DVec> coord_cols;
    for (const auto& rel : rels) {
        std::vector<std::pair<int, Dyadic>> coords;
        if (!E.contains_with_coords(rel.v, &coords))
            throw std::logic_error("LatticeEngine: relation outside the lattice span");
        DVec col(static_cast<size_t>(E.rank()));
        for (auto& [pi, lambda] : coords)
            col[static_cast<size_t>(pi)] = lambda;
        coord_cols.push_back(std::move(col));
    }
    std::vector<long> vals = snf_valuations(std::move(coord_cols));
    std::vector<long> torsion;
    for (long v : vals)
        if (v >= 1)
            torsion.push_back(v);
    size_t free_rank = static_cast<size_t>(E.rank()) - vals.size();

    // Greedy representatives: unshifted image columns by (factor count, lex).
    std::vector<const DegreeLattice::Gen*> cands;
    for (const auto& g : lat.gens)
        if (g.kshift == 0)
            cands.push_back(&g);
    auto euler_count = [](const ChernMonomial& m) {
        size_t k = 0;
        for (const auto& s : m)
            k += s.euler ? 1 : 0;
        return k;
    };
    std::sort(cands.begin(), cands.end(),
              [&](const DegreeLattice::Gen* a, const DegreeLattice::Gen* b) {
                  if (a->mono.size() != b->mono.size())
                      return a->mono.size() < b->mono.size();
                  if (euler_count(a->mono) != euler_count(b->mono))
                      return euler_count(a->mono) < euler_count(b->mono);
                  return a->mono < b->mono;
              });
    std::vector<long> vexp = row_vexps(lat.rows);
    std::vector<LatCol> covered = rels;
    std::vector<long> greedy_torsion;
    size_t greedy_free = 0;
    for (const auto* g : cands) {
        if (greedy_free == free_rank && greedy_torsion.size() == torsion.size())
            break;
        ColEchelon C(vexp, covered);
        if (C.contains(g->vec))
            continue;
        long order = -1;
        for (long e = 1; e <= kSatCap + 4; ++e)
            if (C.contains(scale_vec(g->vec, Dyadic::pow2(e)))) {
                order = e;
                break;
            }
        GrFactor f;
        f.free = order < 0;
        f.torsion_val2 = order < 0 ? 0 : order;
        f.rep = g->mono;
        factors.push_back(std::move(f));
        if (order < 0)
            ++greedy_free;
        else
            greedy_torsion.push_back(order);
        covered.push_back({g->vec, g->q, -1});
    }
    std::sort(greedy_torsion.begin(), greedy_torsion.end());
    if (greedy_free != free_rank || greedy_torsion != torsion)
        *certified_match = false;
    return factors;
}

GrComponent LatticeEngine::gr_component(int d)
{
    GrComponent out;
    out.degree = d;
    std::vector<LatCol> rels = shifted_up_cols(d);
    for (auto& c : transfer_cols(d))
        rels.push_back(std::move(c));
    bool match = true;
    out.factors = quotient_factors(d, rels, &match);
    out.certified = match && local_certified(d) && local_certified(d + shift());
    return out;
}

ClassVerdict LatticeEngine::class_in_gr(const ChernMonomial& mono)
{
    ChernMonomial key = mono;
    std::sort(key.begin(), key.end());
    for (const auto& s : key)
        if (!model_.valid_symbol(s))
            throw std::invalid_argument("class_in_gr: invalid symbol " + s.str());
    return element_in_gr(image_of(key), model_.monomial_degree(key));
}

ClassVerdict LatticeEngine::element_in_gr(const AmbientElement& img, int d)
{
    ClassVerdict v{false, false, d, img};
    const DegreeLattice& lat = lattice_at(d);
    DVec x = to_vec(lat.rows, img);
    v.zero = vanish_echelon(d).contains(x);

    if (v.zero) {
        // Robust when the decomposition uses generators whose tails lie
        // beyond the class's own precision and the tail lattice is absorbed
        // degree by degree up the v-ladder.
        long cap = img.precision().is_infinite() ? kSatCap : img.precision().value();
        long needed = 0;
        bool chain_ok = true;
        for (int dd = d; dd <= model_.ytop_degree(); dd += shift()) {
            int sl = satlevel_certified(dd);
            if (sl < 0) {
                chain_ok = false;
                break;
            }
            needed = std::max(needed, static_cast<long>(sl));
        }
        if (chain_ok && needed <= cap) {
            // Decompose with every generator scaled so its tail lies at or
            // beyond the certified level; the residual lands there too.
            long s = std::max<long>(needed, 1);
            std::vector<LatCol> cols;
            for (const auto& c : vanish_cols(d)) {
                long extra = 0;
                if (!c.q.is_infinite())
                    extra = std::max<long>(0, s - c.q.value());
                cols.push_back({scale_vec(c.v, Dyadic::pow2(extra)), Val2::infinity(), c.tag});
            }
            for (auto& w : wlattice_cols(lat.rows, s))
                cols.push_back(std::move(w));
            v.certified = ColEchelon(row_vexps(lat.rows), std::move(cols)).contains(x);
        }
    }
    else {
        Val2 m = Val2::min(img.precision(),
                           Val2::min(lattice_at(d).cert_precision + 1,
                                     lattice_at(d + shift()).cert_precision + 1));
        if (m.is_infinite()) {
            v.certified = true;
        }
        else {
            std::vector<LatCol> cols = vanish_cols(d);
            for (auto& w : wlattice_cols(lat.rows, m.value()))
                cols.push_back(std::move(w));
            v.certified = !ColEchelon(row_vexps(lat.rows), std::move(cols)).contains(x);
        }
    }
    return v;
}

SaturationResult LatticeEngine::saturation(int dmin, int dmax)
{
    SaturationResult r;
    r.found = true;
    int lo = std::max(dmin, 0);
    int hi = std::min(dmax, model_.ytop_degree());
    if (lo % 2)
        ++lo;
    for (int d = lo; d <= hi; d += 2) {
        int sl = satlevel(d);
        if (sl < 0)
            r.found = false;
        else
            r.containment_level = std::max(r.containment_level, sl);
    }
    for (const auto& mono : enumeration_)
        if (model_.monomial_degree(mono) <= model_.ytop_degree() &&
            !image_of(mono).stored_empty())
            r.depth = std::max(r.depth, static_cast<int>(mono.size()));
    r.threshold = std::max(r.containment_level, r.depth + 1);
    if (r.containment_level > 8)
        r.found = false;
    return r;
}

std::vector<ProfileRow> LatticeEngine::image_profile()
{
    std::vector<ProfileRow> out;
    const int D = shift();
    MonoMask full = model_.gens().full_mask();
    for (MonoMask J = 0;; ++J) {
        ProfileRow row;
        row.mono = J;
        row.certified = true;
        int degJ = model_.gens().mono_degree(J);
        long prev = -1;
        for (int b = 0; b <= 16; ++b) {
            int d = degJ - D * b;
            const DegreeLattice& lat = lattice_at(d);
            const ColEchelon& E = span_echelon(d);
            TermKey key{b, J};
            auto it = std::lower_bound(lat.rows.begin(), lat.rows.end(), key);
            if (it == lat.rows.end() || !(*it == key))
                throw std::logic_error("LatticeEngine: profile row missing");
            int ri = static_cast<int>(it - lat.rows.begin());
            int pi = E.pivot_at_row(ri);
            if (pi < 0)
                continue;
            long val = E.pivots()[static_cast<size_t>(pi)].val2;
            if (prev < 0 || val < prev) {
                // Pivot values up to this row must be exact leading data and
                // no column tail may undercut them.
                Val2 qmin = Val2::infinity();
                for (const auto& c : E.cols())
                    qmin = Val2::min(qmin, c.q);
                for (const auto& p : E.pivots())
                    if (p.row <= ri &&
                        (!p.q_valid ||
                         Val2(p.val2 + lat.rows[static_cast<size_t>(p.row)].vexp) > qmin))
                        row.certified = false;
                row.gens.push_back({val, b});
                prev = val;
            }
            if (val == 0)
                break;
        }
        out.push_back(std::move(row));
        if (J == full)
            break;
    }
    return out;
}

NormQuotientResult LatticeEngine::norm_quotient(const NormTable& table)
{
    MonoMask full = model_.gens().full_mask();
    for (MonoMask J = 0;; ++J) {
        if (table.entries.find(J) == table.entries.end())
            throw std::invalid_argument("norm_quotient: table misses monomial " +
                                        model_.gens().mono_name(J));
        if (J == full)
            break;
    }
    NormQuotientResult out;
    const int D = shift();
    for (int d = 0; d <= model_.ytop_degree(); d += 2) {
        const DegreeLattice& lat = lattice_at(d);
        if (lat.rows.empty())
            continue;
        std::vector<LatCol> rels = shifted_up_cols(d);
        for (auto& c : transfer_cols(d))
            rels.push_back(std::move(c));
        // The norm ideal: every table value times every monomial, v-shifted
        // into degree d.
        for (const auto& [J, value] : table.entries) {
            for (const auto& extra : enumeration_) {
                if (extra.size() + value.mono.size() > static_cast<size_t>(max_factors_))
                    continue;
                ChernMonomial combined = value.mono;
                combined.insert(combined.end(), extra.begin(), extra.end());
                std::sort(combined.begin(), combined.end());
                int degV = model_.monomial_degree(combined);
                int rem = degV - d;
                if (rem < 0 || rem % D != 0 || degV > model_.ytop_degree())
                    continue;
                AmbientElement scaled = image_of(combined) * value.scalar;
                if (scaled.stored_empty())
                    continue;
                AmbientElement shifted = scaled.shift_v(rem / D);
                if (shifted.stored_empty())
                    continue;
                rels.push_back({to_vec(lat.rows, shifted), shifted.precision(), -5});
            }
        }
        bool match = true;
        GrComponent comp;
        comp.degree = d;
        comp.factors = quotient_factors(d, rels, &match);
        comp.certified = match && local_certified(d) && local_certified(d + D);
        if (!comp.factors.empty())
            out.components.push_back(std::move(comp));
    }
    return out;
}

bool LatticeEngine::vanishing_membership_dense(int d, const AmbientElement& x)
{
    const DegreeLattice& lat = lattice_at(d);
    std::vector<DVec> cols;
    for (auto& c : vanish_cols(d))
        cols.push_back(std::move(c.v));
    return snf_membership(std::move(cols), to_vec(lat.rows, x));
}

} // namespace spingr
