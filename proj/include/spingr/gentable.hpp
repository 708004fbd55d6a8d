#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spingr {

/// What a generator's square rewrites to.
enum class SquareRule : std::uint8_t {
    exact,           // y_m^2 = y_{2m}, with y_{2m} in the table
    zero_exact,      // y_m^2 = 0 exactly (killed index inside the range)
    zero_with_error, // y_m^2 = 0 up to a term of higher filtration
};

struct Generator {
    int degree = 0;               // even positive topological degree
    SquareRule rule = SquareRule::zero_with_error;
    int square_index = -1;        // target index when rule == exact
};

/// Square-free monomials over the table, encoded as bitmasks.
using MonoMask = std::uint32_t;

/// Ordered list of even-degree generators with their square rules.
class GeneratorTable {
public:
    static constexpr int kMaxGenerators = 20;

    void add(int degree, SquareRule rule = SquareRule::zero_with_error, int square_index = -1)
    {
        if (size() >= kMaxGenerators)
            throw std::invalid_argument("GeneratorTable: too many generators");
        if (degree <= 0 || degree % 2 != 0)
            throw std::invalid_argument("GeneratorTable: degree must be even and positive");
        if (!gens_.empty() && gens_.back().degree >= degree)
            throw std::invalid_argument("GeneratorTable: degrees must strictly increase");
        gens_.push_back({degree, rule, square_index});
    }

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_.at(static_cast<size_t>(i)); }
    int degree(int i) const { return gen(i).degree; }
    std::string name(int i) const { return "y" + std::to_string(degree(i)); }

    std::optional<int> index_of_degree(int d) const
    {
        for (int i = 0; i < size(); ++i)
            if (gens_[static_cast<size_t>(i)].degree == d)
                return i;
        return std::nullopt;
    }

    MonoMask full_mask() const { return size() == 0 ? 0 : ((MonoMask{1} << size()) - 1); }

    int mono_degree(MonoMask m) const
    {
        int d = 0;
        for (int i = 0; i < size(); ++i)
            if (m & (MonoMask{1} << i))
                d += degree(i);
        return d;
    }

    std::string mono_name(MonoMask m) const
    {
        if (m == 0)
            return "1";
        std::string s;
        for (int i = 0; i < size(); ++i)
            if (m & (MonoMask{1} << i)) {
                if (!s.empty())
                    s += "*";
                s += name(i);
            }
        return s;
    }

    /// All square-free monomials of the given degree, ascending mask order.
    std::vector<MonoMask> monomials_of_degree(int d) const
    {
        std::vector<MonoMask> out;
        MonoMask all = full_mask();
        for (MonoMask m = 0;; ++m) {
            if (mono_degree(m) == d)
                out.push_back(m);
            if (m == all)
                break;
        }
        return out;
    }

    friend bool operator==(const GeneratorTable& a, const GeneratorTable& b)
    {
        if (a.size() != b.size())
            return false;
        for (int i = 0; i < a.size(); ++i) {
            const auto &x = a.gen(i), &y = b.gen(i);
            if (x.degree != y.degree || x.rule != y.rule || x.square_index != y.square_index)
                return false;
        }
        return true;
    }

private:
    std::vector<Generator> gens_;
};

} // namespace spingr
