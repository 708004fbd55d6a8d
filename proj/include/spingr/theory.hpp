#pragma once

#include <stdexcept>
#include <string>

namespace spingr {

/// The coefficient theory k(n) with coefficient ring Z_(2)[v], |v| = -2(2^n - 1).
struct TheorySpec {
    int n = 1;

    explicit TheorySpec(int level = 1) : n(level)
    {
        if (n < 1 || n > 30)
            throw std::invalid_argument("TheorySpec: level must be in [1,30]");
    }

    /// Topological degree of v: -2(2^n - 1).
    int v_degree() const { return -2 * ((1 << n) - 1); }

    /// Degree drop per power of v, as a positive even integer 2(2^n - 1).
    int shift() const { return -v_degree(); }

    friend bool operator==(const TheorySpec& a, const TheorySpec& b) { return a.n == b.n; }
    friend bool operator!=(const TheorySpec& a, const TheorySpec& b) { return a.n != b.n; }

    std::string str() const { return "k(" + std::to_string(n) + ")"; }
};

} // namespace spingr
