#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace spingr {

using BigInt = boost::multiprecision::cpp_int;

/// A 2-adic valuation: a nonnegative integer or +infinity (valuation of zero).
class Val2 {
public:
    constexpr Val2() = default;
    constexpr explicit Val2(long v) : v_(v) {}

    static constexpr Val2 infinity()
    {
        Val2 x;
        x.inf_ = true;
        return x;
    }

    constexpr bool is_infinite() const { return inf_; }

    long value() const
    {
        if (inf_)
            throw std::logic_error("Val2: value() on infinity");
        return v_;
    }

    Val2 operator+(const Val2& o) const
    {
        if (inf_ || o.inf_)
            return infinity();
        return Val2(v_ + o.v_);
    }
    Val2 operator+(long k) const { return *this + Val2(k); }

    friend bool operator==(const Val2& a, const Val2& b)
    {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator!=(const Val2& a, const Val2& b) { return !(a == b); }
    friend bool operator<(const Val2& a, const Val2& b)
    {
        if (a.inf_)
            return false;
        if (b.inf_)
            return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Val2& a, const Val2& b) { return a < b || a == b; }
    friend bool operator>(const Val2& a, const Val2& b) { return b < a; }
    friend bool operator>=(const Val2& a, const Val2& b) { return b <= a; }

    static Val2 min(const Val2& a, const Val2& b) { return a < b ? a : b; }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    long v_ = 0;
    bool inf_ = false;
};

/// An element of Z_(2): a rational with odd denominator, kept in canonical
/// form (gcd(num, den) = 1, den odd and positive).
class Dyadic {
public:
    Dyadic() : num_(0), den_(1) {}
    Dyadic(long n) : num_(n), den_(1) {}
    Dyadic(BigInt n) : num_(std::move(n)), den_(1) {}
    Dyadic(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { canonicalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    /// Exponent of 2 in the canonical numerator; infinity for zero.
    Val2 val2() const
    {
        if (num_ == 0)
            return Val2::infinity();
        long v = 0;
        BigInt n = num_;
        while ((n & 1) == 0) {
            n >>= 1;
            ++v;
        }
        return Val2(v);
    }

    bool is_unit() const { return num_ != 0 && (num_ & 1) != 0; }

    Dyadic operator-() const
    {
        Dyadic r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Dyadic operator+(const Dyadic& o) const
    {
        return Dyadic(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Dyadic operator-(const Dyadic& o) const
    {
        return Dyadic(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Dyadic operator*(const Dyadic& o) const { return Dyadic(num_ * o.num_, den_ * o.den_); }

    /// Division inside Z_(2); throws if the quotient has even denominator,
    /// i.e. if val2(*this) < val2(o).
    Dyadic operator/(const Dyadic& o) const
    {
        if (o.num_ == 0)
            throw std::domain_error("Dyadic: division by zero");
        Dyadic r(num_ * o.den_, den_ * o.num_);
        return r;
    }

    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend bool operator==(const Dyadic& a, const Dyadic& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

    static Dyadic pow2(long k)
    {
        Dyadic r(1);
        r.num_ <<= k;
        return r;
    }

    /// Canonical rendering "num/den", e.g. "3/1", "-8/5".
    std::string str() const { return num_.str() + "/" + den_.str(); }

    /// Parses "num/den" or a bare integer; returns nullopt on malformed input
    /// or even denominator.
    static std::optional<Dyadic> parse(const std::string& s)
    {
        auto slash = s.find('/');
        try {
            BigInt n(slash == std::string::npos ? s : s.substr(0, slash));
            BigInt d(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
            if (d == 0 || ((d & 1) == 0))
                return std::nullopt;
            return Dyadic(n, d);
        }
        catch (const std::exception&) {
            return std::nullopt;
        }
    }

private:
    void canonicalize()
    {
        if (den_ == 0)
            throw std::domain_error("Dyadic: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if ((den_ & 1) == 0)
            throw std::domain_error("Dyadic: denominator not odd, element not 2-local");
        if (num_ == 0)
            den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

} // namespace spingr
