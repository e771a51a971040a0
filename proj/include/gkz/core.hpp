#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkz {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// An element of ZA = Z^{d+1}; also used for integral parameters beta.
using DegreeVector = IntVector;

/// Failure of a mathematical precondition (NotPointed, NotSaturated, ...).
/// `name()` is the stable identifier surfaced by the CLI.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

inline std::int64_t to_int64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return static_cast<std::int64_t>(x);
}

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Integer r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Floor division for exact integers (boost truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer floor(const Rational& q) {
    return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

inline Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline std::int64_t binomial(std::int64_t m, std::int64_t k) {
    if (k < 0 || k > m) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IntVector operator+(IntVector a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline IntVector operator-(IntVector a, const IntVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline IntVector operator-(IntVector a) {
    for (auto& x : a) x = -x;
    return a;
}

inline bool is_zero(const IntVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline IntVector make_vector(std::initializer_list<long long> xs) {
    IntVector v;
    v.reserve(xs.size());
    for (long long x : xs) v.emplace_back(x);
    return v;
}

/// Divide by the gcd of the entries; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

inline std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace gkz
