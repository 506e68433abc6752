#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace enrlat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy mirrored by the C API status codes.
enum class ErrCode {
    invalid_argument = 1,
    parse = 2,
    unsupported = 3,
    budget = 4,
    invariant = 5,
    io = 6,
    internal = 7,
};

struct Error : std::runtime_error {
    ErrCode code;
    Error(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(ErrCode c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, ErrCode c, const std::string& msg) {
    if (!cond) fail(c, msg);
}

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor of sqrt(n), n >= 0.
inline Int isqrt(const Int& n) {
    require(n >= 0, ErrCode::invalid_argument, "isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

// x mod m normalized to [0, m), m > 0.
inline Int mod_pos(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

inline int64_t mod_pos_i64(int64_t x, int64_t m) {
    int64_t r = x % m;
    if (r < 0) r += m;
    return r;
}

// Inverse of a mod m for gcd(a, m) = 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int old_r = mod_pos(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    require(old_r == 1, ErrCode::invalid_argument, "inv_mod: not invertible");
    return mod_pos(old_s, m);
}

inline int64_t to_i64(const Int& v) {
    require(v >= INT64_MIN && v <= INT64_MAX, ErrCode::internal, "integer exceeds 64 bits");
    return static_cast<int64_t>(v);
}

inline std::string to_string(const Int& v) { return v.str(); }

}  // namespace enrlat
