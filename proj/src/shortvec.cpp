#include "shortvec.hpp"

#include <algorithm>

namespace enrlat {

namespace {

struct OverflowRetry {};

// Signed 128-bit integer with overflow-checked arithmetic; any overflow
// aborts the enumeration, which is then redone in arbitrary precision.
struct I128 {
    __int128 v = 0;
    I128() = default;
    I128(__int128 x) : v(x) {}

    friend I128 operator+(I128 a, I128 b) {
        I128 r;
        if (__builtin_add_overflow(a.v, b.v, &r.v)) throw OverflowRetry{};
        return r;
    }
    friend I128 operator-(I128 a, I128 b) {
        I128 r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw OverflowRetry{};
        return r;
    }
    friend I128 operator*(I128 a, I128 b) {
        I128 r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw OverflowRetry{};
        return r;
    }
    friend bool operator<(I128 a, I128 b) { return a.v < b.v; }
    friend bool operator<=(I128 a, I128 b) { return a.v <= b.v; }
    friend bool operator>(I128 a, I128 b) { return a.v > b.v; }
    friend bool operator>=(I128 a, I128 b) { return a.v >= b.v; }
    friend bool operator==(I128 a, I128 b) { return a.v == b.v; }
};

I128 floor_div(I128 a, I128 b) {
    __int128 q = a.v / b.v;
    if (a.v % b.v != 0 && ((a.v < 0) != (b.v < 0))) --q;
    return I128(q);
}

I128 isqrt_floor(I128 x) {
    if (x.v < 0) return I128(-1);
    if (x.v == 0) return I128(0);
    unsigned __int128 n = static_cast<unsigned __int128>(x.v);
    unsigned __int128 r = 0, bit = (unsigned __int128)1 << 126;
    while (bit > n) bit >>= 2;
    while (bit != 0) {
        if (n >= r + bit) {
            n -= r + bit;
            r = (r >> 1) + bit;
        } else {
            r >>= 1;
        }
        bit >>= 2;
    }
    return I128(static_cast<__int128>(r));
}

I128 from_int(const Int& x) {
    if (x > Int(1) << 126 || x < -(Int(1) << 126)) throw OverflowRetry{};
    bool neg = x < 0;
    Int a = neg ? Int(-x) : x;
    unsigned __int128 v = 0;
    Int cur = a;
    int shift = 0;
    while (cur != 0 && shift < 128) {
        v |= (unsigned __int128)(uint64_t)(cur & 0xffffffffffffffffULL) << shift;
        cur >>= 64;
        shift += 64;
    }
    __int128 s = static_cast<__int128>(v);
    return I128(neg ? -s : s);
}

Int to_int(I128 x) {
    bool neg = x.v < 0;
    unsigned __int128 v = neg ? static_cast<unsigned __int128>(-x.v) : static_cast<unsigned __int128>(x.v);
    Int out = Int(static_cast<uint64_t>(v >> 64));
    out <<= 64;
    out += Int(static_cast<uint64_t>(v));
    return neg ? Int(-out) : out;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a - q * b != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int isqrt_floor(const Int& x) { return x < 0 ? Int(-1) : isqrt(x); }

template <class T>
struct Conv;

template <>
struct Conv<I128> {
    static I128 from(const Int& x) { return from_int(x); }
    static Int to(I128 x) { return to_int(x); }
};

template <>
struct Conv<Int> {
    static Int from(const Int& x) { return x; }
    static Int to(const Int& x) { return x; }
};

// One enumeration pass. Levels run k = n..1; at level k the quantities are
//   offset  N'_k = sum_{j>k} lam[j][k] * x_j,
//   A_k     = delta_k * x_k + N'_k,
//   budget  rem_k = bound - sum_{j>=k} A_j^2 / den_j, kept as the integer
//           num_k = rem_k * lcm_k.
// Valid x_k satisfy A_k^2 * lcm_{k+1} <= num_{k+1} * den_k.
template <class T>
class Pass {
public:
    Pass(int n, const std::vector<Int>& delta, const std::vector<std::vector<Int>>& lam,
         const std::vector<Int>& den, const std::vector<Int>& lcm, const std::vector<Int>& cmul,
         const std::vector<Int>& emul)
        : n_(n) {
        delta_.resize(n + 1);
        den_.resize(n + 1);
        lcm_.resize(n + 2);
        cmul_.resize(n + 1);
        emul_.resize(n + 1);
        for (int k = 1; k <= n; ++k) {
            delta_[k] = Conv<T>::from(delta[k]);
            den_[k] = Conv<T>::from(den[k]);
            cmul_[k] = Conv<T>::from(cmul[k]);
            emul_[k] = Conv<T>::from(emul[k]);
        }
        for (int k = 1; k <= n + 1; ++k) lcm_[k] = Conv<T>::from(lcm[k]);
        lam_.assign(n + 1, std::vector<T>(n + 1, T(0)));
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k < j; ++k) lam_[j][k] = Conv<T>::from(lam[j][k]);
    }

    void run(const Int& bound, const std::function<void(const std::vector<Int>&, const Int&)>& f) {
        bound_ = bound;
        x_.assign(n_ + 1, 0);
        xi_.assign(n_ + 1, Int(0));
        cb_ = &f;
        descend(n_, Conv<T>::from(bound), true);
    }

private:
    void descend(int k, T num_next, bool tail_zero) {
        if (k == 0) {
            if (tail_zero) return;  // zero vector
            // |Q| = bound - num_1 / lcm_1
            Int rem = Conv<T>::to(num_next);
            Int l1 = Conv<T>::to(lcm_[1]);
            Int q = bound_ - rem / l1;
            std::vector<Int> coords(n_);
            for (int i = 0; i < n_; ++i) coords[i] = xi_[i + 1];
            (*cb_)(coords, q);
            return;
        }
        T offset = T(0);
        for (int j = k + 1; j <= n_; ++j) {
            if (x_[j] == 0) continue;
            offset = offset + lam_[j][k] * T(x_[j]);
        }
        // A_k^2 <= num_next * den_k / lcm_{k+1}
        T cap = floor_div(num_next * den_[k], lcm_[k + 1]);
        T amax = isqrt_floor(cap);
        if (amax < T(0)) return;
        T lo = floor_div(T(0) - amax - offset + delta_[k] - T(1), delta_[k]);  // ceil
        T hi = floor_div(amax - offset, delta_[k]);
        if (tail_zero && lo < T(0)) lo = T(0);  // half enumeration: first nonzero coord >= 0
        for (T xv = lo; xv <= hi; xv = xv + T(1)) {
            T a = delta_[k] * xv + offset;
            T num_k = cmul_[k] * num_next - emul_[k] * (a * a);
            if (num_k < T(0)) continue;  // guards rounding at the interval edge
            x_[k] = to_small(xv);
            xi_[k] = Conv<T>::to(xv);
            descend(k - 1, num_k, tail_zero && xi_[k] == 0);
        }
        x_[k] = 0;
        xi_[k] = 0;
    }

    static int64_t to_small(const T& v);

    int n_;
    Int bound_;
    std::vector<T> delta_, den_, lcm_, cmul_, emul_;
    std::vector<std::vector<T>> lam_;
    std::vector<int64_t> x_;
    std::vector<Int> xi_;
    const std::function<void(const std::vector<Int>&, const Int&)>* cb_ = nullptr;
};

template <>
int64_t Pass<I128>::to_small(const I128& v) {
    if (v.v > INT64_MAX || v.v < INT64_MIN) throw OverflowRetry{};
    return static_cast<int64_t>(v.v);
}

template <>
int64_t Pass<Int>::to_small(const Int& v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowRetry{};
    return static_cast<int64_t>(v);
}

}  // namespace

ShortVectorEngine::ShortVectorEngine(const IMat& gram) {
    require(gram.rows() == gram.cols() && gram.rows() > 0, ErrCode::invalid_argument,
            "short vectors need a nonempty square Gram");
    require(gram.is_symmetric(), ErrCode::invalid_argument, "Gram must be symmetric");
    n_ = gram.rows();
    require(gram.at(0, 0) != 0, ErrCode::invalid_argument, "short vectors need a definite lattice");
    positive_ = gram.at(0, 0) > 0;
    pos_gram_ = positive_ ? gram : gram.scaled(-1);

    // Integral Gram-Schmidt; positivity of every minor certifies definiteness.
    delta_.assign(n_ + 1, Int(0));
    delta_[0] = 1;
    lam_.assign(n_ + 1, std::vector<Int>(n_ + 1, Int(0)));
    for (int i = 1; i <= n_; ++i) {
        for (int j = 1; j <= i; ++j) {
            Int u = pos_gram_.at(i - 1, j - 1);
            for (int k = 1; k < j; ++k) u = (delta_[k] * u - lam_[i][k] * lam_[j][k]) / delta_[k - 1];
            if (j < i)
                lam_[i][j] = u;
            else {
                require(u > 0, ErrCode::invalid_argument, "short vectors need a definite lattice");
                delta_[i] = u;
            }
        }
    }
    den_.assign(n_ + 1, Int(0));
    for (int k = 1; k <= n_; ++k) den_[k] = delta_[k - 1] * delta_[k];
    lcm_.assign(n_ + 2, Int(1));
    for (int k = n_; k >= 1; --k) lcm_[k] = boost::multiprecision::lcm(lcm_[k + 1], den_[k]);
    cmul_.assign(n_ + 1, Int(0));
    emul_.assign(n_ + 1, Int(0));
    for (int k = 1; k <= n_; ++k) {
        cmul_[k] = lcm_[k] / lcm_[k + 1];
        emul_[k] = lcm_[k] / den_[k];
    }
}

void ShortVectorEngine::scan_half(
    const Int& bound, const std::function<void(const std::vector<Int>&, const Int&)>& f) const {
    require(bound >= 0, ErrCode::invalid_argument, "negative enumeration bound");
    // Buffer results so a mid-scan overflow retry cannot double-deliver.
    std::vector<std::pair<std::vector<Int>, Int>> results;
    auto collect = [&](const std::vector<Int>& v, const Int& q) { results.emplace_back(v, q); };
    std::function<void(const std::vector<Int>&, const Int&)> sink = collect;
    try {
        Pass<I128> p(n_, delta_, lam_, den_, lcm_, cmul_, emul_);
        p.run(bound, sink);
    } catch (const OverflowRetry&) {
        results.clear();
        Pass<Int> p(n_, delta_, lam_, den_, lcm_, cmul_, emul_);
        p.run(bound, sink);
    }
    for (const auto& r : results) f(r.first, r.second);
}

Int ShortVectorEngine::check_norm_arg(const Int& norm) const {
    require(norm != 0, ErrCode::invalid_argument, "zero target norm");
    require((norm > 0) == positive_, ErrCode::invalid_argument,
            "target norm sign does not match the lattice");
    return abs(norm);
}

Int ShortVectorEngine::count_norm(const Int& norm, bool half) const {
    Int t = check_norm_arg(norm);
    Int count = 0;
    scan_half(t, [&](const std::vector<Int>&, const Int& q) {
        if (q == t) ++count;
    });
    return half ? count : Int(2 * count);
}

std::vector<std::vector<Int>> ShortVectorEngine::list_norm(const Int& norm, bool half) const {
    Int t = check_norm_arg(norm);
    std::vector<std::vector<Int>> out;
    scan_half(t, [&](const std::vector<Int>& v, const Int& q) {
        if (q != t) return;
        out.push_back(v);
        if (!half) {
            std::vector<Int> neg(v.size());
            for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
            out.push_back(std::move(neg));
        }
    });
    return out;
}

std::vector<Int> ShortVectorEngine::theta_prefix(const Int& max_abs) const {
    require(max_abs >= 2 && max_abs % 2 == 0, ErrCode::invalid_argument,
            "theta prefix bound must be a positive even integer");
    size_t slots = size_t(to_i64(max_abs / 2));
    std::vector<Int> counts(slots, Int(0));
    scan_half(max_abs, [&](const std::vector<Int>&, const Int& q) {
        if (q == 0 || q % 2 != 0) return;  // odd norms not tracked
        size_t idx = size_t(to_i64(q / 2)) - 1;
        if (idx < slots) counts[idx] += 2;
    });
    return counts;
}

Int ShortVectorEngine::min_norm_abs() const {
    Int bound = abs(pos_gram_.at(0, 0));
    for (int i = 1; i < n_; ++i) bound = std::min(bound, Int(abs(pos_gram_.at(i, i))));
    Int best = bound + 1;
    scan_half(bound, [&](const std::vector<Int>&, const Int& q) {
        if (q > 0 && q < best) best = q;
    });
    require(best <= bound, ErrCode::internal, "minimum search failed");
    return best;
}

Int root_halfcount(const IMat& neg_def_gram) {
    ShortVectorEngine eng(neg_def_gram);
    require(!eng.positive(), ErrCode::invalid_argument, "root counting needs a negative definite lattice");
    return eng.count_norm(Int(-2), true);
}

}  // namespace enrlat
