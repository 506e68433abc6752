#include "cyclotomic.hpp"

#include <map>
#include <mutex>

namespace enrlat {

namespace {

// Exact division of polynomials with integer coefficients, monic divisor.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    int dn = int(num.size()) - 1, dd = int(den.size()) - 1;
    require(dd >= 0 && den[dd] == 1, ErrCode::internal, "poly division needs monic divisor");
    std::vector<Int> q(std::max(dn - dd + 1, 0));
    for (int k = dn - dd; k >= 0; --k) {
        Int c = num[k + dd];
        q[k] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    for (const Int& c : num) require(c == 0, ErrCode::internal, "poly division not exact");
    return q;
}

std::vector<Int> poly_rem(std::vector<Int> num, const std::vector<Int>& den) {
    int dd = int(den.size()) - 1;
    for (int k = int(num.size()) - 1 - dd; k >= 0; --k) {
        Int c = num[k + dd];
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    num.resize(dd > 0 ? dd : 0);
    return num;
}

}  // namespace

const std::vector<Int>& cyclotomic_poly(int level) {
    static std::map<int, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;

    // Phi_L = (x^L - 1) / prod_{d | L, d < L} Phi_d, computed bottom-up.
    std::function<const std::vector<Int>&(int)> get = [&](int l) -> const std::vector<Int>& {
        auto hit = cache.find(l);
        if (hit != cache.end()) return hit->second;
        std::vector<Int> num(l + 1);
        num[0] = -1;
        num[l] = 1;
        for (int d = 1; d < l; ++d) {
            if (l % d != 0) continue;
            num = poly_div_exact(std::move(num), get(d));
        }
        return cache.emplace(l, std::move(num)).first->second;
    };
    return get(level);
}

CycInt CycInt::root(int level, const Int& e) {
    CycInt c(level);
    c.add_root(e);
    return c;
}

void CycInt::add_root(const Int& e) {
    Int r = mod_pos(e, Int(level_));
    coef_[size_t(to_i64(r))] += 1;
}

CycInt CycInt::operator+(const CycInt& o) const {
    require(level_ == o.level_, ErrCode::internal, "cyclotomic level mismatch");
    CycInt r(level_);
    for (int i = 0; i < level_; ++i) r.coef_[i] = coef_[i] + o.coef_[i];
    return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
    require(level_ == o.level_, ErrCode::internal, "cyclotomic level mismatch");
    CycInt r(level_);
    for (int i = 0; i < level_; ++i) r.coef_[i] = coef_[i] - o.coef_[i];
    return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
    require(level_ == o.level_, ErrCode::internal, "cyclotomic level mismatch");
    CycInt r(level_);
    for (int i = 0; i < level_; ++i) {
        if (coef_[i] == 0) continue;
        for (int j = 0; j < level_; ++j) {
            if (o.coef_[j] == 0) continue;
            int k = i + j;
            if (k >= level_) k -= level_;
            r.coef_[k] += coef_[i] * o.coef_[j];
        }
    }
    return r;
}

CycInt CycInt::scaled(const Int& s) const {
    CycInt r(level_);
    for (int i = 0; i < level_; ++i) r.coef_[i] = coef_[i] * s;
    return r;
}

bool CycInt::is_zero() const {
    std::vector<Int> rem = poly_rem(coef_, cyclotomic_poly(level_));
    for (const Int& c : rem)
        if (c != 0) return false;
    return true;
}

CycInt sqrt_as_cyc(int level, const Int& n) {
    require(n >= 1, ErrCode::invalid_argument, "sqrt_as_cyc needs n >= 1");
    CycInt out = CycInt::root(level, 0);
    Int rest = n, square_part = 1;
    for (Int p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            square_part *= p;
            rest /= p * p;
        }
    }
    out = out.scaled(square_part);
    // rest is squarefree; take sqrt prime by prime.
    Int m = rest;
    for (Int p = 2; p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (p == 2) {
            require(level % 8 == 0, ErrCode::internal, "sqrt(2) needs 8 | level");
            // sqrt(2) = zeta_8 + zeta_8^-1
            CycInt s2 = CycInt::root(level, Int(level / 8));
            s2.add_root(Int(-level / 8));
            out = out * s2;
        } else {
            int pi = int(to_i64(p));
            require(level % (4 * pi) == 0, ErrCode::internal, "sqrt(p) needs 4p | level");
            // Quadratic Gauss sum: sum_k zeta_p^(k^2) = sqrt(p) or i*sqrt(p).
            CycInt g(level);
            for (int k = 0; k < pi; ++k) g.add_root(Int((int64_t(k) * k % pi) * (level / pi)));
            if (pi % 4 == 3) g = g * CycInt::root(level, Int(3 * (level / 4)));  // multiply by -i
            out = out * g;
        }
    }
    return out;
}

}  // namespace enrlat
