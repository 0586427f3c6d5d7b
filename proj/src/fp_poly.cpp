#include "nadyn/fp_poly.hpp"

#include <algorithm>
#include <sstream>

#include "nadyn/error.hpp"

namespace nadyn {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1U) result = result * base % p;
        base = base * base % p;
        exp >>= 1U;
    }
    return result;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in F_p");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& c : c_) c %= p_;
    trim();
}

FpPoly FpPoly::constant(std::uint32_t p, std::int64_t c) {
    std::int64_t r = c % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return FpPoly(p, {static_cast<std::uint64_t>(r)});
}

FpPoly FpPoly::monomial(std::uint32_t p, std::uint64_t c, std::size_t k) {
    std::vector<std::uint64_t> v(k + 1, 0);
    v[k] = c;
    return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long FpPoly::order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<long>(i);
    return -1;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (coeff(i) + o.coeff(i)) % p_;
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::operator-() const {
    FpPoly r = *this;
    for (auto& c : r.c_) c = c == 0 ? 0 : p_ - c;
    return r;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return FpPoly(p_);
    std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p_;
    }
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::scaled(std::uint64_t c) const {
    FpPoly r = *this;
    c %= p_;
    for (auto& x : r.c_) x = x * c % p_;
    r.trim();
    return r;
}

FpPoly FpPoly::shifted(long k) const {
    if (is_zero()) return *this;
    if (k >= 0) {
        std::vector<std::uint64_t> r(static_cast<std::size_t>(k), 0);
        r.insert(r.end(), c_.begin(), c_.end());
        return FpPoly(p_, std::move(r));
    }
    const auto drop = static_cast<std::size_t>(-k);
    if (drop >= c_.size()) return FpPoly(p_);
    return FpPoly(p_, std::vector<std::uint64_t>(c_.begin() + static_cast<long>(drop), c_.end()));
}

FpPoly FpPoly::truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return FpPoly(p_, std::vector<std::uint64_t>(c_.begin(), c_.begin() + static_cast<long>(n)));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly(p_);
    std::vector<std::uint64_t> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * (i % p_) % p_;
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(mod_inv(lead(), p_));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (degree() < d.degree()) return {FpPoly(p_), *this};
    std::vector<std::uint64_t> rem = c_;
    std::vector<std::uint64_t> quo(c_.size() - d.c_.size() + 1, 0);
    const std::uint64_t inv = mod_inv(d.lead(), p_);
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = quo.size(); i-- > 0;) {
        const std::uint64_t q = rem[i + dd] * inv % p_;
        quo[i] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j)
            rem[i + j] = (rem[i + j] + (p_ - q) * d.c_[j]) % p_;
    }
    return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::series_inverse(std::size_t n) const {
    if (coeff(0) == 0) throw Error(ErrorKind::DivisionByZero, "series inverse needs a unit constant term");
    std::vector<std::uint64_t> inv(n, 0);
    if (n == 0) return FpPoly(p_);
    const std::uint64_t c0inv = mod_inv(c_[0], p_);
    inv[0] = c0inv;
    for (std::size_t k = 1; k < n; ++k) {
        std::uint64_t s = 0;
        for (std::size_t j = 1; j <= k && j < c_.size(); ++j) s = (s + c_[j] * inv[k - j]) % p_;
        inv[k] = (p_ - s) % p_ * c0inv % p_;
    }
    return FpPoly(p_, std::move(inv));
}

bool FpPoly::is_pth_power() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0 && i % p_ != 0) return false;
    return true;
}

FpPoly FpPoly::pth_root() const {
    std::vector<std::uint64_t> r;
    for (std::size_t i = 0; i < c_.size(); i += p_) r.push_back(c_[i]);
    return FpPoly(p_, std::move(r));
}

std::string FpPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

bool is_monomial(const FpPoly& f) {
    return !f.is_zero() && f.order() == f.degree();
}

} // namespace

RatFunc::RatFunc(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
    const std::uint32_t p = den_.prime();
    if (num_.is_zero()) {
        den_ = FpPoly::constant(p, 1);
        return;
    }
    if (is_monomial(den_)) {
        // Fast path for truncated series: only powers of t can cancel.
        const long k = std::min(num_.order(), den_.degree());
        num_ = num_.shifted(-k);
        den_ = den_.shifted(-k);
    } else {
        FpPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divmod(g).first;
            den_ = den_.divmod(g).first;
        }
    }
    const std::uint64_t inv = mod_inv(den_.lead(), p);
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den_ == o.den_) return {num_ + o.num_, den_};
    return {num_ * o.den_ + o.num_ * den_, den_ * o.den_};
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const { return {num_ * o.num_, den_ * o.den_}; }

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in F_p(t)");
    return {num_ * o.den_, den_ * o.num_};
}

RatFunc RatFunc::derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

std::string RatFunc::to_string() const {
    if (den_.degree() == 0) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

} // namespace nadyn
