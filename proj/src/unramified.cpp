#include "nadyn/unramified.hpp"

#include <map>
#include <mutex>

#include "nadyn/error.hpp"

namespace nadyn {

namespace {

mpz_class ppow(std::uint32_t p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
    return r;
}

void reduce_mod(mpz_class& a, const mpz_class& m) {
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
}

} // namespace

UnramifiedField::UnramifiedField(std::uint32_t p, unsigned m) : p_(p), m_(m), k_(residue_field(p, m)) {
    for (auto c : k_->modulus()) modulus_.emplace_back(c);
}

std::string UnramifiedField::name() const {
    if (m_ == 1) return "Qp:" + std::to_string(p_);
    return "Qq:" + std::to_string(p_) + "^" + std::to_string(m_);
}

UnramifiedFieldPtr unramified_field(std::uint32_t p, unsigned m) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, UnramifiedFieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot = std::make_shared<const UnramifiedField>(p, m);
    return slot;
}

UElem UElem::zero(UnramifiedFieldPtr k, long abs_prec) {
    UElem z;
    z.k_ = std::move(k);
    z.abs_ = abs_prec;
    return z;
}

UElem UElem::normalize(UnramifiedFieldPtr k, std::vector<mpz_class> c, long v, long abs_prec) {
    if (abs_prec <= v) return zero(std::move(k), abs_prec);
    const std::uint32_t p = k->p();
    const mpz_class mod = ppow(p, abs_prec - v);
    long t = kInfinity;
    for (auto& x : c) {
        reduce_mod(x, mod);
        if (x != 0) t = std::min(t, padic_val(x, p));
    }
    if (t == kInfinity) return zero(std::move(k), abs_prec);
    if (t > 0) {
        const mpz_class s = ppow(p, t);
        for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
    }
    UElem r;
    r.k_ = std::move(k);
    r.v_ = v + t;
    r.abs_ = abs_prec;
    r.unit_ = std::move(c);
    return r;
}

UElem UElem::from_digits(UnramifiedFieldPtr k, const std::vector<mpz_class>& digits, long v, long rel) {
    std::vector<mpz_class> c(k->degree(), 0);
    for (std::size_t i = 0; i < digits.size() && i < c.size(); ++i) c[i] = digits[i];
    return normalize(k, std::move(c), v, v + rel);
}

UElem UElem::from_rational(UnramifiedFieldPtr k, const mpq_class& q, long rel) {
    if (q == 0) return zero(std::move(k));
    const std::uint32_t p = k->p();
    mpz_class num = q.get_num(), den = q.get_den();
    const long vn = padic_val(num, p), vd = padic_val(den, p);
    num /= ppow(p, vn);
    den /= ppow(p, vd);
    const mpz_class mod = ppow(p, rel);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    return from_digits(std::move(k), {num * inv}, vn - vd, rel);
}

UElem UElem::from_kelem(UnramifiedFieldPtr k, const KElem& x, long rel) {
    const mpq_class* q = x.rational();
    if (!q || !x.is_exact()) throw Error(ErrorKind::InvalidArgument, "only exact p-adic rationals embed here");
    return from_rational(std::move(k), *q, rel);
}

UElem UElem::lift(UnramifiedFieldPtr k, ResidueElem r, long rel) {
    const auto d = k->residue()->digits(r);
    std::vector<mpz_class> c;
    for (auto x : d) c.emplace_back(static_cast<unsigned long>(x));
    return from_digits(std::move(k), c, 0, rel);
}

UElem UElem::uniformizer_power(UnramifiedFieldPtr k, long e, long rel) {
    return from_digits(std::move(k), {1}, e, rel);
}

std::vector<mpz_class> UElem::scaled_digits(long to_v) const {
    const mpz_class s = ppow(k_->p(), v_ - to_v);
    std::vector<mpz_class> c = unit_;
    for (auto& x : c) x *= s;
    return c;
}

UElem UElem::operator-() const {
    if (is_zero()) return *this;
    std::vector<mpz_class> c = unit_;
    for (auto& x : c) x = -x;
    return normalize(k_, std::move(c), v_, abs_);
}

UElem UElem::operator+(const UElem& o) const {
    const long abs_prec = std::min(abs_, o.abs_);
    if (o.is_zero()) return is_zero() ? zero(k_, abs_prec) : normalize(k_, unit_, v_, abs_prec);
    if (is_zero()) return normalize(o.k_, o.unit_, o.v_, abs_prec);
    const long v = std::min(v_, o.v_);
    std::vector<mpz_class> c = scaled_digits(v);
    const std::vector<mpz_class> d = o.scaled_digits(v);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += d[i];
    return normalize(k_, std::move(c), v, abs_prec);
}

UElem UElem::operator-(const UElem& o) const { return *this + (-o); }

UElem UElem::operator*(const UElem& o) const {
    if (is_zero() || o.is_zero()) {
        const long a = val_add(abs_, o.val()), b = val_add(o.abs_, val());
        return zero(k_ ? k_ : o.k_, std::min(a, b));
    }
    const unsigned m = k_->degree();
    const long rel = std::min(rel_precision(), o.rel_precision());
    std::vector<mpz_class> prod(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) prod[i + j] += unit_[i] * o.unit_[j];
    const auto& mod = k_->modulus();
    for (std::size_t top = prod.size(); top-- > m;) {
        const mpz_class c = prod[top];
        if (c == 0) continue;
        for (unsigned i = 0; i < m; ++i) prod[top - m + i] -= c * mod[i];
        prod[top] = 0;
    }
    prod.resize(m);
    const long v = v_ + o.v_;
    return normalize(k_, std::move(prod), v, v + rel);
}

UElem UElem::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of an element not known to be nonzero");
    const auto& K = *k_->residue();
    std::vector<std::uint64_t> dig;
    for (const auto& x : unit_) dig.push_back(mpz_class(x % k_->p()).get_ui());
    const long rel = rel_precision();
    UElem u = from_digits(k_, unit_, 0, rel);
    UElem y = lift(k_, K.inv(K.from_digits(dig)), rel);
    const UElem two = from_rational(k_, 2, rel);
    for (long prec = 1; prec < rel; prec *= 2) y = y * (two - u * y);
    y.v_ -= v_;
    y.abs_ = y.v_ + rel;
    return y;
}

UElem UElem::operator/(const UElem& o) const { return *this * o.inverse(); }

UElem UElem::pow(unsigned long e) const {
    if (is_zero()) return e == 0 ? from_rational(k_, 1, 1) : zero(k_, abs_ == kInfinity ? kInfinity : abs_ * static_cast<long>(e));
    UElem base = *this, acc = from_rational(k_, 1, rel_precision());
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

UElem UElem::with_rel_precision(long rel) const {
    if (is_zero()) return *this;
    return normalize(k_, unit_, v_, v_ + std::min(rel, rel_precision()));
}

UElem UElem::padded_to(long abs_prec) const {
    if (abs_prec <= abs_) return *this;
    if (is_zero()) return zero(k_, abs_prec);
    UElem r = *this;
    r.abs_ = abs_prec;
    return r;
}

ResidueElem UElem::residue() const {
    const auto& K = *k_->residue();
    if (val() < 0) throw Error(ErrorKind::NegativeValuation, "residue of a non-integral element");
    if (is_zero() || v_ > 0) {
        if (is_zero() && abs_ <= 0) throw Error(ErrorKind::UncertifiedValuation, "residue below the precision horizon");
        return K.zero();
    }
    std::vector<std::uint64_t> dig;
    for (const auto& x : unit_) dig.push_back(mpz_class(x % k_->p()).get_ui());
    return K.from_digits(dig);
}

std::string UElem::to_string() const {
    if (is_zero()) return abs_ == kInfinity ? "0" : "O(p^" + std::to_string(abs_) + ")";
    std::vector<mpz_class> c = unit_;
    if (v_ > 0)
        for (auto& x : c) x *= ppow(k_->p(), v_);
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        const std::string digits = c[i].get_str();
        if (i == 0) s += digits;
        else s += (c[i] == 1 ? "" : digits + "*") + (i == 1 ? std::string("x") : "x^" + std::to_string(i));
    }
    if (v_ < 0) s = "(" + s + ")/" + std::to_string(k_->p()) + "^" + std::to_string(-v_);
    return s;
}

UPoly UPoly::from_kpoly(UnramifiedFieldPtr k, const KPoly& f, long rel) {
    UPoly r;
    for (const auto& c : f.coeffs()) r.c.push_back(UElem::from_kelem(k, c, rel));
    return r;
}

UElem UPoly::operator()(const UElem& x) const {
    UElem acc = UElem::zero(x.field());
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

UPoly UPoly::derivative() const {
    UPoly r;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const UElem k = UElem::from_rational(c[i].field(), static_cast<long>(i), std::max(c[i].rel_precision(), 1L));
        r.c.push_back(c[i] * k);
    }
    return r;
}

} // namespace nadyn
