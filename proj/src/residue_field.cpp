#include "nadyn/residue_field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "nadyn/error.hpp"
#include "nadyn/fp_poly.hpp"

namespace nadyn {

ResidueField::ResidueField(std::uint32_t p, unsigned m) : p_(p), m_(m), q_(1) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "residue characteristic must be prime");
    if (m == 0 || m > kMaxDegree) throw Error(ErrorKind::InvalidArgument, "residue degree must be in [1, 6]");
    for (unsigned i = 0; i < m; ++i) q_ *= p;
    if (m == 1) {
        modulus_ = {0, 1};
        return;
    }
    if (q_ > kMaxTableSize) throw Error(ErrorKind::InvalidArgument, "residue field too large for tables");
    build_tables();
}

void ResidueField::build_tables() {
    // Search monic polynomials of degree m for one whose root generates the
    // multiplicative group; such a polynomial is irreducible.
    std::vector<std::uint32_t> cand(m_ + 1, 0);
    cand[m_] = 1;
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (std::uint64_t tail = 0; tail < q_; ++tail) {
        std::uint64_t t = tail;
        for (unsigned i = 0; i < m_; ++i) {
            cand[i] = static_cast<std::uint32_t>(t % p_);
            t /= p_;
        }
        if (cand[0] == 0) continue;
        // Walk powers of x modulo cand.
        std::vector<std::uint64_t> cur(m_, 0);
        cur[0] = 1;
        bool primitive = true;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            std::uint64_t code = 0;
            for (unsigned j = m_; j-- > 0;) code = code * p_ + cur[j];
            if (i > 0 && code == 1) {
                primitive = false;
                break;
            }
            exp_[i] = static_cast<std::uint32_t>(code);
            // cur *= x
            const std::uint64_t top = cur[m_ - 1];
            for (unsigned j = m_ - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            for (unsigned j = 0; j < m_; ++j) cur[j] = (cur[j] + (p_ - cand[j]) * top) % p_;
        }
        if (primitive) {
            std::uint64_t code = 0;
            for (unsigned j = m_; j-- > 0;) code = code * p_ + cur[j];
            primitive = code == 1;
        }
        if (!primitive) continue;
        modulus_ = cand;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = static_cast<std::uint32_t>(i);
        return;
    }
    throw Error(ErrorKind::InternalInconsistency, "no primitive polynomial found");
}

ResidueElem ResidueField::from_int(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint64_t>(r)};
}

ResidueElem ResidueField::from_digits(const std::vector<std::uint64_t>& digits) const {
    std::uint64_t code = 0;
    for (std::size_t j = std::min<std::size_t>(digits.size(), m_); j-- > 0;) code = code * p_ + digits[j] % p_;
    return {code};
}

std::vector<std::uint64_t> ResidueField::digits(ResidueElem a) const {
    std::vector<std::uint64_t> d(m_);
    for (unsigned j = 0; j < m_; ++j) {
        d[j] = a.code % p_;
        a.code /= p_;
    }
    return d;
}

ResidueElem ResidueField::generator() const {
    return m_ == 1 ? ResidueElem{0} : ResidueElem{p_};
}

ResidueElem ResidueField::add(ResidueElem a, ResidueElem b) const {
    if (m_ == 1) return {(a.code + b.code) % p_};
    std::uint64_t code = 0, scale = 1;
    for (unsigned j = 0; j < m_; ++j) {
        code += ((a.code % p_ + b.code % p_) % p_) * scale;
        a.code /= p_;
        b.code /= p_;
        scale *= p_;
    }
    return {code};
}

ResidueElem ResidueField::neg(ResidueElem a) const {
    if (m_ == 1) return {(p_ - a.code) % p_};
    std::uint64_t code = 0, scale = 1;
    for (unsigned j = 0; j < m_; ++j) {
        code += ((p_ - a.code % p_) % p_) * scale;
        a.code /= p_;
        scale *= p_;
    }
    return {code};
}

ResidueElem ResidueField::sub(ResidueElem a, ResidueElem b) const { return add(a, neg(b)); }

ResidueElem ResidueField::mul(ResidueElem a, ResidueElem b) const {
    if (m_ == 1) return {a.code * b.code % p_};
    if (a.code == 0 || b.code == 0) return {0};
    return {exp_[(static_cast<std::uint64_t>(log_[a.code]) + log_[b.code]) % (q_ - 1)]};
}

ResidueElem ResidueField::inv(ResidueElem a) const {
    if (a.code == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero residue");
    if (m_ == 1) return {mod_inv(a.code, p_)};
    return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
}

ResidueElem ResidueField::pow(ResidueElem a, std::uint64_t e) const {
    ResidueElem r = one();
    while (e > 0) {
        if (e & 1U) r = mul(r, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return r;
}

ResidueElem ResidueField::pth_root(ResidueElem a) const {
    // a^(p^(m-1)) is the inverse of Frobenius.
    return pow(a, q_ / p_);
}

std::string ResidueField::to_string(ResidueElem a) const {
    if (m_ == 1) return std::to_string(a.code);
    const auto d = digits(a);
    std::ostringstream os;
    bool first = true;
    for (unsigned j = m_; j-- > 0;) {
        if (d[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (j == 0 || d[j] != 1) os << d[j];
        if (j > 0) {
            if (d[j] != 1) os << '*';
            os << 'g';
            if (j > 1) os << '^' << j;
        }
    }
    return first ? "0" : os.str();
}

ResidueFieldPtr residue_field(std::uint32_t p, unsigned m) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, ResidueFieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot = std::make_shared<const ResidueField>(p, m);
    return slot;
}

} // namespace nadyn
