#include "nadyn/respoly.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "nadyn/error.hpp"

namespace nadyn {

// ---------------------------------------------------------------- KPoly

KPoly::KPoly(const FieldSpec& f, std::vector<KElem> coeffs) : field_(f), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (!(c.field() == field_)) throw Error(ErrorKind::InvalidArgument, "coefficient from a different field");
    trim();
}

void KPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KPoly KPoly::constant(const KElem& c) { return {c.field(), {c}}; }

KPoly KPoly::monomial(const KElem& c, int k) {
    std::vector<KElem> v(static_cast<std::size_t>(k) + 1, KElem::zero(c.field()));
    v.back() = c;
    return {c.field(), std::move(v)};
}

KPoly KPoly::variable(const FieldSpec& f) { return monomial(KElem::one(f), 1); }

KPoly KPoly::from_roots(const KElem& lead, const std::vector<KElem>& roots) {
    const FieldSpec& f = lead.field();
    KPoly r = constant(lead);
    for (const auto& root : roots) r = r * KPoly(f, {-root, KElem::one(f)});
    return r;
}

KElem KPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return KElem::zero(field_);
    return c_[static_cast<std::size_t>(i)];
}

bool KPoly::is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const KElem& c) { return c.is_exact(); });
}

long KPoly::min_valuation() const {
    long m = kInfinity;
    for (const auto& c : c_) m = std::min(m, c.val());
    return m;
}

KPoly KPoly::operator+(const KPoly& o) const {
    std::vector<KElem> r(std::max(c_.size(), o.c_.size()), KElem::zero(field_));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return {field_, std::move(r)};
}

KPoly KPoly::operator-() const {
    KPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

KPoly KPoly::operator-(const KPoly& o) const { return *this + (-o); }

KPoly KPoly::operator*(const KPoly& o) const {
    if (is_zero() || o.is_zero()) return KPoly(field_);
    std::vector<KElem> r(c_.size() + o.c_.size() - 1, KElem::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero() && c_[i].is_exact()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return {field_, std::move(r)};
}

KPoly KPoly::scaled(const KElem& c) const {
    KPoly r = *this;
    for (auto& x : r.c_) x *= c;
    r.trim();
    return r;
}

std::pair<KPoly, KPoly> KPoly::divmod(const KPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (degree() < d.degree()) return {KPoly(field_), *this};
    std::vector<KElem> rem = c_;
    std::vector<KElem> quo(c_.size() - d.c_.size() + 1, KElem::zero(field_));
    const KElem inv = KElem::one(field_) / d.lead();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = quo.size(); i-- > 0;) {
        const KElem q = rem[i + dd] * inv;
        quo[i] = q;
        if (q.is_zero()) continue;
        for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q * d.c_[j];
        rem[i + dd] = KElem::zero(field_);
    }
    rem.resize(dd);
    return {KPoly(field_, std::move(quo)), KPoly(field_, std::move(rem))};
}

KPoly KPoly::exact_div(const KPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw Error(ErrorKind::InternalInconsistency, "non-exact polynomial division");
    return q;
}

KPoly KPoly::derivative() const {
    if (c_.size() <= 1) return KPoly(field_);
    std::vector<KElem> r;
    r.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * KElem::from_int(field_, static_cast<long>(i)));
    return {field_, std::move(r)};
}

KElem KPoly::eval(const KElem& x) const {
    if (c_.empty()) return KElem::zero(field_);
    KElem acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

KPoly KPoly::compose(const KPoly& g) const {
    if (c_.empty()) return KPoly(field_);
    KPoly acc = constant(c_.back());
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * g + constant(c_[i]);
    return acc;
}

KPoly KPoly::substitute_affine(const KElem& a, const KElem& b) const {
    return compose(KPoly(field_, {b, a}));
}

namespace {

std::string coeff_text(const KElem& c) {
    std::string s = c.kernel_string();
    const bool plain = std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    return plain ? s : "(" + s + ")";
}

} // namespace

std::string KPoly::to_string(char var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const bool unit = c_[i] == KElem::one(field_);
        if (i == 0 || !unit) os << coeff_text(c_[i]);
        if (i > 0) {
            if (!unit) os << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

KPoly gcd(KPoly a, KPoly b) {
    while (!b.is_zero()) {
        KPoly r = a.divmod(b).second;
        a = std::move(b);
        b = r.is_zero() ? std::move(r) : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

KElem resultant(const KPoly& f, const KPoly& g) {
    const FieldSpec& fs = f.field();
    if (f.is_zero() || g.is_zero()) return KElem::zero(fs);
    if (g.degree() == 0) return g.lead().pow(f.degree());
    if (f.degree() < g.degree()) {
        const KElem r = resultant(g, f);
        return (f.degree() * g.degree()) % 2 == 0 ? r : -r;
    }
    KPoly r = f.divmod(g).second;
    if (r.is_zero()) return KElem::zero(fs);
    KElem res = g.lead().pow(f.degree() - r.degree()) * resultant(g, r);
    return (f.degree() * g.degree()) % 2 == 0 ? res : -res;
}

// ---------------------------------------------------------------- ResPoly

ResPoly::ResPoly(ResidueFieldPtr k, std::vector<ResidueElem> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
    trim();
}

void ResPoly::trim() {
    while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

ResPoly ResPoly::operator+(const ResPoly& o) const {
    std::vector<ResidueElem> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = k_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return {k_, std::move(r)};
}

ResPoly ResPoly::operator-(const ResPoly& o) const {
    std::vector<ResidueElem> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = k_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return {k_, std::move(r)};
}

ResPoly ResPoly::operator*(const ResPoly& o) const {
    if (is_zero() || o.is_zero()) return ResPoly(k_);
    std::vector<ResidueElem> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = k_->add(r[i + j], k_->mul(c_[i], o.c_[j]));
    return {k_, std::move(r)};
}

ResPoly ResPoly::scaled(ResidueElem c) const {
    std::vector<ResidueElem> r = c_;
    for (auto& x : r) x = k_->mul(x, c);
    return {k_, std::move(r)};
}

std::pair<ResPoly, ResPoly> ResPoly::divmod(const ResPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "residue polynomial division by zero");
    if (degree() < d.degree()) return {ResPoly(k_), *this};
    std::vector<ResidueElem> rem = c_;
    std::vector<ResidueElem> quo(c_.size() - d.c_.size() + 1);
    const ResidueElem inv = k_->inv(d.lead());
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = quo.size(); i-- > 0;) {
        const ResidueElem q = k_->mul(rem[i + dd], inv);
        quo[i] = q;
        for (std::size_t j = 0; j <= dd; ++j) rem[i + j] = k_->sub(rem[i + j], k_->mul(q, d.c_[j]));
    }
    rem.resize(dd);
    return {ResPoly(k_, std::move(quo)), ResPoly(k_, std::move(rem))};
}

ResPoly ResPoly::derivative() const {
    if (c_.size() <= 1) return ResPoly(k_);
    std::vector<ResidueElem> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = k_->mul(c_[i], k_->from_int(static_cast<std::int64_t>(i)));
    return {k_, std::move(r)};
}

ResPoly ResPoly::monic() const { return is_zero() ? *this : scaled(k_->inv(lead())); }

ResidueElem ResPoly::eval(ResidueElem x) const {
    ResidueElem acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = k_->add(k_->mul(acc, x), c_[i]);
    return acc;
}

std::string ResPoly::to_string(char var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].code == 0) continue;
        if (!first) os << " + ";
        first = false;
        const bool unit = c_[i].code == 1;
        const std::string s = k_->to_string(c_[i]);
        if (i == 0 || !unit) os << (k_->degree() > 1 && s.find(' ') != std::string::npos ? "(" + s + ")" : s);
        if (i > 0) {
            if (!unit) os << '*';
            os << var;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

ResPoly gcd(ResPoly a, ResPoly b) {
    while (!b.is_zero()) {
        ResPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// ---------------------------------------------------------------- operations

ContentNormalized normalize_content(const KPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "content of the zero polynomial");
    const long m = f.min_valuation();
    return {f.scaled(KElem::uniformizer_power(f.field(), -m)), m};
}

ResPoly reduce_poly(const KPoly& f, ResidueFieldPtr k) {
    if (!k) k = residue_field(f.field().p, 1);
    std::vector<ResidueElem> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) {
        if (x.val() < 0) throw Error(ErrorKind::NegativeValuation, "reducing a non-integral polynomial");
        c.push_back(x.residue(*k));
    }
    return {k, std::move(c)};
}

namespace {

ResPoly powmod(ResPoly base, std::uint64_t e, const ResPoly& m) {
    const auto& k = m.field();
    ResPoly r(k, {k->one()});
    base = base.divmod(m).second;
    while (e > 0) {
        if (e & 1U) r = (r * base).divmod(m).second;
        base = (base * base).divmod(m).second;
        e >>= 1U;
    }
    return r;
}

// Distinct roots of a squarefree product of linear factors over F_p, p odd.
void split_linear(const ResPoly& g, std::mt19937_64& rng, std::vector<ResidueElem>& out) {
    const auto& k = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(k->neg(k->div(g.coeff(0), g.coeff(1))));
        return;
    }
    std::uniform_int_distribution<std::uint64_t> dist(0, k->size() - 1);
    for (;;) {
        const ResPoly shift(k, {ResidueElem{dist(rng)}, k->one()});
        ResPoly h = powmod(shift, (k->size() - 1) / 2, g) - ResPoly(k, {k->one()});
        ResPoly d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, rng, out);
            split_linear(g.divmod(d).first, rng, out);
            return;
        }
    }
}

std::vector<ResidueElem> distinct_roots(const ResPoly& f) {
    const auto& k = f.field();
    std::vector<ResidueElem> roots;
    if (k->size() <= (1U << 16) || k->characteristic() == 2) {
        for (std::uint64_t c = 0; c < k->size(); ++c)
            if (f.eval(ResidueElem{c}).code == 0) roots.push_back(ResidueElem{c});
        return roots;
    }
    // Large prime field: gcd with z^q - z, then equal-degree splitting.
    const ResPoly z(k, {k->zero(), k->one()});
    const ResPoly m = f.monic();
    ResPoly g = gcd(m, powmod(z, k->size(), m) - z);
    std::mt19937_64 rng(0x5eed);
    split_linear(g, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

std::vector<ResidueRoot> residue_roots(const ResPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "roots of the zero polynomial");
    std::vector<ResidueRoot> out;
    const auto& k = f.field();
    for (ResidueElem r : distinct_roots(f)) {
        const ResPoly lin(k, {k->neg(r), k->one()});
        ResPoly cur = f;
        int mult = 0;
        for (;;) {
            auto [q, rem] = cur.divmod(lin);
            if (!rem.is_zero()) break;
            cur = std::move(q);
            ++mult;
        }
        out.push_back({r, mult});
    }
    return out;
}

std::optional<ResidueElem> cubic_triple_root(const ResPoly& f) {
    if (f.degree() != 3) return std::nullopt;
    const auto& k = f.field();
    const ResidueElem u = f.lead();
    ResidueElem alpha;
    if (k->characteristic() != 3) {
        alpha = k->neg(k->div(f.coeff(2), k->mul(k->from_int(3), u)));
    } else {
        alpha = k->pth_root(k->neg(k->div(f.coeff(0), u)));
    }
    const ResPoly lin(k, {k->neg(alpha), k->one()});
    if (lin * lin * lin * ResPoly(k, {u}) == f) return alpha;
    return std::nullopt;
}

namespace {

// Coefficientwise d/dt on an F_p(t)[z] polynomial.
KPoly t_derivative(const KPoly& f) {
    std::vector<KElem> c;
    for (const auto& x : f.coeffs()) c.push_back(KElem::from_ratfunc(f.field(), x.ratfunc()->derivative()));
    return {f.field(), std::move(c)};
}

// Requires f in F_p(t^p)[z^p]; returns g with g(z)^p = f(z).
KPoly frobenius_root(const KPoly& f) {
    const std::uint32_t p = f.field().p;
    std::vector<KElem> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) {
        const KElem c_i = f.coeff(i);
        const RatFunc* r = c_i.ratfunc();
        if (!r->is_pth_power()) throw Error(ErrorKind::InternalInconsistency, "coefficient is not a p-th power");
        c.push_back(KElem::from_ratfunc(f.field(), r->pth_root()));
    }
    for (int i = 0; i <= f.degree(); ++i)
        if (i % static_cast<int>(p) != 0 && !f.coeff(i).is_zero())
            throw Error(ErrorKind::InternalInconsistency, "polynomial is not in K[z^p]");
    return {f.field(), std::move(c)};
}

KPoly separable_radical(const KPoly& f) {
    const FieldSpec& fs = f.field();
    if (f.degree() <= 0) return KPoly::constant(KElem::one(fs));
    const KPoly g = gcd(f, f.derivative());
    KPoly w = f.exact_div(g).monic();
    if (fs.kind == FieldKind::PadicRationals) return w;
    KPoly h = g;
    for (;;) {
        KPoly d = gcd(h, w);
        if (d.degree() <= 0) break;
        h = h.exact_div(d);
    }
    if (h.degree() <= 0) return w;
    // h lies in K[z^p]; keep its part with coefficients in F_p(t^p), whose
    // Frobenius root carries every K-rational root of h.
    KPoly core = h.monic();
    for (;;) {
        KPoly dt = t_derivative(core);
        if (dt.is_zero()) break;
        core = gcd(core, dt);
    }
    if (core.degree() <= 0) return w;
    const KPoly s = separable_radical(frobenius_root(core));
    return (w * s).exact_div(gcd(w, s)).monic();
}

} // namespace

KPoly squarefree_part(const KPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree part of the zero polynomial");
    if (!f.is_exact()) throw Error(ErrorKind::ApproximateInput, "squarefree part needs exact coefficients");
    if (f.degree() == 0) return KPoly::constant(KElem::one(f.field()));
    return separable_radical(f);
}

} // namespace nadyn
