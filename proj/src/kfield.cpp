#include "nadyn/kfield.hpp"

#include <algorithm>

#include "nadyn/error.hpp"

namespace nadyn {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ApproximateInput: return "ApproximateInput";
    case ErrorKind::HenselHypothesisFailed: return "HenselHypothesisFailed";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::UncertifiedValuation: return "UncertifiedValuation";
    case ErrorKind::InvalidNormalForm: return "InvalidNormalForm";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ExceptionalCase: return "ExceptionalCase";
    case ErrorKind::NoDecomposition: return "NoDecomposition";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

FieldSpec FieldSpec::padic(std::uint32_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    return {FieldKind::PadicRationals, p};
}

FieldSpec FieldSpec::laurent(std::uint32_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    return {FieldKind::LaurentSeries, p};
}

FieldSpec FieldSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorKind::ParseError, "field spec '" + text + "' must look like Qp:3 or Fpt:5");
    const std::string kind = text.substr(0, colon);
    const std::string num = text.substr(colon + 1);
    if (num.empty() || num.size() > 9 || !std::all_of(num.begin(), num.end(), ::isdigit))
        throw Error(ErrorKind::ParseError, "field spec '" + text + "' has a malformed prime");
    const auto p = static_cast<std::uint32_t>(std::stoul(num));
    if (kind == "Qp") return padic(p);
    if (kind == "Fpt") return laurent(p);
    throw Error(ErrorKind::ParseError, "unknown field kind '" + kind + "' (expected Qp or Fpt)");
}

std::string FieldSpec::to_string() const {
    return (kind == FieldKind::PadicRationals ? "Qp:" : "Fpt:") + std::to_string(p);
}

long padic_val(const mpz_class& n, std::uint32_t p) {
    if (n == 0) return kInfinity;
    mpz_class rest;
    const mpz_class prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

namespace {

mpz_class strip_p(const mpz_class& n, std::uint32_t p) {
    mpz_class rest;
    const mpz_class prime(p);
    mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
    return rest;
}

mpz_class pow_p(std::uint32_t p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
    return r;
}

RatFunc ratfunc_monomial(std::uint32_t p, std::uint64_t c, long k) {
    if (k >= 0) return {FpPoly::monomial(p, c, static_cast<std::size_t>(k)), FpPoly::constant(p, 1)};
    return {FpPoly::constant(p, static_cast<std::int64_t>(c)), FpPoly::monomial(p, 1, static_cast<std::size_t>(-k))};
}

/// Unit part of x = t^v * a / b as a power series modulo t^n.
FpPoly unit_series(const RatFunc& r, std::size_t n) {
    const FpPoly a = r.num().shifted(-r.num().order());
    const FpPoly b = r.den().shifted(-r.den().order());
    return (a * b.series_inverse(n)).truncated(n);
}

/// Unit part of q = p^v * a / b modulo p^n, as an integer in [0, p^n).
mpz_class unit_residue(const mpq_class& q, std::uint32_t p, long n) {
    const mpz_class a = strip_p(q.get_num(), p);
    const mpz_class b = strip_p(q.get_den(), p);
    const mpz_class m = pow_p(p, n);
    mpz_class binv;
    mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
    mpz_class u = a * binv;
    mpz_mod(u.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    return u;
}

} // namespace

KElem::KElem(FieldSpec f, Kernel k, long prec) : field_(f), kernel_(std::move(k)), prec_(prec) {
    if (auto* q = std::get_if<mpq_class>(&kernel_)) q->canonicalize();
    kernel_val_ = kernel_valuation(field_, kernel_);
    if (prec_ != kInfinity) {
        kernel_ = reduce_kernel(field_, kernel_, kernel_val_, prec_);
        kernel_val_ = kernel_valuation(field_, kernel_);
    }
}

long KElem::kernel_valuation(const FieldSpec& f, const Kernel& k) {
    if (const auto* q = std::get_if<mpq_class>(&k)) {
        if (*q == 0) return kInfinity;
        return padic_val(q->get_num(), f.p) - padic_val(q->get_den(), f.p);
    }
    const auto& r = std::get<RatFunc>(k);
    if (r.is_zero()) return kInfinity;
    return r.valuation();
}

KElem::Kernel KElem::reduce_kernel(const FieldSpec& f, const Kernel& k, long kval, long n) {
    if (kval >= n) {
        if (f.kind == FieldKind::PadicRationals) return mpq_class(0);
        return RatFunc(f.p);
    }
    const long len = n - kval;
    if (const auto* q = std::get_if<mpq_class>(&k)) {
        mpq_class r(unit_residue(*q, f.p, len));
        if (kval >= 0) r *= pow_p(f.p, kval);
        else r /= pow_p(f.p, -kval);
        r.canonicalize();
        return r;
    }
    const FpPoly s = unit_series(std::get<RatFunc>(k), static_cast<std::size_t>(len));
    if (kval >= 0) return RatFunc(s.shifted(kval), FpPoly::constant(f.p, 1));
    return RatFunc(s, FpPoly::monomial(f.p, 1, static_cast<std::size_t>(-kval)));
}

KElem KElem::zero(const FieldSpec& f) {
    if (f.kind == FieldKind::PadicRationals) return {f, mpq_class(0), kInfinity};
    return {f, RatFunc(f.p), kInfinity};
}

KElem KElem::from_int(const FieldSpec& f, long n) { return from_mpz(f, mpz_class(n)); }

KElem KElem::from_mpz(const FieldSpec& f, const mpz_class& n) {
    if (f.kind == FieldKind::PadicRationals) return {f, mpq_class(n), kInfinity};
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), f.p);
    return {f, RatFunc(FpPoly::constant(f.p, static_cast<std::int64_t>(r.get_ui())), FpPoly::constant(f.p, 1)),
            kInfinity};
}

KElem KElem::from_rational(const FieldSpec& f, const mpq_class& q) {
    if (f.kind == FieldKind::PadicRationals) return {f, q, kInfinity};
    mpq_class c = q;
    c.canonicalize();
    mpz_class d;
    mpz_fdiv_r_ui(d.get_mpz_t(), c.get_den().get_mpz_t(), f.p);
    if (d == 0)
        throw Error(ErrorKind::InvalidArgument, "denominator " + c.get_den().get_str() + " vanishes in F_" +
                                                    std::to_string(f.p));
    return from_mpz(f, c.get_num()) / from_mpz(f, c.get_den());
}

KElem KElem::from_ratfunc(const FieldSpec& f, RatFunc r) {
    if (f.kind != FieldKind::LaurentSeries) throw Error(ErrorKind::InvalidArgument, "rational function kernel needs F_p((t))");
    return {f, std::move(r), kInfinity};
}

KElem KElem::uniformizer_power(const FieldSpec& f, long k) {
    if (f.kind == FieldKind::PadicRationals) {
        mpq_class q(1);
        if (k >= 0) q = pow_p(f.p, k);
        else q = mpq_class(mpz_class(1), pow_p(f.p, -k));
        return {f, q, kInfinity};
    }
    return {f, ratfunc_monomial(f.p, 1, k), kInfinity};
}

std::uint64_t KElem::residue() const {
    if (prec_ <= 0) throw Error(ErrorKind::UncertifiedValuation, "residue of an element known below precision 1");
    if (kernel_val_ < 0) throw Error(ErrorKind::NegativeValuation, "residue of " + kernel_string());
    if (kernel_val_ > 0) return 0;
    if (const auto* q = rational()) {
        mpz_class n, d;
        mpz_fdiv_r_ui(n.get_mpz_t(), q->get_num().get_mpz_t(), field_.p);
        mpz_fdiv_r_ui(d.get_mpz_t(), q->get_den().get_mpz_t(), field_.p);
        return n.get_ui() * mod_inv(d.get_ui(), field_.p) % field_.p;
    }
    const auto* r = ratfunc();
    return r->num().coeff(0) * mod_inv(r->den().coeff(0), field_.p) % field_.p;
}

ResidueElem KElem::residue(const ResidueField& k) const {
    if (k.characteristic() != field_.p) throw Error(ErrorKind::InvalidArgument, "residue field characteristic mismatch");
    return k.from_int(static_cast<std::int64_t>(residue()));
}

Expansion KElem::expand(long n) const {
    Expansion e;
    e.precision = std::min(n, prec_);
    e.start = e.precision;
    if (kernel_val_ >= e.precision) return e;
    e.start = kernel_val_;
    const long len = e.precision - kernel_val_;
    if (const auto* q = rational()) {
        mpz_class u = unit_residue(*q, field_.p, len);
        for (long i = 0; i < len; ++i) {
            mpz_class digit;
            mpz_fdiv_qr_ui(u.get_mpz_t(), digit.get_mpz_t(), u.get_mpz_t(), field_.p);
            e.digits.push_back(digit.get_ui());
        }
    } else {
        const FpPoly s = unit_series(*ratfunc(), static_cast<std::size_t>(len));
        for (long i = 0; i < len; ++i) e.digits.push_back(s.coeff(static_cast<std::size_t>(i)));
    }
    return e;
}

KElem KElem::as_exact() const { return {field_, kernel_, kInfinity}; }

KElem KElem::with_precision(long n) const { return {field_, kernel_, std::min(n, prec_)}; }

void KElem::require_same_field(const KElem& o) const {
    if (!(field_ == o.field_))
        throw Error(ErrorKind::InvalidArgument, "mixing elements of " + field_.to_string() + " and " + o.field_.to_string());
}

KElem KElem::operator+(const KElem& o) const {
    require_same_field(o);
    Kernel k = std::visit(
        [&](const auto& a) -> Kernel {
            using T = std::decay_t<decltype(a)>;
            return T(a + std::get<T>(o.kernel_));
        },
        kernel_);
    return {field_, std::move(k), std::min(prec_, o.prec_)};
}

KElem KElem::operator-() const {
    Kernel k = std::visit([](const auto& a) -> Kernel { return std::decay_t<decltype(a)>(-a); }, kernel_);
    return {field_, std::move(k), prec_};
}

KElem KElem::operator-(const KElem& o) const { return *this + (-o); }

KElem KElem::operator*(const KElem& o) const {
    require_same_field(o);
    Kernel k = std::visit(
        [&](const auto& a) -> Kernel {
            using T = std::decay_t<decltype(a)>;
            return T(a * std::get<T>(o.kernel_));
        },
        kernel_);
    // (a + da)(b + db) = ab + a db + b da + da db
    const long prec = std::min({val_add(val(), o.prec_), val_add(o.val(), prec_), val_add(prec_, o.prec_)});
    return {field_, std::move(k), prec};
}

KElem KElem::operator/(const KElem& o) const {
    require_same_field(o);
    if (o.is_zero()) {
        if (o.is_exact()) throw Error(ErrorKind::DivisionByZero, "division by zero in " + field_.to_string());
        throw Error(ErrorKind::UncertifiedValuation, "division by an element indistinguishable from zero");
    }
    Kernel inv_k = std::visit(
        [&](const auto& b) -> Kernel {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, mpq_class>) return mpq_class(1 / b);
            else return RatFunc(b.den(), b.num());
        },
        o.kernel_);
    const long inv_prec = o.is_exact() ? kInfinity : o.prec_ - 2 * o.kernel_val_;
    return *this * KElem(field_, std::move(inv_k), inv_prec);
}

KElem KElem::pow(long e) const {
    if (e < 0) return one(field_) / pow(-e);
    KElem result = one(field_), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

bool KElem::operator==(const KElem& o) const {
    return field_ == o.field_ && prec_ == o.prec_ && kernel_ == o.kernel_;
}

std::string KElem::kernel_string() const {
    if (const auto* q = rational()) return q->get_str();
    return ratfunc()->to_string();
}

} // namespace nadyn
