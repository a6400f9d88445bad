#include "vsp/field.hpp"

#include <charconv>
#include <ostream>

#include "vsp/error.hpp"

namespace vsp {

namespace {

void check_same(const Scalar& a, const Scalar& b) {
    if (!(a.field() == b.field())) {
        fail(ErrorKind::FieldMismatch,
             "scalars from different fields: " + a.field().name() + " vs " + b.field().name());
    }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldCtx FieldCtx::prime(std::uint64_t p) {
    if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (p >= (1ULL << 62)) fail(ErrorKind::NotPrime, "modulus too large");
    return FieldCtx{p};
}

FieldCtx FieldCtx::parse(std::string_view spec) {
    if (spec == "q" || spec == "Q") return rationals();
    if (spec.substr(0, 3) == "zp:") {
        auto digits = spec.substr(3);
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
            fail(ErrorKind::Usage, "bad field specification '" + std::string(spec) + "'");
        }
        return prime(p);
    }
    fail(ErrorKind::Usage, "bad field specification '" + std::string(spec) + "'");
}

Scalar FieldCtx::zero() const { return from_int(0); }
Scalar FieldCtx::one() const { return from_int(1); }

Scalar FieldCtx::from_int(long long value) const {
    Scalar s;
    s.p_ = modulus_;
    if (modulus_ == 0) {
        s.q_ = mpq_class(mpz_class(static_cast<long>(value)));
    } else {
        long long m = static_cast<long long>(modulus_);
        long long r = value % m;
        if (r < 0) r += m;
        s.r_ = static_cast<std::uint64_t>(r);
    }
    return s;
}

Scalar FieldCtx::from_fraction(long long num, long long den) const {
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
    return from_int(num) / from_int(den);
}

Scalar FieldCtx::parse_scalar(std::string_view text) const {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
        fail(ErrorKind::MalformedScalar, "malformed scalar '" + std::string(text) + "'");
    }
    Scalar s;
    s.p_ = modulus_;
    if (modulus_ == 0) {
        mpz_class n(std::string(num), 10);
        mpz_class d(1);
        if (!den.empty()) d = mpz_class(std::string(den), 10);
        if (d == 0) fail(ErrorKind::MalformedScalar, "zero denominator in '" + std::string(text) + "'");
        s.q_ = mpq_class(n, d);
        s.q_.canonicalize();
        if (negative) s.q_ = -s.q_;
    } else {
        if (slash != std::string_view::npos) {
            fail(ErrorKind::MalformedScalar,
                 "fractions are not scalars over " + name() + ": '" + std::string(text) + "'");
        }
        mpz_class n(std::string(num), 10);
        mpz_class r = n % mpz_class(static_cast<unsigned long>(modulus_));
        s.r_ = r.get_ui();
        if (negative && s.r_ != 0) s.r_ = modulus_ - s.r_;
    }
    return s;
}

std::vector<Scalar> FieldCtx::elements() const {
    if (!is_finite()) fail(ErrorKind::FieldNotFinite, "cannot enumerate the rationals");
    std::vector<Scalar> out;
    out.reserve(modulus_);
    for (std::uint64_t i = 0; i < modulus_; ++i) out.push_back(from_int(static_cast<long long>(i)));
    return out;
}

std::vector<Scalar> FieldCtx::nonzero_elements() const {
    auto all = elements();
    all.erase(all.begin());
    return all;
}

std::string FieldCtx::name() const {
    return modulus_ == 0 ? std::string("q") : "zp:" + std::to_string(modulus_);
}

FieldCtx Scalar::field() const { return FieldCtx{p_}; }

bool Scalar::is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (p_ == 0) {
        s.q_ = -q_;
    } else if (r_ != 0) {
        s.r_ = p_ - r_;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    Scalar s = *this;
    if (p_ == 0) {
        s.q_ = 1 / q_;
    } else {
        s.r_ = pow_mod(r_, p_ - 2, p_);
    }
    return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar s = a;
    if (a.p_ == 0) {
        s.q_ = a.q_ + b.q_;
    } else {
        s.r_ = (a.r_ + b.r_) % a.p_;
    }
    return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    Scalar s = a;
    if (a.p_ == 0) {
        s.q_ = a.q_ * b.q_;
    } else {
        s.r_ = mul_mod(a.r_, b.r_, a.p_);
    }
    return s;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) return false;
    return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) return a.p_ <=> b.p_;
    if (a.p_ != 0) return a.r_ <=> b.r_;
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
    if (p_ != 0) return std::to_string(r_);
    return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace vsp
