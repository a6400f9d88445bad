#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace vsp {

class Scalar;

/// The ambient field K: either the rationals or a prime field GF(p).
class FieldCtx {
public:
    FieldCtx() = default;

    static FieldCtx rationals() { return FieldCtx{}; }
    static FieldCtx prime(std::uint64_t p);
    /// Accepts "q" or "zp:<p>".
    static FieldCtx parse(std::string_view spec);

    bool is_rational() const noexcept { return modulus_ == 0; }
    bool is_finite() const noexcept { return modulus_ != 0; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long value) const;
    Scalar from_fraction(long long num, long long den) const;
    /// Parses `k` or `p/q` (the latter only over the rationals).
    Scalar parse_scalar(std::string_view text) const;

    /// All field elements; finite fields only.
    std::vector<Scalar> elements() const;
    /// All nonzero field elements in increasing residue order; finite fields only.
    std::vector<Scalar> nonzero_elements() const;

    std::string name() const;

    friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

private:
    friend class Scalar;
    explicit FieldCtx(std::uint64_t p) : modulus_(p) {}
    std::uint64_t modulus_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field element. Rationals are kept as reduced GMP fractions and
/// residues in [0, p), so structural equality is value equality.
class Scalar {
public:
    Scalar() = default;

    FieldCtx field() const;
    bool is_zero() const;
    bool is_one() const;

    const mpq_class& rational() const { return q_; }
    std::uint64_t residue() const { return r_; }

    Scalar operator-() const;
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    /// Total order: numeric over the rationals, by residue over GF(p).
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    std::string to_string() const;

private:
    friend class FieldCtx;
    std::uint64_t p_ = 0;
    std::uint64_t r_ = 0;
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace vsp
