#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "vsp/element.hpp"
#include "vsp/field.hpp"
#include "vsp/linalg.hpp"

namespace vsp::testing {

inline const FieldCtx Q = FieldCtx::rationals();

inline Vec vec(const FieldCtx& f, std::initializer_list<long long> xs) {
    Vec v;
    for (auto x : xs) v.push_back(f.from_int(x));
    return v;
}

inline Vec qv(std::initializer_list<long long> xs) { return vec(Q, xs); }

inline ModelElement ea(std::uint64_t axis, std::uint64_t coord, const FieldCtx& f = Q) {
    return e_axis(f, axis, coord);
}

inline ModelElement ef(std::uint64_t coord, const FieldCtx& f = Q) { return e_free(f, coord); }

inline Scalar q(long long n, long long d = 1) { return Q.from_fraction(n, d); }

/// Small random rational with numerator and denominator bounded by `bound`.
inline Scalar random_scalar(std::mt19937& rng, const FieldCtx& f, int bound, bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    while (true) {
        Scalar s = f.is_finite() ? f.from_int(num(rng)) : f.from_fraction(num(rng), den(rng));
        if (allow_zero || !s.is_zero()) return s;
    }
}

/// Random element of F(M) supported on axes [0, axes) and coordinates [0, coords).
inline ModelElement random_F_element(std::mt19937& rng, const FieldCtx& f, int axes, int coords, int bound,
                                     double density = 0.5) {
    std::bernoulli_distribution use(density);
    ModelElement e;
    for (int a = 0; a < axes; ++a) {
        for (int c = 0; c < coords; ++c) {
            if (use(rng)) e += random_scalar(rng, f, bound, false) * e_axis(f, a, c);
        }
    }
    return e;
}

}  // namespace vsp::testing
