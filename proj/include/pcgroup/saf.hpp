#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "errors.hpp"
#include "pcmap.hpp"

namespace pcgroup {

/// Element of K (x)_Q K in the basis e_i (x) e_j, e = (1) or (1, sqrt d);
/// coefficient of e_i (x) e_j stored at i + j * dim.
struct SAFValue {
    long d = 0;
    std::vector<mpq_class> coeffs;

    std::size_t dim() const { return d == 0 ? 1 : 2; }
    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }
    std::vector<std::string> basis() const {
        if (d == 0) return {"1(x)1"};
        std::string s = "sqrt(" + std::to_string(d) + ")";
        return {"1(x)1", s + "(x)1", "1(x)" + s, s + "(x)" + s};
    }
    /// One `basis : coefficient` line per coordinate.
    std::string str() const {
        std::string out;
        auto b = basis();
        for (std::size_t i = 0; i < coeffs.size(); ++i) out += b[i] + " : " + coeffs[i].get_str() + "\n";
        return out;
    }
    friend bool operator==(const SAFValue&, const SAFValue&) = default;
};

inline SAFValue saf_zero(const FieldSpec& F) {
    SAFValue v{F.d, {}};
    v.coeffs.assign(v.dim() * v.dim(), mpq_class(0));
    return v;
}

inline SAFValue operator+(SAFValue x, const SAFValue& y) {
    if (x.d != y.d) throw DomainError("SAF values over different fields");
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) x.coeffs[i] += y.coeffs[i];
    return x;
}

inline SAFValue operator-(SAFValue x) {
    for (auto& c : x.coeffs) c = -c;
    return x;
}

/// alpha (x) lambda expanded over the basis.
inline SAFValue tensor(const Scalar& alpha, const Scalar& lambda, const FieldSpec& F) {
    SAFValue v = saf_zero(F);
    const mpq_class xs[2] = {alpha.a(), alpha.b()};
    const mpq_class ys[2] = {lambda.a(), lambda.b()};
    std::size_t n = v.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v.coeffs[i + j * n] = xs[i] * ys[j];
    return v;
}

/// sum over pieces of translation (x) length.
inline SAFValue saf_compute(const PwMap& f) {
    if (!is_member(f, GroupId::iet())) throw DomainError("saf: input is not an IET");
    SAFValue v = saf_zero(f.field());
    for (const auto& p : f.pieces()) v = v + tensor(p.intercept, p.hi - p.lo, f.field());
    return v;
}

inline bool saf_is_zero(const PwMap& f) { return saf_compute(f).is_zero(); }

}  // namespace pcgroup
