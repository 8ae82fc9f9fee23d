#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace pcgroup {

/// Slope data of a Stein-Thompson group: Lambda = <n_1, ..., n_p> in Q+, A = Z[Lambda].
struct SlopeSpec {
    std::vector<long> generators;

    SlopeSpec() = default;
    explicit SlopeSpec(std::vector<long> gens) : generators(std::move(gens)) {
        std::sort(generators.begin(), generators.end());
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i] < 2) throw DomainError("slope generator " + std::to_string(generators[i]) + " < 2");
            if (i > 0 && generators[i] == generators[i - 1])
                throw DomainError("repeated slope generator " + std::to_string(generators[i]));
        }
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + std::to_string(generators[i]);
        return s;
    }
    friend bool operator==(const SlopeSpec&, const SlopeSpec&) = default;
};

namespace detail {

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline long valuation(long n, long p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long valuation(mpz_class n, long p) {
    long v = 0;
    if (n == 0) return 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        n /= p;
        ++v;
    }
    return v;
}

/// Strips every prime in `ps` from |n| and reports whether anything remains.
inline bool smooth_over(mpz_class n, const std::vector<long>& ps) {
    n = abs(n);
    for (long p : ps)
        while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) n /= p;
    return n == 1;
}

/// Solves sum_i e_i v_i = target over Z where v_i are the generator valuation
/// vectors (rows = primes). Gaussian elimination over Q followed by an
/// integrality check; the generators are multiplicatively independent so the
/// solution, when it exists, is unique.
inline std::optional<std::vector<mpq_class>> solve_exponents(const std::vector<std::vector<long>>& cols,
                                                             const std::vector<long>& target) {
    std::size_t rows = target.size(), n = cols.size();
    std::vector<std::vector<mpq_class>> M(rows, std::vector<mpq_class>(n + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < n; ++c) M[r][c] = cols[c][r];
        M[r][n] = target[r];
    }
    std::vector<long> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        for (std::size_t k = 0; k < rows; ++k) {
            if (k == r || M[k][c] == 0) continue;
            mpq_class f = M[k][c] / M[r][c];
            for (std::size_t j = c; j <= n; ++j) M[k][j] -= f * M[r][j];
        }
        pivot_col.push_back(static_cast<long>(c));
        ++r;
    }
    for (std::size_t k = r; k < rows; ++k)
        if (M[k][n] != 0) return std::nullopt;
    std::vector<mpq_class> e(n, 0);
    for (std::size_t k = 0; k < r; ++k) e[pivot_col[k]] = M[k][n] / M[k][pivot_col[k]];
    return e;
}

}  // namespace detail

/// Exponent vector e with x = prod n_i^{e_i}, if x lies in Lambda.
inline std::optional<std::vector<long>> lambda_exponents(const mpq_class& x, const SlopeSpec& s) {
    if (x <= 0) throw DomainError("Lambda membership needs a positive rational");
    std::vector<long> primes;
    for (long g : s.generators)
        for (long p : detail::prime_factors(g)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    mpz_class num = x.get_num(), den = x.get_den();
    if (!detail::smooth_over(num, primes) || !detail::smooth_over(den, primes)) return std::nullopt;
    std::vector<long> target;
    for (long p : primes) target.push_back(detail::valuation(num, p) - detail::valuation(den, p));
    std::vector<std::vector<long>> cols;
    for (long g : s.generators) {
        std::vector<long> v;
        for (long p : primes) v.push_back(detail::valuation(g, p));
        cols.push_back(v);
    }
    auto sol = detail::solve_exponents(cols, target);
    if (!sol) return std::nullopt;
    std::vector<long> e;
    for (auto& q : *sol) {
        if (q.get_den() != 1) return std::nullopt;
        e.push_back(q.get_num().get_si());
    }
    return e;
}

inline bool lambda_membership(const mpq_class& x, const SlopeSpec& s) { return lambda_exponents(x, s).has_value(); }

inline bool lambda_membership(const Scalar& x, const SlopeSpec& s) {
    if (!x.is_rational()) throw DomainError("Lambda membership needs a rational scalar");
    if (x.sign() <= 0) return false;
    return lambda_membership(x.a(), s);
}

/// x in Z[1/(n_1 ... n_p)]: the reduced denominator has only primes of the generators.
inline bool A_membership(const Scalar& x, const SlopeSpec& s) {
    if (!x.is_rational()) throw DomainError("A membership needs a rational scalar");
    std::vector<long> primes;
    for (long g : s.generators)
        for (long p : detail::prime_factors(g)) primes.push_back(p);
    return detail::smooth_over(x.a().get_den(), primes);
}

struct GcdCondition {
    long d;
    bool holds;
};

/// Condition (i): (1 - Lambda) A = A, equivalent to gcd(n_i - 1) = 1.
inline GcdCondition gcd_condition(const SlopeSpec& s) {
    long d = 0;
    for (long g : s.generators) d = std::gcd(d, g - 1);
    return {d, d == 1};
}

/// Condition (ii): some n/q in Lambda with n/q > 1 and n^2 - q^2 in Lambda.
/// Candidates n/q = prod n_i^{e_i} with |e_i| <= bound, scanned by increasing
/// L1 norm of e and then by the value n/q, so the result is deterministic.
inline std::optional<std::pair<mpz_class, mpz_class>> condition_ii_search(const SlopeSpec& s, long bound = 8) {
    if (bound < 1) throw DomainError("condition (ii) bound must be >= 1");
    std::size_t p = s.generators.size();
    if (p == 0) return std::nullopt;
    std::vector<std::vector<long>> vecs;
    std::vector<long> e(p, -bound);
    while (true) {
        vecs.push_back(e);
        std::size_t i = 0;
        while (i < p && e[i] == bound) e[i++] = -bound;
        if (i == p) break;
        ++e[i];
    }
    auto l1 = [](const std::vector<long>& v) {
        long t = 0;
        for (long x : v) t += x < 0 ? -x : x;
        return t;
    };
    std::vector<std::pair<long, mpq_class>> cands;
    for (const auto& v : vecs) {
        mpq_class r = 1;
        for (std::size_t i = 0; i < p; ++i) {
            mpz_class g;
            mpz_ui_pow_ui(g.get_mpz_t(), static_cast<unsigned long>(s.generators[i]),
                          static_cast<unsigned long>(v[i] < 0 ? -v[i] : v[i]));
            if (v[i] >= 0) r *= g;
            else r /= g;
        }
        r.canonicalize();
        if (r > 1) cands.emplace_back(l1(v), r);
    }
    std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    for (const auto& [norm, r] : cands) {
        // n/q in lowest terms; the condition is stated for that representative
        mpz_class n = r.get_num(), q = r.get_den();
        mpz_class diff = n * n - q * q;
        if (lambda_membership(mpq_class(diff), s)) return std::make_pair(n, q);
    }
    return std::nullopt;
}

/// Reports (n_1, k) when some generator equals n_1^{2k} - 1, n_1 the smallest generator.
inline std::optional<std::pair<long, long>> stein_pattern_check(const SlopeSpec& s) {
    if (s.generators.empty()) return std::nullopt;
    long n1 = s.generators.front();
    for (long g : s.generators) {
        mpz_class pw = mpz_class(n1) * n1;  // n1^{2k}
        for (long k = 1; pw - 1 <= g; ++k, pw *= mpz_class(n1) * n1)
            if (pw - 1 == g) return std::make_pair(n1, k);
    }
    return std::nullopt;
}

}  // namespace pcgroup
