#pragma once

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "pcmap.hpp"

namespace pcgroup {

/// Ordered factors f_1, ..., f_n with product f_1 o f_2 o ... o f_n.
struct Factorization {
    std::vector<PwMap> factors;
    std::vector<std::string> kinds;
    FieldSpec field{};

    void push(PwMap f, std::string kind) {
        if (f.is_identity()) return;
        factors.push_back(std::move(f));
        kinds.push_back(std::move(kind));
    }
    void append(const Factorization& o) {
        for (std::size_t i = 0; i < o.factors.size(); ++i) push(o.factors[i], o.kinds[i]);
    }
    std::size_t size() const { return factors.size(); }
    PwMap product() const { return pcgroup::product(factors, field); }

    /// Factorization of the inverse element.
    Factorization inverted() const {
        Factorization r{{}, {}, field};
        for (std::size_t i = factors.size(); i-- > 0;) r.push(factors[i].inverse(), kinds[i]);
        return r;
    }
};

/// Product of symmetries with pairwise disjoint supports.
struct DistinguishedInvolution {
    std::vector<Interval> symmetries;
    PwMap map;
};

inline void require_member(const PwMap& f, const GroupId& G, const char* op) {
    if (!is_member(f, G)) throw DomainError(std::string(op) + ": input is not in " + G.name());
}

// ---------------------------------------------------------------------------
// IET -> restricted rotations

/// Restricted rotation on [c,e) moving L = [d,e) to the front; d is its interior discontinuity.
inline PwMap rotation_KL(const Scalar& c, const Scalar& d, const Scalar& e, FieldSpec F) {
    return restricted_rotation(e - d, {c, e}, F);
}

/// Writes an IET as a product of at most m-1 restricted rotations, following
/// the left-to-right normalisation R_k ... R_1 g = Id.
inline Factorization iet_to_restricted_rotations(const PwMap& g) {
    require_member(g, GroupId::iet(), "iet_to_restricted_rotations");
    Factorization out{{}, {}, g.field()};
    PwMap h = g;
    while (!h.is_identity()) {
        const Piece* P = nullptr;
        for (const auto& p : h.pieces())
            if (!p.is_identity()) {
                P = &p;
                break;
            }
        Interval L = P->image();
        // h is the identity on [0, P->lo), so L starts to the right of P->lo
        PwMap R = rotation_KL(P->lo, L.lo, L.hi, g.field());
        out.push(R.inverse(), "restricted-rotation");
        h = compose(R, h);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Flip and affine splits

/// f = rest o iota where iota flips exactly the orientation-reversing pieces of f.
inline std::pair<DistinguishedInvolution, PwMap> flip_split(const PwMap& f) {
    DistinguishedInvolution inv{{}, PwMap::identity(f.field())};
    std::vector<Piece> ps;
    for (const auto& p : f.pieces()) {
        if (p.increasing()) {
            ps.push_back({p.lo, p.hi, Scalar(1), Scalar(0)});
        } else {
            inv.symmetries.push_back(p.domain());
            ps.push_back({p.lo, p.hi, Scalar(-1), p.lo + p.hi});
        }
    }
    inv.map = PwMap::from_sorted(f.field(), std::move(ps));
    PwMap rest = compose(f, inv.map);
    return {std::move(inv), std::move(rest)};
}

/// FIET f = iet o involution.
inline std::pair<DistinguishedInvolution, PwMap> fiet_split(const PwMap& f) {
    require_member(f, GroupId::fiet(), "fiet_split");
    return flip_split(f);
}

/// AIET f = E^{-1} o h with E an IET and h in PL+(I); returns (E^{-1}, h).
inline std::pair<PwMap, PwMap> aiet_split(const PwMap& f) {
    require_member(f, GroupId::aiet(), "aiet_split");
    std::vector<Piece> e;
    Scalar pos(0);
    for (const auto& p : f.pieces()) {
        Interval im = p.image();
        e.push_back({im.lo, im.hi, Scalar(1), pos - im.lo});
        pos += im.length();
    }
    PwMap E = PwMap::canonicalize(std::move(e), f.field());
    PwMap h = compose(E, f);
    return {E.inverse(), h};
}

// ---------------------------------------------------------------------------
// Involution normal form

struct InvolutionNormalForm {
    PwMap H;
    PwMap normal;
    bool fixed_point_free;
};

inline PwMap rr_half(FieldSpec F = {}) { return restricted_rotation(Scalar(1, 4), {Scalar(1, 2), Scalar(1)}, F); }

/// H with H i H^{-1} equal to R_{1/2} (no fixed interval) or RR_{1/2}.
inline InvolutionNormalForm involution_normal_form(const PwMap& i) {
    if (!is_involution(i)) throw DomainError("involution_normal_form: input is not a non-trivial involution");
    FieldSpec F = i.field();
    struct Pair {
        Interval left, right;
        bool flip;
    };
    std::vector<Interval> fixed;
    std::vector<Pair> pairs;
    for (const auto& p : i.pieces()) {
        if (p.is_identity()) {
            fixed.push_back(p.domain());
            continue;
        }
        Interval im = p.image();
        if (im == p.domain()) {
            // self-flipped: halves exchanged by the flip
            Scalar m = (p.lo + p.hi) / Scalar(2);
            pairs.push_back({{p.lo, m}, {m, p.hi}, true});
        } else if (p.lo < im.lo) {
            pairs.push_back({p.domain(), im, !p.increasing()});
        }
    }
    std::size_t k = pairs.size(), q = fixed.size(), pc = 2 * k;
    Scalar base = q == 0 ? Scalar(0) : Scalar(1, 2);
    Scalar width = q == 0 ? Scalar(1) / Scalar(static_cast<long>(pc)) : Scalar(1) / Scalar(static_cast<long>(2 * pc));
    std::vector<Piece> hs;
    for (std::size_t j = 0; j < q; ++j) {
        Scalar w = Scalar(1) / Scalar(static_cast<long>(2 * q));
        hs.push_back(affine_piece(fixed[j], {w * Scalar(static_cast<long>(j)), w * Scalar(static_cast<long>(j + 1))}));
    }
    for (std::size_t j = 0; j < k; ++j) {
        Interval bl{base + width * Scalar(static_cast<long>(j)), base + width * Scalar(static_cast<long>(j + 1))};
        Interval br{base + width * Scalar(static_cast<long>(j + k)), base + width * Scalar(static_cast<long>(j + k + 1))};
        hs.push_back(affine_piece(pairs[j].left, bl));
        hs.push_back(affine_piece(pairs[j].right, br, pairs[j].flip));
    }
    PwMap H = PwMap::canonicalize(std::move(hs), F);
    PwMap N = conjugate(i, H);
    PwMap expect = q == 0 ? rotation(Scalar(1, 2), F) : rr_half(F);
    if (!(N == expect)) throw DomainError("involution_normal_form: conjugate did not reach the normal form");
    return {H, N, q == 0};
}

// ---------------------------------------------------------------------------
// Small-support splittings

namespace detail {

/// Swap of A = [a, a+s) and B = [b, b+s) as commuting sub-swaps of size < eps/2.
inline void push_swap(Factorization& out, const Scalar& a, const Scalar& b, const Scalar& s, const Scalar& eps) {
    // smallest count k with s/k < eps/2
    mpz_class k = floor_of((s * Scalar(2)) / eps) + 1;
    if (k < 1) k = 1;
    Scalar step = s / Scalar(mpq_class(k));
    Scalar off(0);
    for (mpz_class t = 0; t < k; ++t) {
        Scalar nxt = t + 1 == k ? s : off + step;
        out.push(swap_intervals({a + off, a + nxt}, {b + off, b + nxt}, out.field), "swap");
        off = nxt;
    }
}

}  // namespace detail

/// Restricted rotation by theta on [lo, lo+len) split into factors of support
/// measure < eps. Each step peels the block A = [lo, lo+t) (t the shorter arc):
/// f = swap(A, R(A)) agrees with R on A and g = f^{-1} R is again a restricted
/// rotation on a shorter interval.
inline Factorization split_restricted_rotation(Scalar lo, Scalar len, Scalar theta, const Scalar& eps, FieldSpec F) {
    Factorization head{{}, {}, F};
    std::vector<Factorization> tail;
    while (!theta.is_zero() && !(len < eps)) {
        if (!(len < theta * Scalar(2))) {
            detail::push_swap(head, lo, lo + theta, theta, eps);
            lo += theta;
            len -= theta;
        } else {
            Scalar phi = len - theta;
            Factorization s{{}, {}, F};
            detail::push_swap(s, lo, lo + phi, phi, eps);
            tail.push_back(std::move(s));
            lo += phi;
            len -= phi;
            theta = len - phi;
        }
        if (theta == len) theta = Scalar(0);
    }
    if (!theta.is_zero()) head.push(restricted_rotation(theta, {lo, lo + len}, F), "restricted-rotation");
    for (std::size_t i = tail.size(); i-- > 0;) head.append(tail[i]);
    return head;
}

/// Any IET: restricted rotations first, then each is split.
inline Factorization small_support_split_iet(const PwMap& g, const Scalar& eps) {
    if (eps.sign() <= 0) throw DomainError("small_support_split: eps must be positive");
    Factorization out{{}, {}, g.field()};
    for (const auto& r : iet_to_restricted_rotations(g).factors) {
        auto hull = *support_hull(r);
        Scalar theta = r(hull.lo) - hull.lo;
        out.append(split_restricted_rotation(hull.lo, hull.length(), theta, eps, g.field()));
    }
    return out;
}

/// Symmetries of a distinguished involution (domains of its self-flipped pieces).
inline std::vector<Interval> distinguished_symmetries(const PwMap& i) {
    std::vector<Interval> out;
    for (const auto& p : i.pieces()) {
        if (p.is_identity()) continue;
        if (p.slope != Scalar(-1) || !(p.image() == p.domain()))
            throw DomainError("input is not a distinguished involution");
        out.push_back(p.domain());
    }
    return out;
}

/// I_J = f_0 ... f_{n-1} where f_i flips the i-th outer pair of blocks of width |J|/(2n).
inline Factorization split_symmetry(const Interval& J, long n, FieldSpec F) {
    if (n < 1) throw DomainError("split_symmetry: n must be >= 1");
    Factorization out{{}, {}, F};
    Scalar w = J.length() / Scalar(2 * n);
    Scalar c = J.lo + J.hi;
    for (long i = 0; i < n; ++i) {
        Interval a{J.lo + w * Scalar(i), J.lo + w * Scalar(i + 1)};
        Interval b{c - a.hi, c - a.lo};
        std::vector<Piece> ps;
        if (a.hi == b.lo) {
            ps.push_back({a.lo, b.hi, Scalar(-1), c});
        } else {
            ps.push_back({a.lo, a.hi, Scalar(-1), c});
            ps.push_back({b.lo, b.hi, Scalar(-1), c});
        }
        add_identity_outside(ps, {a, b});
        out.push(PwMap::canonicalize(std::move(ps), F), "symmetry-part");
    }
    return out;
}

inline Factorization small_support_split_involution(const PwMap& i, long n) {
    Factorization out{{}, {}, i.field()};
    for (const auto& J : distinguished_symmetries(i)) out.append(split_symmetry(J, n, i.field()));
    return out;
}

/// n chosen per symmetry as the least n with |J|/n < eps.
inline Factorization small_support_split_involution(const PwMap& i, const Scalar& eps) {
    if (eps.sign() <= 0) throw DomainError("small_support_split: eps must be positive");
    Factorization out{{}, {}, i.field()};
    for (const auto& J : distinguished_symmetries(i)) {
        mpz_class n = detail::floor_of(J.length() / eps) + 1;
        out.append(split_symmetry(J, n.get_si(), i.field()));
    }
    return out;
}

namespace detail {

/// PL homeomorphism equal to h on [a,b) and the identity elsewhere; h must map [a,b) onto itself.
inline PwMap restrict_pl(const PwMap& h, const Scalar& a, const Scalar& b) {
    std::vector<Piece> ps;
    for (const auto& p : h.pieces()) {
        if (!(p.lo < b) || !(a < p.hi)) continue;
        ps.push_back({max(p.lo, a), min(p.hi, b), p.slope, p.intercept});
    }
    add_identity_outside(ps, {Interval{a, b}});
    return PwMap::canonicalize(std::move(ps), h.field());
}

inline void split_pl(const PwMap& h, const Scalar& eps, Factorization& out, int depth) {
    auto hull = support_hull(h);
    if (!hull) return;
    if (hull->length() < eps) {
        out.push(h, "pl");
        return;
    }
    if (depth > 4096) throw DomainError("small_support_split: PL recursion did not shrink");
    Scalar lo = hull->lo, len = hull->length();
    Scalar m = lo + len / Scalar(2);
    Scalar y = h(m);
    if (m < y) {
        Factorization inv{{}, {}, out.field};
        split_pl(h.inverse(), eps, inv, depth + 1);
        out.append(inv.inverted());
        return;
    }
    PwMap gh = h;
    std::optional<PwMap> g;
    if (y < m) {
        // g on [lo, e): sends h(m) to m, support inside [lo, lo + 3/4 len)
        Scalar e = lo + len * Scalar(3, 4);
        std::vector<Piece> ps{affine_piece({lo, y}, {lo, m}), affine_piece({y, e}, {m, e})};
        add_identity_outside(ps, {Interval{lo, e}});
        g = PwMap::canonicalize(std::move(ps), h.field());
        gh = compose(*g, h);
    }
    PwMap f1 = restrict_pl(gh, lo, m);
    PwMap f2 = restrict_pl(gh, m, hull->hi);
    if (g) split_pl(g->inverse(), eps, out, depth + 1);
    split_pl(f1, eps, out, depth + 1);
    split_pl(f2, eps, out, depth + 1);
}

}  // namespace detail

/// PL+(I) element as a product of PL homeomorphisms with supports in intervals
/// of length < eps, by the fixed-point splitting h = g^{-1} f_1 f_2.
inline Factorization small_support_split_pl(const PwMap& h, const Scalar& eps) {
    if (eps.sign() <= 0) throw DomainError("small_support_split: eps must be positive");
    require_member(h, GroupId::pl_interval(), "small_support_split (PL)");
    Factorization out{{}, {}, h.field()};
    detail::split_pl(h, eps, out, 0);
    return out;
}

/// Dispatches on the kind of x: IET, distinguished involution, FIET or PL+(I).
inline Factorization small_support_split(const PwMap& x, const Scalar& eps) {
    if (eps.sign() <= 0) throw DomainError("small_support_split: eps must be positive");
    if (x.is_identity()) return Factorization{{}, {}, x.field()};
    if (is_member(x, GroupId::iet())) return small_support_split_iet(x, eps);
    if (is_member(x, GroupId::pl_interval())) return small_support_split_pl(x, eps);
    if (is_member(x, GroupId::fiet())) {
        auto [inv, rest] = flip_split(x);
        Factorization out = small_support_split_iet(rest, eps);
        out.append(small_support_split_involution(inv.map, eps));
        return out;
    }
    throw DomainError("small_support_split: input is neither an FIET nor a PL+(I) map");
}

}  // namespace pcgroup
