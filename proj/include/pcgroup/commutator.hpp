#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "decomp.hpp"
#include "errors.hpp"
#include "pcmap.hpp"

namespace pcgroup {

/// [a,b] = a b a^{-1} b^{-1}.
struct CommutatorPair {
    PwMap a, b;

    PwMap value() const { return commutator(a, b); }
    bool trivial() const { return a.is_identity() && b.is_identity(); }
};

inline CommutatorPair trivial_pair(FieldSpec F) { return {PwMap::identity(F), PwMap::identity(F)}; }

inline PwMap product_of(const std::vector<CommutatorPair>& ps, FieldSpec F) {
    PwMap r = PwMap::identity(F);
    for (const auto& p : ps) r = compose(r, p.value());
    return r;
}

inline CommutatorPair conjugate(const CommutatorPair& p, const PwMap& h) { return {conjugate(p.a, h), conjugate(p.b, h)}; }

inline CommutatorPair rescale(const CommutatorPair& p, const Interval& J) { return {rescale(p.a, J), rescale(p.b, J)}; }

/// [k f^eps k^{-1}, h], a product of two conjugates of f^{+-1}.
struct FCommutator {
    PwMap k;
    int eps = 1;
    PwMap h;

    PwMap value(const PwMap& f) const {
        PwMap fe = eps > 0 ? f : f.inverse();
        return commutator(conjugate(fe, k), h);
    }
    /// (k, eps), (h k, -eps).
    std::vector<std::pair<PwMap, int>> expand() const { return {{k, eps}, {compose(h, k), -eps}}; }
};

inline std::vector<std::pair<PwMap, int>> expand_fcommutators(const std::vector<FCommutator>& parts) {
    std::vector<std::pair<PwMap, int>> out;
    for (const auto& p : parts)
        for (auto& e : p.expand()) out.push_back(std::move(e));
    return out;
}

namespace detail {

inline void check(bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("internal check failed: ") + what);
}

inline PwMap power_conj(const PwMap& g, const PwMap& f, long n) { return conjugate(g, power(f, n)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Restricted rotations and symmetries as commutators

/// Symmetry or restricted rotation written as one commutator of FIETs supported on its interval.
inline CommutatorPair involution_as_commutator(const PwMap& target) {
    FieldSpec F = target.field();
    if (target.is_identity()) return trivial_pair(F);
    auto hull = support_hull(target);
    PwMap u = unscale(target, *hull);
    PwMap a, b;
    if (u == symmetry(Scalar(0), Scalar(1), F)) {
        // I = f1 r f1^{-1} r^{-1}, f1 the flip of the middle half, r = R_{1/2}
        a = symmetry(Scalar(1, 4), Scalar(3, 4), F);
        b = rotation(Scalar(1, 2), F);
    } else {
        Scalar theta = u(Scalar(0));
        if (!is_member(u, GroupId::iet()) || !(u == rotation(theta, F)))
            throw DomainError("involution_as_commutator: input is neither a symmetry nor a restricted rotation");
        // R_theta = S_theta S_0 and S_theta = R_{theta/2} S_0 R_{theta/2}^{-1}
        a = rotation(theta / Scalar(2), F);
        b = symmetry(Scalar(0), Scalar(1), F);
    }
    CommutatorPair p{rescale(a, *hull), rescale(b, *hull)};
    detail::check(p.value() == target, "restricted rotation commutator");
    return p;
}

// ---------------------------------------------------------------------------
// PL bumps

/// Two-piece PL bumps B_1, ..., B_m with h = B_1 ... B_m, peeled left to right.
inline std::vector<PwMap> pl_bumps(const PwMap& h) {
    std::vector<PwMap> out;
    PwMap cur = h;
    while (!cur.is_identity()) {
        const Piece* P = nullptr;
        for (const auto& p : cur.pieces())
            if (!p.is_identity()) {
                P = &p;
                break;
            }
        Scalar y = P->at(P->hi);
        std::vector<Piece> ps{*P, affine_piece({P->hi, Scalar(1)}, {y, Scalar(1)})};
        add_identity_outside(ps, {Interval{P->lo, Scalar(1)}});
        PwMap B = PwMap::canonicalize(std::move(ps), h.field());
        out.push_back(B);
        cur = compose(B.inverse(), cur);
    }
    return out;
}

/// PL homeomorphism with two affine pieces inside its support hull written as
/// commutators, each conjugate to sigma_a^{-1} sigma_b^{-1} sigma_a sigma_b.
inline std::vector<CommutatorPair> pl_bump_as_commutators(const PwMap& bump) {
    FieldSpec F = bump.field();
    if (bump.is_identity()) return {};
    if (!is_member(bump, GroupId::pl_interval())) throw DomainError("pl bump: input is not in PL+(I)");
    auto hull = *support_hull(bump);
    std::vector<Piece> inner;
    for (const auto& p : bump.pieces())
        if (hull.lo <= p.lo && p.hi <= hull.hi) inner.push_back(p);
    if (inner.size() != 2) throw DomainError("pl bump: expected two affine pieces on the support");
    Scalar p = hull.lo, q = hull.hi, c = inner[0].hi;
    Scalar s1 = inner[0].slope, s2 = inner[1].slope;
    if (p.is_zero() && q == Scalar(1)) {
        // full support: B = B_a o B_b with hulls [0,y) and [B(c),1)
        Scalar Bc = bump(c);
        Scalar y = (max(c, Bc) + Scalar(1)) / Scalar(2);
        std::vector<Piece> ps{inner[0], affine_piece({c, y}, {Bc, y})};
        add_identity_outside(ps, {Interval{Scalar(0), y}});
        PwMap Bb = PwMap::canonicalize(std::move(ps), F);
        PwMap Ba = compose(bump, Bb.inverse());
        auto out = pl_bump_as_commutators(Ba);
        for (auto& x : pl_bump_as_commutators(Bb)) out.push_back(std::move(x));
        return out;
    }
    if (Scalar(1) < s1) {
        auto inv = pl_bump_as_commutators(bump.inverse());
        return {{inv.at(0).b, inv.at(0).a}};
    }
    // left slope a(1-b)/(b(1-a)), right slope (1-b)/b
    Scalar b = Scalar(1) / (Scalar(1) + s2);
    Scalar a = s1 / (s1 + s2);
    PwMap X = sigma(a, F).inverse(), Y = sigma(b, F).inverse();
    PwMap C = commutator(X, Y);
    auto ch = support_hull(C);
    detail::check(ch.has_value(), "sigma commutator support");
    PwMap t = transport(*ch, hull, {Scalar(0), Scalar(1)}, F);
    CommutatorPair pr{conjugate(X, t), conjugate(Y, t)};
    detail::check(pr.value() == bump, "sigma commutator matches the bump");
    return {pr};
}

// ---------------------------------------------------------------------------
// Elements as products of commutators

/// Commutator expression of phi in G. FAIET and FIET are supported; for AIET
/// only the PL+(I) part is reached without flips, anything else reports
/// NotImplemented.
inline std::vector<CommutatorPair> express_as_commutators(const PwMap& phi, const GroupId& G) {
    using T = GroupId::Tag;
    if (G.tag != T::FAIET && G.tag != T::FIET && G.tag != T::AIET)
        throw NotImplemented("express_as_commutators: no commutator expression for group " + G.name());
    require_member(phi, G, "express_as_commutators");
    std::vector<CommutatorPair> out;
    if (phi.is_identity()) return out;
    auto [inv, g] = flip_split(phi);
    auto [Einv, h] = aiet_split(g);
    if (G.tag == T::AIET && !Einv.is_identity())
        throw NotImplemented("express_as_commutators: flip-free commutators for the exchange part of an AIET");
    for (const auto& r : iet_to_restricted_rotations(Einv).factors) out.push_back(involution_as_commutator(r));
    for (const auto& B : pl_bumps(h))
        for (auto& p : pl_bump_as_commutators(B)) out.push_back(std::move(p));
    for (const auto& J : inv.symmetries) out.push_back(involution_as_commutator(symmetry(J, phi.field())));
    detail::check(product_of(out, phi.field()) == phi, "commutator expression recomposes");
    return out;
}

/// Expression of an element with support hull H inside the group of H, rescaled back.
inline std::vector<CommutatorPair> express_on_hull(const PwMap& g) {
    auto H = support_hull(g);
    if (!H) return {};
    std::vector<CommutatorPair> out;
    for (const auto& p : express_as_commutators(unscale(g, *H), GroupId::faiet())) out.push_back(rescale(p, *H));
    return out;
}

// ---------------------------------------------------------------------------
// Wandering intervals and contractors

/// J with J, f(J), ..., f^{count-1}(J) pairwise disjoint, J inside a continuity
/// interval of f (and of f on f(J) when count == 3).
inline Interval find_wandering_interval(const PwMap& f, int count) {
    PwMap T = count == 3 ? compose(f, f) : f;
    if (f.is_identity()) throw DomainError("find_disjoint_interval: identity has no wandering interval");
    if (T.is_identity()) throw DomainError("find_disjoint_interval: f is an involution");
    const Scalar fractions[] = {Scalar(1, 2), Scalar(1, 3), Scalar(2, 3), Scalar(1, 4), Scalar(3, 4), Scalar(1, 5)};
    for (const auto& P : T.pieces()) {
        if (P.is_identity()) continue;
        for (const auto& t : fractions) {
            Scalar x = P.lo + (P.hi - P.lo) * t;
            if (T(x) == x) continue;
            const Piece& p0 = f.pieces()[f.piece_index(x)];
            if (x == p0.lo) continue;
            Scalar r = min(x - p0.lo, p0.hi - x) / Scalar(2);
            for (int it = 0; it < 512; ++it, r = r / Scalar(2)) {
                Interval J{x - r, x + r};
                if (!J.inside(P.domain())) continue;
                std::vector<std::vector<Interval>> orbit{{J}, image_of(f, J)};
                if (orbit[1].size() != 1) continue;
                if (count == 3) {
                    orbit.push_back(image_of(f, orbit[1][0]));
                    if (orbit[2].size() != 1) continue;
                }
                bool ok = true;
                for (std::size_t i = 0; i < orbit.size(); ++i)
                    for (std::size_t j = i + 1; j < orbit.size(); ++j)
                        if (!disjoint_unions(orbit[i], orbit[j])) ok = false;
                if (ok) return J;
            }
        }
    }
    throw DomainError("find_disjoint_interval: no wandering interval found");
}

/// J with J, f(J), f^2(J) pairwise disjoint.
inline Interval find_disjoint_interval(const PwMap& f) { return find_wandering_interval(f, 3); }

namespace detail {

/// Parts of a region listed in circle order (the part through 0 is split as [d,1), [0,c)).
inline std::vector<Interval> circle_order(std::vector<Interval> parts) {
    parts = union_of(std::move(parts));
    if (parts.size() >= 2 && parts.front().lo.is_zero() && parts.back().hi == Scalar(1)) {
        Interval last = parts.back();
        parts.pop_back();
        parts.insert(parts.begin(), last);
    }
    return parts;
}

/// Complement of a circle-ordered union, in circle order starting after its last part.
inline std::vector<Interval> circle_complement(const std::vector<Interval>& parts) {
    auto comp = complement_in(parts, Scalar(0), Scalar(1));
    if (comp.empty()) return comp;
    // start the complement arc right after the end of the region's last part
    Scalar start = parts.back().hi;
    std::vector<Interval> out;
    for (const auto& c : comp)
        if (!(c.lo < start)) out.push_back(c);
    for (const auto& c : comp)
        if (c.lo < start) out.push_back(c);
    return out;
}

}  // namespace detail

/// k in G with k(K) inside J: K is sent affinely (in circle order) onto J and the
/// complementary arc onto the complement of J with one common slope.
inline PwMap proximal_contractor(const Region& K, const Interval& J, const GroupId& G, FieldSpec F = {}) {
    using T = GroupId::Tag;
    if (G.tag == T::IET || G.tag == T::FIET)
        throw DomainError("proximal_contractor: " + G.name() + " preserves lengths and has no contractors");
    if (G.tag == T::PLplusInterval || G.tag == T::BSThompson)
        throw NotImplemented("proximal_contractor: not available for " + G.name());
    if (covered_by(K.parts, {J})) return PwMap::identity(F);
    auto src = detail::circle_order(K.parts);
    auto rest_src = detail::circle_complement(src);
    if (rest_src.empty()) throw DomainError("proximal_contractor: region covers [0,1)");
    if (!(J.length() < Scalar(1))) return PwMap::identity(F);
    std::vector<Interval> dst{J};
    auto rest_dst = detail::circle_complement(dst);
    std::vector<Piece> ps = fill_pieces(src, dst);
    for (auto& p : fill_pieces(rest_src, rest_dst)) ps.push_back(std::move(p));
    PwMap k = PwMap::canonicalize(std::move(ps), F);
    detail::check(covered_by(image_of(k, K.parts), {J}), "contractor image");
    detail::check(is_member(k, G), "contractor membership");
    return k;
}

/// Smallest circle arc containing the supports of the given maps (complement of
/// the largest gap).
inline Region support_arc(const std::vector<PwMap>& maps) {
    std::vector<Interval> s;
    for (const auto& m : maps)
        for (auto& I : support(m)) s.push_back(I);
    s = union_of(std::move(s));
    if (s.empty()) return Region{};
    auto gaps = complement_in(s, Scalar(0), Scalar(1));
    if (gaps.empty()) throw DomainError("supports cover [0,1); no proper region contains them");
    // arcs of the complement; the gaps through 0 and 1 join on the circle
    Scalar best(-1);
    std::vector<Interval> best_gap;
    bool wrap = gaps.size() >= 2 && gaps.front().lo.is_zero() && gaps.back().hi == Scalar(1);
    if (wrap) {
        best = gaps.front().length() + gaps.back().length();
        best_gap = {gaps.front(), gaps.back()};
    }
    for (std::size_t i = wrap ? 1 : 0; i < (wrap ? gaps.size() - 1 : gaps.size()); ++i)
        if (best < gaps[i].length()) {
            best = gaps[i].length();
            best_gap = {gaps[i]};
        }
    return Region{complement_in(best_gap, Scalar(0), Scalar(1))};
}

/// Contractor of the maps' supports into J. When the support hull stays away
/// from 0 the contractor is a transport inside a window bounded away from 0.
inline PwMap contractor_into(const std::vector<PwMap>& maps, const Interval& J, const GroupId& G, FieldSpec F) {
    std::vector<Interval> s;
    for (const auto& m : maps)
        for (auto& I : support(m)) s.push_back(I);
    if (s.empty() || covered_by(s, {J})) return PwMap::identity(F);
    s = union_of(std::move(s));
    Interval H{s.front().lo, s.back().hi};
    if (Scalar(0) < H.lo && H.hi < Scalar(1) && Scalar(0) < J.lo && J.hi < Scalar(1)) {
        Interval W{min(H.lo, J.lo) / Scalar(2), (max(H.hi, J.hi) + Scalar(1)) / Scalar(2)};
        return transport(H, J, W, F);
    }
    return proximal_contractor(support_arc(maps), J, G, F);
}

// ---------------------------------------------------------------------------
// Commutator compression

/// gamma_1 gamma_2 gamma_3 = C_1 C_2 with C_1 = gamma_1 C_f(gamma_2) C_{f^{-1}}(gamma_3)
/// assembled entrywise and C_2 = [C_{f^{-1}}(gamma_3^{-1}) gamma_2, f], after
/// conjugating all supports into J.
inline std::vector<CommutatorPair> dv_compress(const std::vector<CommutatorPair>& gamma, const PwMap& f,
                                               const Interval& J, const GroupId& G = GroupId::faiet()) {
    if (gamma.size() != 3) throw DomainError("dv_compress: expected three commutators");
    FieldSpec F = f.field();
    auto fJ = image_of(f, J), f2J = image_of(f, fJ);
    if (!disjoint_unions({J}, fJ) || !disjoint_unions({J}, f2J) || !disjoint_unions(fJ, f2J))
        throw DomainError("dv_compress: J, f(J), f^{-1}(J) are not pairwise disjoint");
    std::vector<PwMap> all;
    for (const auto& g : gamma) {
        all.push_back(g.a);
        all.push_back(g.b);
    }
    PwMap k = contractor_into(all, J, G, F);
    std::vector<CommutatorPair> c;
    for (const auto& g : gamma) c.push_back(conjugate(g, k));
    for (const auto& g : c)
        if (!covered_by(support(g.a), {J}) || !covered_by(support(g.b), {J}))
            throw DomainError("dv_compress: supports not inside J after contraction");
    PwMap fi = f.inverse();
    PwMap A = compose(compose(c[0].a, conjugate(c[1].a, f)), conjugate(c[2].a, fi));
    PwMap B = compose(compose(c[0].b, conjugate(c[1].b, f)), conjugate(c[2].b, fi));
    PwMap x = compose(conjugate(c[2].value().inverse(), fi), c[1].value());
    PwMap ki = k.inverse();
    std::vector<CommutatorPair> out{conjugate(CommutatorPair{A, B}, ki), conjugate(CommutatorPair{x, f}, ki)};
    detail::check(product_of(out, F) == product_of(gamma, F), "dv_compress product");
    return out;
}

/// n commutators with supports in a common proper region as 2 commutators:
/// gamma_1 ... gamma_n = [A, B][x, r] where r rotates n disjoint blocks of an
/// interval cyclically, A, B collect the entries in the blocks and
/// x = prod_j C_{r^j}(gamma_{j+2} ... gamma_n).
inline std::vector<CommutatorPair> compress_commutators(std::vector<CommutatorPair> gamma, FieldSpec F,
                                                        const GroupId& G = GroupId::faiet()) {
    std::vector<CommutatorPair> nontriv;
    for (auto& g : gamma)
        if (!g.value().is_identity()) nontriv.push_back(std::move(g));
    gamma = std::move(nontriv);
    if (gamma.size() <= 2) {
        while (gamma.size() < 2) gamma.push_back(trivial_pair(F));
        return gamma;
    }
    std::size_t n = gamma.size();
    std::vector<PwMap> all;
    for (const auto& g : gamma) {
        all.push_back(g.a);
        all.push_back(g.b);
    }
    std::vector<Interval> s;
    for (const auto& m : all)
        for (auto& I : support(m)) s.push_back(I);
    s = union_of(std::move(s));
    Interval H{s.front().lo, s.back().hi};
    Interval T = H;
    if (H.lo.is_zero() || H.hi == Scalar(1)) {
        // the block interval goes into the largest gap
        Region K = support_arc(all);
        auto gap = complement_in(K.parts, Scalar(0), Scalar(1));
        Interval g = gap.front();
        for (const auto& x : gap)
            if (g.length() < x.length()) g = x;
        T = {g.lo + g.length() / Scalar(4), g.lo + g.length() * Scalar(3, 4)};
    }
    Scalar w = T.length() / Scalar(static_cast<long>(n));
    Interval J{T.lo, T.lo + w};
    PwMap r = restricted_rotation(w, T, F);
    PwMap k = contractor_into(all, J, G, F);
    std::vector<CommutatorPair> c;
    for (const auto& g : gamma) c.push_back(conjugate(g, k));
    std::vector<PwMap> rp{PwMap::identity(F)};
    for (std::size_t i = 1; i < n; ++i) rp.push_back(compose(rp.back(), r));
    PwMap A = PwMap::identity(F), B = A, x = A;
    for (std::size_t i = 0; i < n; ++i) {
        A = compose(A, conjugate(c[i].a, rp[i]));
        B = compose(B, conjugate(c[i].b, rp[i]));
    }
    // tails P_m = gamma_m ... gamma_n
    std::vector<PwMap> tail(n + 1, PwMap::identity(F));
    for (std::size_t m = n; m-- > 0;) tail[m] = compose(c[m].value(), tail[m + 1]);
    for (std::size_t j = 0; j + 1 < n; ++j) x = compose(x, conjugate(tail[j + 1], rp[j]));
    PwMap ki = k.inverse();
    std::vector<CommutatorPair> out{conjugate(CommutatorPair{A, B}, ki), conjugate(CommutatorPair{x, r}, ki)};
    detail::check(product_of(out, F) == product_of(gamma, F), "commutator compression product");
    return out;
}

// ---------------------------------------------------------------------------
// f-commutators

/// X with g1 g2 C_f(g1^{-1}) C_{f^2}(g2^{-1}) = [X, f], namely X = C_f(g2) g1 g2.
inline PwMap star_conjugator(const PwMap& g1, const PwMap& g2, const PwMap& f) {
    return compose(compose(conjugate(g2, f), g1), g2);
}

/// [g1, g2] as two f-commutators: conjugate the pair into Omega by k, split
/// [h1, h2] = (*)(h1, h2) (*)(h1^{-1}, h2^{-1}) and conjugate back.
inline std::vector<FCommutator> bi_factor(const PwMap& g1, const PwMap& g2, const PwMap& f, const Interval& Omega,
                                          const PwMap& k) {
    auto fO = image_of(f, Omega), f2O = image_of(f, fO);
    if (!disjoint_unions({Omega}, fO) || !disjoint_unions({Omega}, f2O) || !disjoint_unions(fO, f2O))
        throw DomainError("bi_factor: Omega, f(Omega), f^2(Omega) are not pairwise disjoint");
    PwMap h1 = conjugate(g1, k), h2 = conjugate(g2, k);
    if (!covered_by(support(h1), {Omega}) || !covered_by(support(h2), {Omega}))
        throw DomainError("bi_factor: k does not move the supports of g1, g2 into Omega");
    PwMap c = k.inverse();
    std::vector<FCommutator> out;
    for (const auto& X : {star_conjugator(h1, h2, f), star_conjugator(h1.inverse(), h2.inverse(), f)}) {
        PwMap cX = compose(c, X);
        out.push_back({cX, 1, compose(compose(c, X.inverse()), k)});
    }
    detail::check(compose(out[0].value(f), out[1].value(f)) == commutator(g1, g2), "bi_factor product");
    return out;
}

// ---------------------------------------------------------------------------
// Local-global splitting

struct LocalGlobal {
    PwMap g0, ga;
    Interval U;  // neighbourhood of a on which g0 agrees with g
    Scalar delta;
};

/// Regular point: first rational in Farey order that is not a breakpoint of g and not sent to 0.
inline Scalar choose_point(const PwMap& g) {
    for (long q = 2; q < 4096; ++q)
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            Scalar a(p, q);
            const Piece& P = g.pieces()[g.piece_index(a)];
            if (P.lo == a || g(a).is_zero()) continue;
            return a;
        }
    throw DomainError("choose_point: no admissible point");
}

/// g = g0 o ga with g0 supported in a hull inside (0,1) agreeing with g near a,
/// and ga fixing the neighbourhood [a - delta, a + delta).
inline LocalGlobal local_global_split(const PwMap& g, const Scalar& a, const GroupId& G = GroupId::faiet()) {
    if (!G.affine_containing()) throw DomainError("local_global_split: group has no local bounded supports");
    if (G.tag != GroupId::Tag::FAIET && G.tag != GroupId::Tag::AIET)
        throw NotImplemented("local_global_split: not available for " + G.name());
    require_member(g, G, "local_global_split");
    FieldSpec F = g.field();
    if (!(Scalar(0) < a && a < Scalar(1))) throw DomainError("local_global_split: a must lie in (0,1)");
    const Piece& P = g.pieces()[g.piece_index(a)];
    if (P.lo == a) throw DomainError("local_global_split: a is a discontinuity point");
    if (g(a).is_zero()) throw DomainError("local_global_split: g sends a to 0");
    Scalar delta = min(min(a - P.lo, P.hi - a), min(a, Scalar(1) - a)) / Scalar(2);
    Interval U{a - delta, a + delta};
    Piece pu{U.lo, U.hi, P.slope, P.intercept};
    Interval W = pu.image();
    Interval H{min(U.lo, W.lo) / Scalar(2), (max(U.hi, W.hi) + Scalar(1)) / Scalar(2)};
    std::vector<Piece> ps{pu};
    for (auto& q : fill_pieces(complement_in({U}, H.lo, H.hi), complement_in({W}, H.lo, H.hi))) ps.push_back(std::move(q));
    add_identity_outside(ps, {H});
    PwMap g0 = PwMap::canonicalize(std::move(ps), F);
    PwMap ga = compose(g0.inverse(), g);
    detail::check(compose(g0, ga) == g, "local-global recomposition");
    detail::check(covered_by(support(ga), complement_in({U}, Scalar(0), Scalar(1))), "ga fixes U");
    return {g0, ga, U, delta};
}

struct PhiSplit {
    LocalGlobal lg;
    PwMap g0;            // phi_0 C_{k_a}(phi_a), supported away from 0
    CommutatorPair ba;   // [k_a, phi_a^{-1}], supported away from a
    PwMap ka;
};

/// phi = g0 b_a with g0 = phi_0 C_{k_a}(phi_a) and b_a = [k_a, phi_a^{-1}], where
/// k_a = R_a k R_a^{-1} and k contracts [delta, 1 - delta) into a quarter-length
/// interval avoiding 1 - a inside a window fixing a neighbourhood of 0.
inline PhiSplit phi_split(const PwMap& phi, const Scalar& a, const GroupId& G = GroupId::faiet()) {
    FieldSpec F = phi.field();
    LocalGlobal lg = local_global_split(phi, a, G);
    const Scalar& d = lg.delta;
    Scalar one(1);
    Scalar m = one - a;
    Interval left{d, m}, right{m, one - d};
    Interval side = left.length() < right.length() ? right : left;
    Interval Jp{side.lo + side.length() / Scalar(4), side.lo + side.length() * Scalar(3, 4)};
    PwMap k0 = transport({d, one - d}, Jp, {d / Scalar(2), one - d / Scalar(2)}, F);
    PwMap Ra = rotation(a, F);
    PwMap ka = conjugate(k0, Ra);
    PwMap g0 = compose(lg.g0, conjugate(lg.ga, ka));
    CommutatorPair ba{ka, lg.ga.inverse()};
    detail::check(compose(g0, ba.value()) == phi, "phi split recomposition");
    detail::check(fixes_neighbourhood(g0, Scalar(0)), "g0 fixes a neighbourhood of 0");
    detail::check(fixes_neighbourhood(ka, a) && fixes_neighbourhood(lg.ga, a), "b_a fixes a neighbourhood of a");
    return {lg, g0, ba, ka};
}

// ---------------------------------------------------------------------------
// Involutions

struct NciResult {
    PwMap h, F;
};

/// h with F = f o (h f h^{-1}) not an involution. Candidates: symmetries and
/// half-turn restricted rotations on dyadic subintervals of H, then seeded
/// random elements supported in H.
inline NciResult nci_resolve(const PwMap& f, const Interval& H, std::uint64_t seed = 0, int budget = 64) {
    if (!is_involution(f)) throw DomainError("nci_resolve: input is not a non-trivial involution");
    FieldSpec Fd = f.field();
    int used = 0;
    auto test = [&](const PwMap& h) -> std::optional<NciResult> {
        ++used;
        PwMap F = compose(f, conjugate(f, h));
        if (F.is_identity() || compose(F, F).is_identity()) return std::nullopt;
        return NciResult{h, F};
    };
    for (long lev = 1; lev <= 5 && used < budget; ++lev) {
        long n = 1L << lev;
        Scalar w = H.length() / Scalar(n);
        for (long i = 0; i < n && used < budget; ++i) {
            Interval I{H.lo + w * Scalar(i), H.lo + w * Scalar(i + 1)};
            if (auto r = test(symmetry(I, Fd))) return *r;
            if (used < budget)
                if (auto r = test(restricted_rotation(w / Scalar(2), I, Fd))) return *r;
            if (i + 1 < n && used < budget) {
                Interval I2{I.lo, I.hi + w};
                if (auto r = test(restricted_rotation(w / Scalar(3), I2, Fd))) return *r;
            }
        }
    }
    std::uint64_t s = seed;
    while (used < budget) {
        PwMap h = rescale(random_element(GroupId::faiet(), 4, s++, Fd), H);
        if (auto r = test(h)) return *r;
    }
    throw SearchFailure("nci_resolve: candidate budget exhausted");
}

struct NormalClosureInvolutions {
    Interval J;
    PwMap tau1, tau2;
    // tau1 = f C_{i}(f^{-1}); tau2 = C_{h1}(f) C_{i1 h1}(f^{-1}) C_{h2}(f) C_{i2 h2}(f^{-1})
    std::vector<std::pair<PwMap, int>> tau1_entries, tau2_entries;
};

namespace detail {

/// AIET sending each src interval affinely onto its dst and the rest in order.
inline PwMap arrange(const std::vector<std::pair<Interval, Interval>>& moves, FieldSpec F) {
    std::vector<Piece> ps;
    std::vector<Interval> srcs, dsts;
    for (const auto& [s, d] : moves) {
        ps.push_back(affine_piece(s, d));
        srcs.push_back(s);
        dsts.push_back(d);
    }
    for (auto& p : fill_pieces(complement_in(srcs, Scalar(0), Scalar(1)), complement_in(dsts, Scalar(0), Scalar(1))))
        ps.push_back(std::move(p));
    return PwMap::canonicalize(std::move(ps), F);
}

}  // namespace detail

/// tau1 = [f, i] with i the half-turn of J, f(J) disjoint from J, and tau2 =
/// [f1, i1][f2, i2] of full support built from conjugates h_j f h_j^{-1}.
inline NormalClosureInvolutions normal_closure_involutions(const PwMap& f) {
    FieldSpec F = f.field();
    if (f.is_identity()) throw DomainError("normal_closure_involutions: f is the identity");
    Interval J = find_wandering_interval(f, 2);
    while (!(J.length() < Scalar(1, 2)) || !(image_of(f, J)[0].length() < Scalar(1, 2)))
        J = {J.lo, J.lo + J.length() / Scalar(2)};
    Interval fJ = image_of(f, J).at(0);
    auto half_turn = [&](const Interval& I) { return restricted_rotation(I.length() / Scalar(2), I, F); };
    PwMap i = half_turn(J);
    NormalClosureInvolutions out{J, commutator(f, i), PwMap::identity(F), {}, {}};
    PwMap id = PwMap::identity(F);
    out.tau1_entries = {{id, 1}, {i, -1}};
    Scalar q(1, 4);
    PwMap h1 = detail::arrange({{J, {Scalar(0), q}}, {fJ, {Scalar(1, 2), Scalar(3, 4)}}}, F);
    PwMap h2 = detail::arrange({{J, {q, Scalar(1, 2)}}, {fJ, {Scalar(3, 4), Scalar(1)}}}, F);
    PwMap i1 = half_turn({Scalar(0), q}), i2 = half_turn({q, Scalar(1, 2)});
    out.tau2 = compose(commutator(conjugate(f, h1), i1), commutator(conjugate(f, h2), i2));
    out.tau2_entries = {{h1, 1}, {compose(i1, h1), -1}, {h2, 1}, {compose(i2, h2), -1}};
    detail::check(is_involution(out.tau1) && !fixed_set(out.tau1).empty(), "tau1 is an involution with fixed points");
    detail::check(is_involution(out.tau2) && fixed_set(out.tau2).empty(), "tau2 is a fixed-point-free involution");
    return out;
}

}  // namespace pcgroup
