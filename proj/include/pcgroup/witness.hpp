#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commutator.hpp"
#include "errors.hpp"
#include "pcmap.hpp"

namespace pcgroup {

enum class Theorem { th0, th1 };

inline std::string theorem_name(Theorem t) { return t == Theorem::th0 ? "th0" : "th1"; }

struct WitnessEntry {
    PwMap k;
    int eps = 1;
    friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

/// phi = prod_i k_i f^{eps_i} k_i^{-1}.
struct Witness {
    PwMap base, target;
    std::vector<WitnessEntry> entries;
    std::size_t claimed_bound = 0;
    Theorem theorem = Theorem::th1;
    GroupId group = GroupId::faiet();
    friend bool operator==(const Witness&, const Witness&) = default;
};

struct Verdict {
    bool valid = false;
    std::string reason;
};

/// Recomputes the product from pcmap primitives only.
inline Verdict verify_witness(const Witness& w) {
    const FieldSpec& F = w.base.field();
    if (!(w.target.field() == F)) return {false, "field mismatch between base and target"};
    if (w.entries.size() > w.claimed_bound) return {false, "entry count exceeds claimed bound"};
    PwMap finv = w.base.inverse();
    PwMap acc = PwMap::identity(F);
    for (std::size_t i = 0; i < w.entries.size(); ++i) {
        const auto& e = w.entries[i];
        if (e.eps != 1 && e.eps != -1) return {false, "exponent of entry " + std::to_string(i) + " is not +-1"};
        if (!(e.k.field() == F)) return {false, "field mismatch in entry " + std::to_string(i)};
        if (!is_member(e.k, w.group)) return {false, "conjugator " + std::to_string(i) + " is not in " + w.group.name()};
        acc = compose(acc, compose(compose(e.k, e.eps > 0 ? w.base : finv), e.k.inverse()));
    }
    if (!(acc == w.target)) return {false, "product mismatch"};
    return {true, ""};
}

namespace detail {

using Entries = std::vector<WitnessEntry>;

inline void require_supported_group(const GroupId& G, const char* who) {
    if (G.tag != GroupId::Tag::FAIET)
        throw NotImplemented(std::string(who) + ": witnesses are constructed for FAIET only, not " + G.name());
}

/// Two commutators per stage become two f-commutators each.
inline Entries bi_entries(const std::vector<CommutatorPair>& pairs, const PwMap& f, const GroupId& G) {
    FieldSpec F = f.field();
    Entries out;
    Interval Omega = find_disjoint_interval(f);
    for (const auto& p : pairs) {
        if (p.value().is_identity()) continue;
        PwMap k = contractor_into({p.a, p.b}, Omega, G, F);
        for (auto& [c, e] : expand_fcommutators(bi_factor(p.a, p.b, f, Omega, k))) out.push_back({c, e});
    }
    return out;
}

/// Entries for F = f C_h(f) with f an involution, rewritten over f.
inline Entries unfold_involution(const Entries& overF, const PwMap& h) {
    Entries out;
    for (const auto& e : overF) {
        PwMap kh = compose(e.k, h);
        if (e.eps > 0) {
            out.push_back({e.k, 1});
            out.push_back({kh, 1});
        } else {
            out.push_back({kh, 1});
            out.push_back({e.k, 1});
        }
    }
    return out;
}

inline std::optional<Entries> shortcut(const PwMap& f, const PwMap& phi) {
    FieldSpec F = f.field();
    if (phi.is_identity()) return Entries{};
    if (phi == f) return Entries{{PwMap::identity(F), 1}};
    if (phi == f.inverse()) return Entries{{PwMap::identity(F), -1}};
    return std::nullopt;
}

inline Witness finish(const PwMap& f, const PwMap& phi, Entries entries, std::size_t bound, Theorem t, const GroupId& G) {
    Witness w{f, phi, std::move(entries), bound, t, G};
    Verdict v = verify_witness(w);
    if (!v.valid) throw std::logic_error("witness construction produced an invalid certificate: " + v.reason);
    return w;
}

/// phi = g0 [k_a, phi_a^{-1}] with g0 supported away from 0, g0 compressed to
/// two commutators, all three turned into f-commutators.
inline Entries th1_core(const PwMap& f, const PwMap& phi, const GroupId& G) {
    Scalar a = choose_point(phi);
    PhiSplit s = phi_split(phi, a, G);
    auto two = compress_commutators(express_on_hull(s.g0), f.field(), G);
    two.push_back(s.ba);
    return bi_entries(two, f, G);
}

inline Entries th0_core(const PwMap& f, const PwMap& phi, const GroupId& G) {
    auto two = compress_commutators(express_on_hull(phi), f.field(), G);
    return bi_entries(two, f, G);
}

}  // namespace detail

/// Witness of length <= 12 (f^2 != id) or <= 24 (f an involution).
inline Witness witness_th1(const PwMap& f, const PwMap& phi, const GroupId& G = GroupId::faiet(),
                           std::uint64_t seed = 0) {
    detail::require_supported_group(G, "witness_th1");
    require_same_field(f, phi);
    require_member(f, G, "witness_th1");
    require_member(phi, G, "witness_th1");
    if (f.is_identity()) throw DomainError("witness_th1: f is the identity");
    bool inv = is_involution(f);
    std::size_t bound = inv ? 24 : 12;
    if (auto e = detail::shortcut(f, phi)) return detail::finish(f, phi, *e, bound, Theorem::th1, G);
    detail::Entries entries;
    if (inv) {
        NciResult r = nci_resolve(f, {Scalar(0), Scalar(1)}, seed);
        entries = detail::unfold_involution(detail::th1_core(r.F, phi, G), r.h);
    } else {
        entries = detail::th1_core(f, phi, G);
    }
    return detail::finish(f, phi, std::move(entries), bound, Theorem::th1, G);
}

/// A point a for which R is a-proper.
inline Scalar proper_point(const Region& R) {
    Scalar zero(0), one(1);
    Scalar a(-1);
    if (R.parts.size() == 1) {
        const auto& I = R.parts[0];
        if (zero < I.lo && I.hi < one) a = zero;
        else if (I.hi < one) a = (I.hi + one) / Scalar(2);
        else if (zero < I.lo) a = I.lo / Scalar(2);
    } else if (R.parts.size() == 2) {
        a = (R.parts[0].hi + R.parts[1].lo) / Scalar(2);
    }
    if (a.sign() < 0 || !is_a_proper(R, a)) throw DomainError("witness_th0: region is not a-proper for any a");
    return a;
}

/// Smallest arc containing both supports.
inline Region auto_region(const PwMap& f, const PwMap& phi) { return support_arc({f, phi}); }

/// Witness of length <= 8 (f^2 != id) or <= 16 for f, phi supported in an
/// a-proper region. The region is rotated to stay away from 0 and every
/// conjugator fixes a neighbourhood of the excluded point.
inline Witness witness_th0(const PwMap& f, const PwMap& phi, const Region& R, const GroupId& G = GroupId::faiet(),
                           std::uint64_t seed = 0) {
    detail::require_supported_group(G, "witness_th0");
    require_same_field(f, phi);
    require_member(f, G, "witness_th0");
    require_member(phi, G, "witness_th0");
    if (f.is_identity()) throw DomainError("witness_th0: f is the identity");
    if (!contains_support(R, f) || !contains_support(R, phi))
        throw DomainError("witness_th0: supports are not inside the region");
    FieldSpec F = f.field();
    Scalar a = proper_point(R);
    bool inv = is_involution(f);
    std::size_t bound = inv ? 16 : 8;
    if (auto e = detail::shortcut(f, phi)) return detail::finish(f, phi, *e, bound, Theorem::th0, G);
    PwMap rho = a.is_zero() ? PwMap::identity(F) : rotation(Scalar(1) - a, F);
    PwMap fr = conjugate(f, rho), pr = conjugate(phi, rho);
    detail::Entries entries;
    if (inv) {
        NciResult r = nci_resolve(fr, *support_hull(fr), seed);
        entries = detail::unfold_involution(detail::th0_core(r.F, pr, G), r.h);
    } else {
        entries = detail::th0_core(fr, pr, G);
    }
    PwMap rinv = rho.inverse();
    for (auto& e : entries) e.k = compose(compose(rinv, e.k), rho);
    return detail::finish(f, phi, std::move(entries), bound, Theorem::th0, G);
}

}  // namespace pcgroup
