#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"
#include "thompson.hpp"

namespace pcgroup {

/// Half-open interval [lo, hi).
struct Interval {
    Scalar lo, hi;

    Scalar length() const { return hi - lo; }
    bool contains(const Scalar& x) const { return lo <= x && x < hi; }
    bool inside(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
    bool disjoint(const Interval& o) const { return hi <= o.lo || o.hi <= lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Affine law x -> slope*x + intercept on the open interior of [lo, hi).
struct Piece {
    Scalar lo, hi, slope, intercept;

    Scalar at(const Scalar& x) const { return slope * x + intercept; }
    bool increasing() const { return slope.sign() > 0; }
    Interval domain() const { return {lo, hi}; }
    Interval image() const {
        Scalar u = at(lo), v = at(hi);
        return increasing() ? Interval{u, v} : Interval{v, u};
    }
    bool same_law(const Piece& o) const { return slope == o.slope && intercept == o.intercept; }
    bool is_identity() const { return slope == Scalar(1) && intercept.is_zero(); }
    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Group tags for membership tests.
struct GroupId {
    enum class Tag { IET, FIET, AIET, FAIET, PLplusInterval, PLplusCircle, BSThompson };
    Tag tag = Tag::FAIET;
    SlopeSpec slopes{};

    static GroupId iet() { return {Tag::IET, {}}; }
    static GroupId fiet() { return {Tag::FIET, {}}; }
    static GroupId aiet() { return {Tag::AIET, {}}; }
    static GroupId faiet() { return {Tag::FAIET, {}}; }
    static GroupId pl_interval() { return {Tag::PLplusInterval, {}}; }
    static GroupId pl_circle() { return {Tag::PLplusCircle, {}}; }
    static GroupId thompson(SlopeSpec s) { return {Tag::BSThompson, std::move(s)}; }

    bool affine_containing() const { return tag != Tag::IET && tag != Tag::FIET; }
    std::string name() const {
        switch (tag) {
            case Tag::IET: return "IET";
            case Tag::FIET: return "FIET";
            case Tag::AIET: return "AIET";
            case Tag::FAIET: return "FAIET";
            case Tag::PLplusInterval: return "PL+I";
            case Tag::PLplusCircle: return "PL+S1";
            case Tag::BSThompson: return "T{" + slopes.to_string() + "}";
        }
        return "?";
    }
    friend bool operator==(const GroupId&, const GroupId&) = default;
};

inline std::optional<GroupId> parse_group(const std::string& s) {
    if (s == "IET") return GroupId::iet();
    if (s == "FIET") return GroupId::fiet();
    if (s == "AIET") return GroupId::aiet();
    if (s == "FAIET") return GroupId::faiet();
    if (s == "PL+I") return GroupId::pl_interval();
    if (s == "PL+S1") return GroupId::pl_circle();
    if (s.size() > 3 && s.rfind("T{", 0) == 0 && s.back() == '}') {
        std::vector<long> gens;
        std::string body = s.substr(2, s.size() - 3);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            if (comma == std::string::npos) comma = body.size();
            gens.push_back(std::stol(body.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return GroupId::thompson(SlopeSpec(gens));
    }
    return std::nullopt;
}

class PwMap;
PwMap compose(const PwMap& f, const PwMap& g);

/// Canonical (best-representative) class of a piecewise-affine bijection of [0,1).
class PwMap {
public:
    PwMap() : PwMap(FieldSpec{}) {}
    explicit PwMap(FieldSpec F) : field_(F) { pieces_.push_back({Scalar(0), Scalar(1), Scalar(1), Scalar(0)}); }

    static PwMap identity(FieldSpec F = {}) { return PwMap(F); }

    /// Validates a raw piece list and returns its canonical form.
    static PwMap canonicalize(std::vector<Piece> raw, FieldSpec F = {}) {
        for (const auto& p : raw) {
            if (!(p.lo < p.hi)) throw InvalidBijection("empty or reversed piece domain [" + p.lo.str() + ", " + p.hi.str() + ")");
            if (p.slope.is_zero()) throw InvalidBijection("zero slope");
            for (const Scalar* x : {&p.lo, &p.hi, &p.slope, &p.intercept})
                if (!belongs_to(*x, F)) throw DomainError("coefficient " + x->str() + " outside field " + F.to_string());
        }
        std::sort(raw.begin(), raw.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
        if (raw.empty() || !raw.front().lo.is_zero() || raw.back().hi != Scalar(1))
            throw InvalidBijection("piece domains do not cover [0,1)");
        for (std::size_t i = 1; i < raw.size(); ++i)
            if (raw[i].lo != raw[i - 1].hi)
                throw InvalidBijection("piece domains do not tile [0,1) near " + raw[i].lo.str());
        PwMap m(F, merged(std::move(raw)));
        m.check_images();
        return m;
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    const FieldSpec& field() const { return field_; }

    bool is_identity() const { return pieces_.size() == 1 && pieces_[0].is_identity(); }

    /// Index of the piece containing x in [0,1).
    std::size_t piece_index(const Scalar& x) const {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                                   [](const Scalar& v, const Piece& p) { return v < p.lo; });
        if (it == pieces_.begin() || x.sign() < 0 || !(x < Scalar(1)))
            throw DomainError("point " + x.str() + " outside [0,1)");
        return static_cast<std::size_t>(it - pieces_.begin()) - 1;
    }

    /// Value of the best representative at x.
    Scalar operator()(const Scalar& x) const {
        const Piece& p = pieces_[piece_index(x)];
        if (x == p.lo && !p.increasing()) return p.at(p.hi);
        return p.at(x);
    }

    PwMap inverse() const {
        std::vector<Piece> out;
        out.reserve(pieces_.size());
        for (const auto& p : pieces_) {
            Interval im = p.image();
            Scalar s = p.slope.inv();
            out.push_back({im.lo, im.hi, s, -(p.intercept * s)});
        }
        std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
        return PwMap(field_, merged(std::move(out)));
    }

    std::vector<Scalar> breakpoints() const {
        std::vector<Scalar> b;
        b.reserve(pieces_.size());
        for (const auto& p : pieces_) b.push_back(p.lo);
        return b;
    }

    /// Sorted distinct slopes.
    std::vector<Scalar> slopes() const {
        std::vector<Scalar> s;
        for (const auto& p : pieces_) s.push_back(p.slope);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    friend bool operator==(const PwMap& f, const PwMap& g) { return f.field_ == g.field_ && f.pieces_ == g.pieces_; }

    PwMap operator*(const PwMap& g) const { return compose(*this, g); }

    /// Trusted construction from pieces already sorted and tiling; merges only.
    static PwMap from_sorted(FieldSpec F, std::vector<Piece> pieces) { return PwMap(F, merged(std::move(pieces))); }

private:
    FieldSpec field_;
    std::vector<Piece> pieces_;

    PwMap(FieldSpec F, std::vector<Piece> pieces) : field_(F), pieces_(std::move(pieces)) {}

    static std::vector<Piece> merged(std::vector<Piece> in) {
        std::vector<Piece> out;
        out.reserve(in.size());
        for (auto& p : in) {
            if (!out.empty() && out.back().same_law(p)) out.back().hi = std::move(p.hi);
            else out.push_back(std::move(p));
        }
        return out;
    }

    void check_images() const {
        std::vector<Interval> ims;
        ims.reserve(pieces_.size());
        for (const auto& p : pieces_) ims.push_back(p.image());
        std::sort(ims.begin(), ims.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        if (!ims.front().lo.is_zero() || ims.back().hi != Scalar(1))
            throw InvalidBijection("piece images do not cover [0,1)");
        for (std::size_t i = 1; i < ims.size(); ++i)
            if (ims[i].lo != ims[i - 1].hi)
                throw InvalidBijection("piece images overlap or leave a gap near " + ims[i].lo.str());
    }
};

inline void require_same_field(const PwMap& f, const PwMap& g) {
    if (!(f.field() == g.field()))
        throw DomainError("mixed fields " + f.field().to_string() + " and " + g.field().to_string());
}

/// Class of f o g.
inline PwMap compose(const PwMap& f, const PwMap& g) {
    require_same_field(f, g);
    if (g.is_identity()) return f;
    if (f.is_identity()) return g;
    const auto& fp = f.pieces();
    std::vector<Piece> out;
    out.reserve(fp.size() + g.size());
    std::vector<Piece> chunk;
    for (const auto& p : g.pieces()) {
        Interval im = p.image();
        std::size_t j = f.piece_index(im.lo);
        chunk.clear();
        Scalar sinv;
        bool have_inv = false;
        auto pull = [&](const Scalar& y) {
            if (!have_inv) {
                sinv = p.slope.inv();
                have_inv = true;
            }
            return (y - p.intercept) * sinv;
        };
        for (; j < fp.size() && fp[j].lo < im.hi; ++j) {
            const Piece& q = fp[j];
            Scalar slope = q.slope * p.slope;
            Scalar icept = q.slope * p.intercept + q.intercept;
            bool first = q.lo <= im.lo;
            bool last = !(q.hi < im.hi);
            // pre-image of [max(im.lo, q.lo), min(im.hi, q.hi))
            Scalar a, b;
            if (p.increasing()) {
                a = first ? p.lo : pull(q.lo);
                b = last ? p.hi : pull(q.hi);
            } else {
                a = last ? p.lo : pull(q.hi);
                b = first ? p.hi : pull(q.lo);
            }
            chunk.push_back({std::move(a), std::move(b), std::move(slope), std::move(icept)});
        }
        if (!p.increasing()) std::reverse(chunk.begin(), chunk.end());
        for (auto& c : chunk) out.push_back(std::move(c));
    }
    return PwMap::from_sorted(f.field(), std::move(out));
}

inline PwMap inverse(const PwMap& f) { return f.inverse(); }

/// h f h^{-1}
inline PwMap conjugate(const PwMap& f, const PwMap& h) { return compose(compose(h, f), h.inverse()); }

/// [a,b] = a b a^{-1} b^{-1}
inline PwMap commutator(const PwMap& a, const PwMap& b) {
    return compose(compose(a, b), compose(a.inverse(), b.inverse()));
}

inline PwMap power(const PwMap& f, long n) {
    PwMap base = n < 0 ? f.inverse() : f;
    PwMap r = PwMap::identity(f.field());
    for (long k = n < 0 ? -n : n; k > 0; --k) r = compose(r, base);
    return r;
}

inline PwMap product(const std::vector<PwMap>& fs, FieldSpec F) {
    PwMap r = PwMap::identity(F);
    for (const auto& f : fs) r = compose(r, f);
    return r;
}

// ---------------------------------------------------------------------------
// Analysis

/// Merges sorted, touching intervals.
inline std::vector<Interval> union_of(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (auto& iv : v) {
        if (!out.empty() && !(out.back().hi < iv.lo)) out.back().hi = max(out.back().hi, iv.hi);
        else out.push_back(iv);
    }
    return out;
}

inline Scalar measure(const std::vector<Interval>& v) {
    Scalar m = 0;
    for (const auto& iv : union_of(v)) m += iv.length();
    return m;
}

/// Support as a union of intervals, ignoring isolated fixed points.
inline std::vector<Interval> support(const PwMap& f) {
    std::vector<Interval> s;
    for (const auto& p : f.pieces())
        if (!p.is_identity()) s.push_back(p.domain());
    return union_of(std::move(s));
}

inline std::vector<Interval> fixed_set(const PwMap& f) {
    std::vector<Interval> s;
    for (const auto& p : f.pieces())
        if (p.is_identity()) s.push_back(p.domain());
    return union_of(std::move(s));
}

/// Smallest interval containing the support; identity yields nullopt.
inline std::optional<Interval> support_hull(const PwMap& f) {
    auto s = support(f);
    if (s.empty()) return std::nullopt;
    return Interval{s.front().lo, s.back().hi};
}

inline Scalar support_measure(const PwMap& f) { return measure(support(f)); }

/// f(I) as a union of intervals.
inline std::vector<Interval> image_of(const PwMap& f, const Interval& I) {
    std::vector<Interval> out;
    for (const auto& p : f.pieces()) {
        if (!(p.lo < I.hi) || !(I.lo < p.hi)) continue;
        Piece q{max(p.lo, I.lo), min(p.hi, I.hi), p.slope, p.intercept};
        out.push_back(q.image());
    }
    return union_of(std::move(out));
}

inline std::vector<Interval> image_of(const PwMap& f, const std::vector<Interval>& parts) {
    std::vector<Interval> out;
    for (const auto& I : parts)
        for (auto& J : image_of(f, I)) out.push_back(std::move(J));
    return union_of(std::move(out));
}

/// True when every part of `a` lies inside some part of `b`.
inline bool covered_by(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    auto ub = union_of(b);
    for (const auto& x : a) {
        bool ok = false;
        for (const auto& y : ub)
            if (x.inside(y)) ok = true;
        if (!ok) return false;
    }
    return true;
}

inline bool disjoint_unions(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (!x.disjoint(y)) return false;
    return true;
}

/// Left and right limits at a breakpoint.
inline bool continuous_at_breakpoint(const PwMap& f, std::size_t i) {
    const auto& ps = f.pieces();
    if (i == 0) {
        // circle convention: lim at 1- equals lim at 0+ mod 1
        Scalar left = ps.back().at(Scalar(1)), right = ps.front().at(Scalar(0));
        Scalar diff = left - right;
        return diff.is_zero() || diff == Scalar(1) || diff == Scalar(-1);
    }
    return ps[i - 1].at(ps[i].lo) == ps[i].at(ps[i].lo);
}

struct Analysis {
    std::vector<Interval> supp, fix;
    std::vector<Scalar> disc;       // breakpoints of the canonical form, 0 included
    std::vector<Scalar> jumps;      // genuine discontinuities (0 only if circle-discontinuous)
    std::size_t discontinuity_count = 0;
    std::vector<Scalar> slopes;
    std::size_t piece_count = 0;
};

inline Analysis analyze(const PwMap& f) {
    Analysis a;
    a.supp = support(f);
    a.fix = fixed_set(f);
    a.disc = f.breakpoints();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!continuous_at_breakpoint(f, i)) a.jumps.push_back(f.pieces()[i].lo);
    a.discontinuity_count = a.disc.size() - (continuous_at_breakpoint(f, 0) ? 1 : 0);
    a.slopes = f.slopes();
    a.piece_count = f.size();
    return a;
}

enum class Order2 { Identity, Involution, Other };

inline Order2 order2_class(const PwMap& f) {
    if (f.is_identity()) return Order2::Identity;
    return compose(f, f).is_identity() ? Order2::Involution : Order2::Other;
}

inline bool is_involution(const PwMap& f) { return order2_class(f) == Order2::Involution; }

// ---------------------------------------------------------------------------
// Membership

inline bool is_member(const PwMap& f, const GroupId& G) {
    const auto& ps = f.pieces();
    auto all = [&](auto pred) { return std::all_of(ps.begin(), ps.end(), pred); };
    auto one = Scalar(1);
    // continuous on the circle: values at a breakpoint agree mod 1
    auto pl_circle = [&] {
        if (!all([](const Piece& p) { return p.increasing(); })) return false;
        for (std::size_t i = 1; i < ps.size(); ++i) {
            Scalar diff = ps[i - 1].at(ps[i].lo) - ps[i].at(ps[i].lo);
            if (!diff.is_zero() && diff != one) return false;
        }
        return continuous_at_breakpoint(f, 0);
    };
    auto pl_interval = [&] {
        if (!all([](const Piece& p) { return p.increasing(); })) return false;
        for (std::size_t i = 1; i < ps.size(); ++i)
            if (!continuous_at_breakpoint(f, i)) return false;
        return ps.front().at(Scalar(0)).is_zero();
    };
    switch (G.tag) {
        case GroupId::Tag::IET: return all([&](const Piece& p) { return p.slope == one; });
        case GroupId::Tag::FIET: return all([&](const Piece& p) { return p.slope == one || p.slope == -one; });
        case GroupId::Tag::AIET: return all([](const Piece& p) { return p.increasing(); });
        case GroupId::Tag::FAIET: return true;
        case GroupId::Tag::PLplusInterval: return pl_interval();
        case GroupId::Tag::PLplusCircle: return pl_circle();
        case GroupId::Tag::BSThompson: {
            if (!pl_circle()) return false;
            for (const auto& p : ps) {
                if (!p.slope.is_rational() || !p.intercept.is_rational() || !p.lo.is_rational()) return false;
                if (!lambda_membership(p.slope, G.slopes)) return false;
                if (!A_membership(p.lo, G.slopes) || !A_membership(f(p.lo), G.slopes)) return false;
            }
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Proper regions

/// A union of at most two intervals; the two-part shape is [0,c) u (d,1).
/// Endpoints are immaterial in the quotient, so parts are stored half-open.
struct Region {
    std::vector<Interval> parts;

    static Region interval(Scalar lo, Scalar hi) { return Region{{Interval{std::move(lo), std::move(hi)}}}; }
    static Region around_zero(Scalar c, Scalar d) {
        return Region{{Interval{Scalar(0), std::move(c)}, Interval{std::move(d), Scalar(1)}}};
    }
    Scalar length() const { return measure(parts); }
};

/// Matches one of the shapes of an a-proper interval.
inline bool is_a_proper(const Region& R, const Scalar& a) {
    Scalar zero(0), one(1);
    if (R.parts.size() == 1) {
        const auto& I = R.parts[0];
        if (!(zero < I.lo && I.lo < I.hi && I.hi < one)) return false;
        if (a.is_zero()) return true;
        return I.hi < a || a < I.lo;
    }
    if (R.parts.size() == 2) {
        const auto& L = R.parts[0];
        const auto& U = R.parts[1];
        if (a.is_zero()) return false;
        return L.lo.is_zero() && zero < L.hi && L.hi < a && a < U.lo && U.lo < U.hi && U.hi == one;
    }
    return false;
}

inline bool contains_support(const Region& R, const PwMap& f) {
    for (const auto& s : support(f)) {
        bool ok = false;
        for (const auto& p : R.parts)
            if (s.inside(p)) ok = true;
        if (!ok) return false;
    }
    return true;
}

/// True iff f fixes some neighbourhood V_delta(a) pointwise (V_delta(0) wraps around).
inline bool fixes_neighbourhood(const PwMap& f, const Scalar& a) {
    const auto& ps = f.pieces();
    if (a.is_zero()) return ps.front().is_identity() && ps.back().is_identity();
    std::size_t i = f.piece_index(a);
    return ps[i].is_identity() && ps[i].lo < a;
}

// ---------------------------------------------------------------------------
// Constructors

/// Affine bijection of src onto dst, increasing or reversing.
inline Piece affine_piece(const Interval& src, const Interval& dst, bool reverse = false) {
    Scalar s = dst.length() / src.length();
    if (!reverse) return {src.lo, src.hi, s, dst.lo - s * src.lo};
    return {src.lo, src.hi, -s, dst.hi + s * src.lo};
}

/// Maps the concatenation of `src` onto the concatenation of `dst` with one
/// common positive slope, splitting pieces at the joints.
inline std::vector<Piece> fill_pieces(const std::vector<Interval>& src, const std::vector<Interval>& dst) {
    Scalar ls = measure(src), ld = measure(dst);
    std::vector<Piece> out;
    if (src.empty()) return out;
    Scalar rho = ld / ls;
    std::size_t i = 0, j = 0;
    Scalar si = src.empty() ? Scalar(0) : src[0].lo;  // cursor within src[i]
    Scalar dj = dst.empty() ? Scalar(0) : dst[0].lo;  // cursor within dst[j]
    while (i < src.size() && j < dst.size()) {
        Scalar srem = src[i].hi - si;
        Scalar drem = (dst[j].hi - dj) / rho;  // in source units
        Scalar step = min(srem, drem);
        Scalar s_end = si + step;
        out.push_back({si, s_end, rho, dj - rho * si});
        Scalar d_end = dj + rho * step;
        si = s_end;
        dj = d_end;
        if (si == src[i].hi) {
            if (++i < src.size()) si = src[i].lo;
        }
        if (dj == dst[j].hi) {
            if (++j < dst.size()) dj = dst[j].lo;
        }
    }
    return out;
}

/// Complement of a union of intervals inside [lo, hi).
inline std::vector<Interval> complement_in(const std::vector<Interval>& parts, const Scalar& lo, const Scalar& hi) {
    std::vector<Interval> out;
    Scalar cur = lo;
    for (const auto& p : union_of(parts)) {
        if (cur < p.lo) out.push_back({cur, p.lo});
        cur = max(cur, p.hi);
    }
    if (cur < hi) out.push_back({cur, hi});
    return out;
}

/// Identity pieces on the complement of `covered` in [0,1).
inline void add_identity_outside(std::vector<Piece>& out, const std::vector<Interval>& covered) {
    for (const auto& g : complement_in(covered, Scalar(0), Scalar(1))) out.push_back({g.lo, g.hi, Scalar(1), Scalar(0)});
}

inline void require_unit(const Scalar& x, const char* what) {
    if (x.sign() < 0 || !(x < Scalar(1))) throw DomainError(std::string(what) + " " + x.str() + " outside [0,1)");
}

/// Restricted rotation R_{theta,J}: x -> lo + ((x - lo + theta) mod |J|) on J.
inline PwMap restricted_rotation(const Scalar& theta, const Interval& J, FieldSpec F = {}) {
    if (!(J.lo < J.hi) || J.lo.sign() < 0 || Scalar(1) < J.hi) throw DomainError("restricted rotation: bad interval");
    if (theta.sign() < 0 || !(theta < J.length())) throw DomainError("restricted rotation: angle " + theta.str() + " outside [0,|J|)");
    if (theta.is_zero()) return PwMap::identity(F);
    Scalar cut = J.hi - theta;
    std::vector<Piece> ps{{J.lo, cut, Scalar(1), theta}, {cut, J.hi, Scalar(1), theta - J.length()}};
    add_identity_outside(ps, {J});
    return PwMap::canonicalize(std::move(ps), F);
}

inline PwMap rotation(const Scalar& theta, FieldSpec F = {}) {
    require_unit(theta, "rotation angle");
    return restricted_rotation(theta, {Scalar(0), Scalar(1)}, F);
}

/// Symmetry I_[alpha,beta): x -> alpha + beta - x on (alpha, beta).
inline PwMap symmetry(const Scalar& alpha, const Scalar& beta, FieldSpec F = {}) {
    if (!(alpha < beta) || alpha.sign() < 0 || Scalar(1) < beta) throw DomainError("symmetry: bad interval");
    std::vector<Piece> ps{{alpha, beta, Scalar(-1), alpha + beta}};
    add_identity_outside(ps, {Interval{alpha, beta}});
    return PwMap::canonicalize(std::move(ps), F);
}

inline PwMap symmetry(const Interval& J, FieldSpec F = {}) { return symmetry(J.lo, J.hi, F); }

/// S_theta = I_[0,theta) o I_(theta,1).
inline PwMap s_theta(const Scalar& theta, FieldSpec F = {}) {
    require_unit(theta, "S_theta parameter");
    if (theta.is_zero()) return symmetry(Scalar(0), Scalar(1), F);
    return compose(symmetry(Scalar(0), theta, F), symmetry(theta, Scalar(1), F));
}

/// Exchange of two disjoint intervals of equal length by translation.
inline PwMap swap_intervals(const Interval& A, const Interval& B, FieldSpec F = {}) {
    if (A.length() != B.length() || !A.disjoint(B)) throw DomainError("swap: intervals must be disjoint and of equal length");
    std::vector<Piece> ps{{A.lo, A.hi, Scalar(1), B.lo - A.lo}, {B.lo, B.hi, Scalar(1), A.lo - B.lo}};
    add_identity_outside(ps, {A, B});
    return PwMap::canonicalize(std::move(ps), F);
}

/// sigma_a: PL homeomorphism fixing 0 and 1, affine on [0,1/2] and [1/2,1], sigma_a(1/2) = a.
inline PwMap sigma(const Scalar& a, FieldSpec F = {}) {
    if (!(Scalar(0) < a && a < Scalar(1))) throw DomainError("sigma parameter " + a.str() + " outside (0,1)");
    Scalar h(1, 2);
    std::vector<Piece> ps{{Scalar(0), h, a * 2, Scalar(0)}, {h, Scalar(1), (Scalar(1) - a) * 2, a * 2 - Scalar(1)}};
    return PwMap::canonicalize(std::move(ps), F);
}

/// Copy of f acting on J through the affine identification [0,1) ~ J; identity outside J.
inline PwMap rescale(const PwMap& f, const Interval& J) {
    if (!(J.lo < J.hi) || J.lo.sign() < 0 || Scalar(1) < J.hi) throw DomainError("rescale: bad interval");
    Scalar L = J.length();
    std::vector<Piece> ps;
    for (const auto& p : f.pieces()) {
        // x' = lo + L * (slope * (x - lo)/L + icept)
        Scalar icept = J.lo + L * p.intercept - p.slope * J.lo;
        ps.push_back({J.lo + L * p.lo, J.lo + L * p.hi, p.slope, icept});
    }
    add_identity_outside(ps, {J});
    std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    return PwMap::from_sorted(f.field(), std::move(ps));
}

/// Inverse of rescale: f supported in J, returned as a map of [0,1).
inline PwMap unscale(const PwMap& f, const Interval& J) {
    Scalar L = J.length();
    std::vector<Piece> ps;
    for (const auto& p : f.pieces()) {
        if (!(J.lo < p.hi) || !(p.lo < J.hi)) continue;
        Scalar lo = max(p.lo, J.lo), hi = min(p.hi, J.hi);
        // y = (slope * (lo + L x) + icept - lo) / L
        Scalar icept = (p.slope * J.lo + p.intercept - J.lo) / L;
        ps.push_back({(lo - J.lo) / L, (hi - J.lo) / L, p.slope, icept});
    }
    return PwMap::canonicalize(std::move(ps), f.field());
}

/// Bijection sending `src` affinely (increasing) onto `dst` inside the window
/// [lo, hi) which contains both, identity outside the window; the rest of the
/// window is filled in order with one common slope.
inline PwMap transport(const Interval& src, const Interval& dst, const Interval& window, FieldSpec F = {}) {
    if (!src.inside(window) || !dst.inside(window)) throw DomainError("transport: intervals must lie in the window");
    std::vector<Piece> ps{affine_piece(src, dst)};
    auto rest_src = complement_in({src}, window.lo, window.hi);
    auto rest_dst = complement_in({dst}, window.lo, window.hi);
    for (auto& p : fill_pieces(rest_src, rest_dst)) ps.push_back(std::move(p));
    add_identity_outside(ps, {window});
    return PwMap::canonicalize(std::move(ps), F);
}

// ---------------------------------------------------------------------------
// Random elements

namespace detail {

inline Scalar random_rational(std::mt19937_64& rng, long max_den = 12) {
    std::uniform_int_distribution<long> den(2, max_den);
    long q = den(rng);
    std::uniform_int_distribution<long> num(1, q - 1);
    return Scalar(num(rng), q);
}

/// floor of a scalar, exact.
inline mpz_class floor_of(const Scalar& x) {
    double approx = x.a().get_d() + (x.b() == 0 ? 0.0 : x.b().get_d() * std::sqrt(static_cast<double>(x.d())));
    mpz_class n(std::floor(approx));
    while (Scalar(mpq_class(n)) > x) n -= 1;
    while (!(x < Scalar(mpq_class(n + 1)))) n += 1;
    return n;
}

inline Scalar frac(const Scalar& x) { return x - Scalar(mpq_class(floor_of(x))); }

/// m-1 distinct sorted interior cut points of (0,1) drawn from the field.
inline std::vector<Scalar> random_cuts(std::mt19937_64& rng, std::size_t m, const FieldSpec& F) {
    std::vector<Scalar> cuts;
    std::size_t guard = 0;
    while (cuts.size() + 1 < m && guard++ < 1000) {
        Scalar x = random_rational(rng);
        if (!F.is_rational() && (rng() & 1)) {
            Scalar b = random_rational(rng, 6) - Scalar(1, 2);
            x = frac(x + b * Scalar::sqrt_of(F.d));
        }
        if (x.is_zero()) continue;
        if (std::find(cuts.begin(), cuts.end(), x) == cuts.end()) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

inline std::vector<Interval> partition(const std::vector<Scalar>& cuts) {
    std::vector<Interval> out;
    Scalar prev(0);
    for (const auto& c : cuts) {
        out.push_back({prev, c});
        prev = c;
    }
    out.push_back({prev, Scalar(1)});
    return out;
}

/// Splits [0,1) into `count` pieces by repeatedly dividing a random piece into
/// n equal parts, n drawn from `ns` according to the plan.
inline std::vector<Interval> n_adic_partition(std::mt19937_64& rng, const std::vector<long>& plan) {
    std::vector<Interval> parts{{Scalar(0), Scalar(1)}};
    for (long n : plan) {
        std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
        std::size_t k = pick(rng);
        Interval I = parts[k];
        std::vector<Interval> sub;
        Scalar step = I.length() / Scalar(n);
        for (long t = 0; t < n; ++t) sub.push_back({I.lo + step * Scalar(t), t + 1 == n ? I.hi : I.lo + step * Scalar(t + 1)});
        parts.erase(parts.begin() + static_cast<long>(k));
        parts.insert(parts.begin() + static_cast<long>(k), sub.begin(), sub.end());
    }
    return parts;
}

}  // namespace detail

/// Deterministic random member of G with at most max_pieces continuity intervals.
inline PwMap random_element(const GroupId& G, std::size_t max_pieces, std::uint64_t seed, FieldSpec F = {}) {
    if (max_pieces < 1) throw DomainError("random_element: max_pieces must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> count(1, max_pieces);
    std::size_t m = count(rng);
    using T = GroupId::Tag;
    if (G.tag == T::BSThompson) {
        if (!F.is_rational()) throw DomainError("Thompson groups are defined over Q");
        std::vector<long> plan;
        const auto& gens = G.slopes.generators;
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        std::size_t target = m;
        for (std::size_t total = 1; total < target;) {
            long n = gens[pick(rng)];
            plan.push_back(n);
            total += static_cast<std::size_t>(n - 1);
        }
        auto dom = detail::n_adic_partition(rng, plan);
        std::shuffle(plan.begin(), plan.end(), rng);
        auto img = detail::n_adic_partition(rng, plan);
        std::uniform_int_distribution<std::size_t> sh(0, dom.size() - 1);
        std::size_t shift = sh(rng);
        std::vector<Piece> ps;
        for (std::size_t i = 0; i < dom.size(); ++i) ps.push_back(affine_piece(dom[i], img[(i + shift) % dom.size()]));
        return PwMap::canonicalize(std::move(ps), F);
    }
    auto dom = detail::partition(detail::random_cuts(rng, m, F));
    m = dom.size();
    std::vector<Interval> img;
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    bool same_lengths = G.tag == T::IET || G.tag == T::FIET;
    bool flips = G.tag == T::FIET || G.tag == T::FAIET;
    if (G.tag == T::PLplusCircle) {
        std::uniform_int_distribution<std::size_t> sh(0, m - 1);
        std::size_t s = sh(rng);
        for (std::size_t i = 0; i < m; ++i) perm[i] = (i + s) % m;
    } else if (G.tag != T::PLplusInterval) {
        std::shuffle(perm.begin(), perm.end(), rng);
    }
    // image slot k receives domain piece inv[k]
    std::vector<std::size_t> inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[perm[i]] = i;
    if (same_lengths) {
        Scalar pos(0);
        img.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const Interval& d = dom[inv[k]];
            img[inv[k]] = {pos, pos + d.length()};
            pos += d.length();
        }
    } else {
        auto slots = detail::partition(detail::random_cuts(rng, m, F));
        while (slots.size() < m) slots = detail::partition(detail::random_cuts(rng, m, F));
        img.resize(m);
        for (std::size_t k = 0; k < m; ++k) img[inv[k]] = slots[k];
    }
    std::vector<Piece> ps;
    for (std::size_t i = 0; i < m; ++i) {
        bool rev = flips && (rng() % 3 == 0);
        ps.push_back(affine_piece(dom[i], img[i], rev));
    }
    return PwMap::canonicalize(std::move(ps), F);
}

}  // namespace pcgroup
