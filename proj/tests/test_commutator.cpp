#include <gtest/gtest.h>

#include "pcgroup/commutator.hpp"

using namespace pcgroup;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

PwMap random_in(const Interval& J, std::uint64_t seed, FieldSpec F = {}) {
    return rescale(random_element(GroupId::faiet(), 4, seed, F), J);
}

CommutatorPair random_pair(const Interval& J, std::uint64_t seed) { return {random_in(J, seed), random_in(J, seed + 7777)}; }

}  // namespace

TEST(InvolutionAsCommutator, FullSymmetry) {
    PwMap s = symmetry(q(0), q(1));
    auto p = involution_as_commutator(s);
    EXPECT_EQ(p.a, symmetry(q(1, 4), q(3, 4)));
    EXPECT_EQ(p.b, rotation(q(1, 2)));
    EXPECT_EQ(p.value(), s);
}

TEST(InvolutionAsCommutator, RestrictedRotations) {
    EXPECT_TRUE(involution_as_commutator(restricted_rotation(q(0), {q(1, 3), q(1, 2)})).value().is_identity());
    EXPECT_EQ(involution_as_commutator(rotation(q(1, 3))).value(), rotation(q(1, 3)));
    for (auto J : {Interval{q(1, 5), q(4, 5)}, Interval{q(0), q(1, 3)}}) {
        PwMap r = restricted_rotation(q(1, 9), J);
        auto p = involution_as_commutator(r);
        EXPECT_EQ(p.value(), r);
        EXPECT_TRUE(covered_by(support(p.a), {J}));
        EXPECT_TRUE(is_member(p.a, GroupId::fiet()));
    }
}

TEST(PlBumps, SigmaLiteralIsOneCommutator) {
    PwMap c = commutator(sigma(q(1, 4)).inverse(), sigma(q(3, 8)).inverse());
    auto ps = pl_bump_as_commutators(c);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(ps[0].value(), c);
    EXPECT_TRUE(pl_bump_as_commutators(PwMap::identity()).empty());
}

TEST(PlBumps, TwoPieceBump) {
    PwMap b = PwMap::canonicalize({{q(0), q(1, 4), q(1), q(0)},
                                   {q(1, 4), q(5, 12), q(2), q(-1, 4)},
                                   {q(5, 12), q(3, 4), q(1, 2), q(3, 8)},
                                   {q(3, 4), q(1), q(1), q(0)}});
    EXPECT_EQ(b.slopes(), (std::vector<Scalar>{q(1, 2), q(1), q(2)}));
    auto ps = pl_bump_as_commutators(b);
    EXPECT_EQ(product_of(ps, {}), b);
}

TEST(PlBumpsProperty, BumpsRecompose) {
    for (int seed = 0; seed < 100; ++seed) {
        PwMap h = random_element(GroupId::pl_interval(), 5, 300 + seed);
        auto bs = pl_bumps(h);
        EXPECT_EQ(product(bs, {}), h);
        std::vector<CommutatorPair> all;
        for (const auto& b : bs)
            for (auto& p : pl_bump_as_commutators(b)) all.push_back(p);
        EXPECT_EQ(product_of(all, {}), h);
    }
}

TEST(Express, Examples) {
    EXPECT_TRUE(express_as_commutators(PwMap::identity(), GroupId::faiet()).empty());
    EXPECT_EQ(express_as_commutators(symmetry(q(0), q(1)), GroupId::faiet()).size(), 1u);
    EXPECT_THROW(express_as_commutators(rotation(q(1, 3)), GroupId::pl_circle()), NotImplemented);
    EXPECT_THROW(express_as_commutators(random_element(GroupId::aiet(), 4, 4), GroupId::aiet()), NotImplemented);
}

TEST(ExpressProperty, ExactProducts) {
    for (int seed = 0; seed < 60; ++seed) {
        FieldSpec F = seed % 2 ? FieldSpec::quadratic(2) : FieldSpec{};
        PwMap phi = random_element(GroupId::faiet(), 4, seed, F);
        EXPECT_EQ(product_of(express_as_commutators(phi, GroupId::faiet()), F), phi);
        PwMap g = random_element(GroupId::fiet(), 5, seed, F);
        auto ps = express_as_commutators(g, GroupId::fiet());
        EXPECT_EQ(product_of(ps, F), g);
        for (const auto& p : ps) EXPECT_TRUE(is_member(p.a, GroupId::fiet()) && is_member(p.b, GroupId::fiet()));
        PwMap h = random_element(GroupId::pl_interval(), 4, seed, F);
        EXPECT_EQ(product_of(express_as_commutators(h, GroupId::aiet()), F), h);
    }
}

TEST(WanderingInterval, Examples) {
    Interval J = find_disjoint_interval(rotation(q(1, 3)));
    auto f1 = image_of(rotation(q(1, 3)), J), f2 = image_of(rotation(q(2, 3)), J);
    EXPECT_TRUE(disjoint_unions({J}, f1) && disjoint_unions({J}, f2) && disjoint_unions(f1, f2));
    EXPECT_THROW(find_disjoint_interval(rotation(q(1, 2))), DomainError);
    EXPECT_THROW(find_disjoint_interval(PwMap::identity()), DomainError);
}

TEST(WanderingIntervalProperty, Disjoint) {
    for (int seed = 0; seed < 200; ++seed) {
        PwMap f = random_element(GroupId::aiet(), 5, 50 + seed);
        if (f.is_identity() || is_involution(f)) continue;
        Interval J = find_disjoint_interval(f);
        auto a = image_of(f, J), b = image_of(f, a);
        EXPECT_TRUE(disjoint_unions({J}, a) && disjoint_unions({J}, b) && disjoint_unions(a, b));
    }
}

TEST(Contractor, Examples) {
    Interval J{q(0), q(1, 8)};
    EXPECT_TRUE(proximal_contractor(Region::interval(q(1, 32), q(1, 16)), J, GroupId::faiet()).is_identity());
    PwMap k = proximal_contractor(Region::interval(q(1, 4), q(3, 4)), J, GroupId::aiet());
    EXPECT_TRUE(covered_by(image_of(k, {Interval{q(1, 4), q(3, 4)}}), {J}));
    EXPECT_EQ(k(q(1, 2)) - k(q(1, 4)), q(1, 16));
    PwMap c = proximal_contractor(Region::around_zero(q(1, 8), q(7, 8)), {q(1, 2), q(5, 8)}, GroupId::faiet());
    EXPECT_TRUE(covered_by(image_of(c, {Interval{q(0), q(1, 8)}, Interval{q(7, 8), q(1)}}), {Interval{q(1, 2), q(5, 8)}}));
    EXPECT_TRUE(is_member(c, GroupId::pl_circle()));
    EXPECT_THROW(proximal_contractor(Region::interval(q(1, 4), q(3, 4)), J, GroupId::iet()), DomainError);
    EXPECT_THROW(proximal_contractor(Region::interval(q(1, 4), q(3, 4)), J, GroupId::pl_interval()), NotImplemented);
}

TEST(DvCompress, ThreeToTwo) {
    PwMap f = rotation(q(1, 3));
    Interval J{q(1, 3), q(3, 8)};
    std::vector<CommutatorPair> triv(3, trivial_pair({}));
    auto t = dv_compress(triv, f, J);
    EXPECT_EQ(t.size(), 2u);
    EXPECT_TRUE(product_of(t, {}).is_identity());
    std::vector<CommutatorPair> g{random_pair(J, 1), random_pair(J, 2), random_pair(J, 3)};
    auto c = dv_compress(g, f, J);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(product_of(c, {}), product_of(g, {}));
}

TEST(DvCompressProperty, RandomTriplesAndIteration) {
    for (int seed = 0; seed < 30; ++seed) {
        PwMap f = random_element(GroupId::aiet(), 4, 400 + seed);
        if (f.is_identity() || is_involution(f)) continue;
        Interval J = find_disjoint_interval(f);
        Interval H{q(1, 5), q(3, 4)};
        std::vector<CommutatorPair> g{random_pair(H, 10 * seed), random_pair(H, 10 * seed + 1),
                                      random_pair(H, 10 * seed + 2)};
        auto c = dv_compress(g, f, J);
        EXPECT_EQ(product_of(c, {}), product_of(g, {}));
        // the second pair of each round is [x, r], so r must keep a proper support
        PwMap r = restricted_rotation(q(1, 4), {q(1, 8), q(7, 8)});
        Interval Jr = find_disjoint_interval(r);
        std::vector<CommutatorPair> five;
        for (int i = 0; i < 5; ++i) five.push_back(random_pair(H, 100 * seed + i));
        auto first = dv_compress({five[0], five[1], five[2]}, r, Jr);
        auto second = dv_compress({first[0], first[1], five[3]}, r, Jr);
        auto last = dv_compress({second[0], second[1], five[4]}, r, Jr);
        EXPECT_EQ(product_of(last, {}), product_of(five, {}));
        auto direct = compress_commutators(five, {});
        ASSERT_EQ(direct.size(), 2u);
        EXPECT_EQ(product_of(direct, {}), product_of(five, {}));
    }
}

TEST(Compress, TrivialInput) {
    auto c = compress_commutators(std::vector<CommutatorPair>(4, trivial_pair({})), {});
    ASSERT_EQ(c.size(), 2u);
    EXPECT_TRUE(c[0].value().is_identity() && c[1].value().is_identity());
}

TEST(StarFormula, Identity) {
    for (int seed = 0; seed < 100; ++seed) {
        PwMap f = random_element(GroupId::faiet(), 4, 600 + seed);
        if (f.is_identity() || is_involution(f)) continue;
        Interval O = find_disjoint_interval(f);
        PwMap g1 = random_in(O, seed), g2 = random_in(O, seed + 50);
        PwMap f2 = compose(f, f);
        PwMap lhs = product({g1, g2, conjugate(g1.inverse(), f), conjugate(g2.inverse(), f2)}, {});
        EXPECT_EQ(lhs, commutator(star_conjugator(g1, g2, f), f));
    }
}

TEST(BiFactor, TrivialAndRandom) {
    PwMap f = rotation(q(1, 3));
    Interval O = find_disjoint_interval(f);
    PwMap id = PwMap::identity();
    auto t = bi_factor(id, id, f, O, id);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_TRUE(t[0].value(f).is_identity() && t[1].value(f).is_identity());
    for (int seed = 0; seed < 20; ++seed) {
        PwMap g1 = random_in({q(1, 4), q(3, 4)}, seed), g2 = random_in({q(1, 3), q(2, 3)}, seed + 9);
        PwMap k = contractor_into({g1, g2}, O, GroupId::faiet(), {});
        auto fc = bi_factor(g1, g2, f, O, k);
        auto entries = expand_fcommutators(fc);
        ASSERT_EQ(entries.size(), 4u);
        PwMap acc = PwMap::identity();
        for (const auto& [c, e] : entries) acc = compose(acc, conjugate(e > 0 ? f : f.inverse(), c));
        EXPECT_EQ(acc, commutator(g1, g2));
    }
}

TEST(LocalGlobal, Examples) {
    PwMap r = rotation(q(1, 3));
    auto lg = local_global_split(r, q(1, 2));
    EXPECT_EQ(compose(lg.g0, lg.ga), r);
    EXPECT_TRUE(fixes_neighbourhood(lg.ga, q(1, 2)));
    EXPECT_TRUE(fixes_neighbourhood(lg.g0, q(0)));
    PwMap s = symmetry(q(1, 4), q(1, 2));
    auto id = local_global_split(s, q(3, 4));
    EXPECT_EQ(compose(id.g0, id.ga), s);
    EXPECT_THROW(local_global_split(r, q(2, 3)), DomainError);
}

TEST(PhiSplitProperty, Recompose) {
    for (int seed = 0; seed < 60; ++seed) {
        PwMap phi = random_element(GroupId::faiet(), 5, 800 + seed);
        Scalar a = choose_point(phi);
        auto s = phi_split(phi, a);
        EXPECT_EQ(compose(s.g0, s.ba.value()), phi);
        EXPECT_TRUE(fixes_neighbourhood(s.g0, q(0)));
        EXPECT_TRUE(fixes_neighbourhood(s.ba.value(), a));
        auto U = s.lg.U;
        EXPECT_TRUE(disjoint_unions(support(s.lg.ga), {U}));
    }
}

TEST(Nci, Examples) {
    auto r = nci_resolve(rotation(q(1, 2)), {q(0), q(1)});
    EXPECT_FALSE(compose(r.F, r.F).is_identity());
    EXPECT_EQ(r.F, compose(rotation(q(1, 2)), conjugate(rotation(q(1, 2)), r.h)));
    auto s = nci_resolve(symmetry(q(0), q(1)), {q(0), q(1)});
    EXPECT_FALSE(compose(s.F, s.F).is_identity());
    EXPECT_THROW(nci_resolve(rotation(q(1, 3)), {q(0), q(1)}), DomainError);
}

TEST(NciProperty, ConjugatedInvolutions) {
    for (int seed = 0; seed < 40; ++seed) {
        PwMap w = random_element(GroupId::faiet(), 4, 70 + seed);
        PwMap i = conjugate(seed % 2 ? rotation(q(1, 2)) : symmetry(q(1, 3), q(1)), w);
        auto r = nci_resolve(i, *support_hull(i), seed);
        EXPECT_FALSE(compose(r.F, r.F).is_identity());
        EXPECT_EQ(r.F, compose(i, conjugate(i, r.h)));
    }
}

TEST(NormalClosure, Involutions) {
    PwMap f = rotation(q(1, 3));
    auto nc = normal_closure_involutions(f);
    EXPECT_TRUE(is_involution(nc.tau1));
    EXPECT_TRUE(covered_by(support(nc.tau1), union_of({nc.J, image_of(f, nc.J).at(0)})));
    EXPECT_TRUE(is_involution(nc.tau2));
    EXPECT_EQ(support_measure(nc.tau2), q(1));
    for (auto* pr : {&nc.tau1_entries, &nc.tau2_entries}) {
        PwMap acc = PwMap::identity();
        for (const auto& [c, e] : *pr) acc = compose(acc, conjugate(e > 0 ? f : f.inverse(), c));
        EXPECT_EQ(acc, pr == &nc.tau1_entries ? nc.tau1 : nc.tau2);
    }
    auto small = normal_closure_involutions(symmetry(q(1, 8), q(3, 8)));
    EXPECT_TRUE(is_involution(small.tau2));
}
