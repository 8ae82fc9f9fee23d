#include <gtest/gtest.h>

#include "pcgroup/decomp.hpp"
#include "pcgroup/witness.hpp"

using namespace pcgroup;

namespace {

Scalar q(long n, long d = 1) { return Scalar(n, d); }

PwMap product_of_entries(const Witness& w) {
    PwMap acc = PwMap::identity(w.base.field());
    for (const auto& e : w.entries) acc = compose(acc, conjugate(e.eps > 0 ? w.base : w.base.inverse(), e.k));
    return acc;
}

}  // namespace

TEST(Verifier, TrivialWitness) {
    PwMap f = rotation(q(1, 3));
    Witness w{f, f, {{PwMap::identity(), 1}}, 8, Theorem::th0, GroupId::faiet()};
    EXPECT_TRUE(verify_witness(w).valid);
    w.entries[0].eps = -1;
    Verdict v = verify_witness(w);
    EXPECT_FALSE(v.valid);
    EXPECT_EQ(v.reason, "product mismatch");
    w.entries[0].eps = 2;
    EXPECT_FALSE(verify_witness(w).valid);
}

TEST(Verifier, RejectsBoundAndMembership) {
    PwMap f = rotation(q(1, 3));
    Witness w{f, PwMap::identity(), {{PwMap::identity(), 1}, {PwMap::identity(), -1}}, 1, Theorem::th0,
              GroupId::faiet()};
    EXPECT_FALSE(verify_witness(w).valid);
    w.claimed_bound = 2;
    EXPECT_TRUE(verify_witness(w).valid);
    w.group = GroupId::iet();
    w.entries[0].k = symmetry(q(0), q(1));
    w.entries[1].k = symmetry(q(0), q(1));
    EXPECT_FALSE(verify_witness(w).valid);
}

TEST(FCommutators, Expansion) {
    EXPECT_TRUE(expand_fcommutators({}).empty());
    PwMap f = random_element(GroupId::faiet(), 4, 3);
    std::vector<FCommutator> fc;
    for (int i = 0; i < 3; ++i)
        fc.push_back({random_element(GroupId::faiet(), 4, 10 + i), i % 2 ? -1 : 1, random_element(GroupId::faiet(), 3, 20 + i)});
    auto one = fc[0].expand();
    ASSERT_EQ(one.size(), 2u);
    EXPECT_EQ(compose(conjugate(f, one[0].first), conjugate(f.inverse(), one[1].first)), fc[0].value(f));
    auto all = expand_fcommutators(fc);
    EXPECT_EQ(all.size(), 6u);
}

TEST(WitnessTh1, Shortcuts) {
    PwMap f = random_element(GroupId::faiet(), 4, 31);
    auto a = witness_th1(f, f);
    EXPECT_EQ(a.entries.size(), 1u);
    EXPECT_EQ(a.entries[0].eps, 1);
    auto b = witness_th1(f, f.inverse());
    EXPECT_EQ(b.entries.size(), 1u);
    EXPECT_EQ(b.entries[0].eps, -1);
    EXPECT_TRUE(witness_th1(f, PwMap::identity()).entries.empty());
    EXPECT_THROW(witness_th1(PwMap::identity(), f), DomainError);
    EXPECT_THROW(witness_th1(f, f, GroupId::iet()), NotImplemented);
}

TEST(WitnessTh1Property, RandomPairs) {
    int done = 0;
    for (std::uint64_t s = 0; done < 15; ++s) {
        PwMap f = random_element(GroupId::faiet(), 4, 1000 + s), phi = random_element(GroupId::faiet(), 4, 5000 + s);
        if (f.is_identity() || is_involution(f)) continue;
        auto w = witness_th1(f, phi);
        EXPECT_LE(w.entries.size(), 12u);
        EXPECT_TRUE(verify_witness(w).valid);
        EXPECT_EQ(product_of_entries(w), phi);
        ++done;
    }
}

TEST(WitnessTh1Property, Involutions) {
    for (std::uint64_t s = 0; s < 6; ++s) {
        PwMap w0 = random_element(GroupId::faiet(), 3, 300 + s);
        PwMap f = conjugate(s % 2 ? rotation(q(1, 2)) : rr_half(), w0);
        PwMap phi = random_element(GroupId::faiet(), 4, 7000 + s);
        auto w = witness_th1(f, phi);
        EXPECT_EQ(w.claimed_bound, 24u);
        EXPECT_LE(w.entries.size(), 24u);
        EXPECT_TRUE(verify_witness(w).valid);
    }
}

TEST(WitnessTh1, QuadraticField) {
    FieldSpec F = FieldSpec::quadratic(2);
    PwMap f = rotation(Scalar::sqrt_of(2) - q(1), F);
    PwMap phi = random_element(GroupId::faiet(), 4, 77, F);
    auto w = witness_th1(f, phi);
    EXPECT_LE(w.entries.size(), 12u);
    EXPECT_TRUE(verify_witness(w).valid);
}

TEST(WitnessTh0, CompactSupport) {
    Interval H{q(1, 5), q(3, 5)};
    for (std::uint64_t s = 0; s < 10; ++s) {
        PwMap f = rescale(random_element(GroupId::faiet(), 4, 100 + s), H);
        PwMap phi = rescale(random_element(GroupId::faiet(), 4, 200 + s), {q(1, 4), q(1, 2)});
        if (f.is_identity() || phi.is_identity()) continue;
        auto w = witness_th0(f, phi, auto_region(f, phi));
        EXPECT_LE(w.entries.size(), is_involution(f) ? 16u : 8u);
        EXPECT_TRUE(verify_witness(w).valid);
    }
}

TEST(WitnessTh0, InvolutionAndWrappedRegion) {
    PwMap f = rescale(symmetry(q(0), q(1)), {q(1, 3), q(9, 10)});
    PwMap phi = rescale(random_element(GroupId::faiet(), 4, 5), {q(1, 2), q(3, 4)});
    auto w = witness_th0(f, phi, auto_region(f, phi));
    EXPECT_LE(w.entries.size(), 16u);
    EXPECT_TRUE(verify_witness(w).valid);
    PwMap g = conjugate(rescale(random_element(GroupId::faiet(), 3, 8), {q(1, 4), q(3, 4)}), rotation(q(1, 2)));
    PwMap psi = conjugate(rescale(random_element(GroupId::faiet(), 3, 9), {q(1, 3), q(2, 3)}), rotation(q(1, 2)));
    Region R = auto_region(g, psi);
    EXPECT_EQ(R.parts.size(), 2u);
    auto w2 = witness_th0(g, psi, R);
    EXPECT_LE(w2.entries.size(), 8u);
    EXPECT_TRUE(verify_witness(w2).valid);
    for (const auto& e : w2.entries) EXPECT_TRUE(fixes_neighbourhood(e.k, proper_point(R)));
}

TEST(WitnessTh0, Preconditions) {
    PwMap f = rotation(q(1, 3));
    PwMap phi = rescale(random_element(GroupId::faiet(), 3, 1), {q(1, 4), q(1, 2)});
    EXPECT_THROW(witness_th0(f, phi, Region::interval(q(1, 5), q(4, 5))), DomainError);
}
