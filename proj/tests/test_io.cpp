#include <gtest/gtest.h>

#include "pcgroup/io.hpp"

using namespace pcgroup;

namespace {

const FieldSpec Q2 = FieldSpec::quadratic(2);
Scalar q(long n, long d = 1) { return Scalar(n, d); }

}  // namespace

TEST(Field, ParsePrint) {
    EXPECT_EQ(parse_field("Q"), FieldSpec{});
    EXPECT_EQ(parse_field("Q(sqrt 2)"), Q2);
    EXPECT_EQ(parse_field(Q2.to_string()), Q2);
    EXPECT_THROW(parse_field("R"), ParseError);
    EXPECT_THROW(parse_field("Q(sqrt x)"), ParseError);
    EXPECT_THROW(parse_field("Q(sqrt 9)"), DomainError);
}

TEST(MapDocument, CanonicalIdentity) {
    PwMap f = parse_map("# identity\n[0, 1/3) : 1 , 0\n[1/3, 2/3) : 1 , 0\n[2/3, 1) : 1 , 0\n");
    EXPECT_EQ(print_map(f), "field Q\n[0, 1) : 1 , 0\n");
}

TEST(MapDocument, DefaultField) {
    PwMap f = parse_map("[0, 1) : 1 , 0\n", Q2);
    EXPECT_EQ(f.field(), Q2);
    PwMap g = parse_map("field Q\n[0, 1) : 1 , 0\n", Q2);
    EXPECT_EQ(g.field(), FieldSpec{});
}

TEST(MapDocument, Errors) {
    EXPECT_THROW(parse_map(""), ParseError);
    EXPECT_THROW(parse_map("[0, 1) 1 , 0\n"), ParseError);
    EXPECT_THROW(parse_map("[0, 1] : 1 , 0\n"), ParseError);
    EXPECT_THROW(parse_map("[0, 1/2) : 1 , 0\n"), InvalidBijection);
    EXPECT_THROW(parse_map("[0, 1) : 1 , 0\nfield Q\n"), ParseError);
}

TEST(MapDocumentProperty, ByteExactRoundTrip) {
    for (int s = 0; s < 300; ++s) {
        FieldSpec F = s % 2 ? Q2 : FieldSpec{};
        PwMap f = random_element(GroupId::faiet(), 6, s, F);
        std::string text = print_map(f);
        PwMap g = parse_map(text);
        EXPECT_EQ(g, f);
        EXPECT_EQ(print_map(g), text);
    }
}

TEST(MapList, RoundTrip) {
    std::vector<PwMap> fs{rotation(q(1, 3)), symmetry(q(0), q(1)), random_element(GroupId::faiet(), 4, 1)};
    std::string text = print_maps(fs);
    EXPECT_EQ(parse_maps(text), fs);
    EXPECT_EQ(print_maps(parse_maps(text)), text);
}

TEST(SlopeDocument, RoundTrip) {
    SlopeSpec s = parse_slopes("slopes 3,2");
    EXPECT_EQ(s.generators, (std::vector<long>{2, 3}));
    EXPECT_EQ(print_slopes(s), "slopes 2,3\n");
    EXPECT_EQ(print_slopes(parse_slopes(print_slopes(s))), "slopes 2,3\n");
    EXPECT_THROW(parse_slopes("slopes 2,x"), ParseError);
    EXPECT_THROW(parse_slopes("gens 2"), ParseError);
}

TEST(WitnessDocument, ByteExactRoundTrip) {
    for (int s = 0; s < 4; ++s) {
        FieldSpec F = s % 2 ? Q2 : FieldSpec{};
        PwMap f = random_element(GroupId::faiet(), 4, 40 + s, F), phi = random_element(GroupId::faiet(), 4, 60 + s, F);
        if (f.is_identity() || is_involution(f)) continue;
        Witness w = witness_th1(f, phi);
        std::string text = print_witness(w);
        Witness back = parse_witness(text);
        EXPECT_EQ(back, w);
        EXPECT_EQ(print_witness(back), text);
        EXPECT_TRUE(verify_witness(back).valid);
    }
}

TEST(WitnessDocument, Errors) {
    EXPECT_THROW(parse_witness("{"), ParseError);
    EXPECT_THROW(parse_witness("{\"format\": \"other\"}"), ParseError);
    PwMap f = rotation(q(1, 3));
    std::string text = print_witness({f, f, {{PwMap::identity(), 1}}, 8, Theorem::th0, GroupId::faiet()});
    auto j = Json::parse(text);
    j.erase("entries");
    EXPECT_THROW(parse_witness(j.dump()), ParseError);
    j = Json::parse(text);
    j["theorem"] = "th7";
    EXPECT_THROW(parse_witness(j.dump()), ParseError);
}

TEST(FactorizationDocument, ByteExactRoundTrip) {
    for (int s = 0; s < 50; ++s) {
        PwMap g = random_element(GroupId::iet(), 6, s, s % 2 ? Q2 : FieldSpec{});
        Factorization f = iet_to_restricted_rotations(g);
        std::string text = print_factorization(f);
        Factorization back = parse_factorization(text);
        EXPECT_EQ(back.factors, f.factors);
        EXPECT_EQ(back.kinds, f.kinds);
        EXPECT_EQ(back.product(), g);
        EXPECT_EQ(print_factorization(back), text);
    }
}

TEST(CommutatorDocument, ByteExactRoundTrip) {
    for (int s = 0; s < 30; ++s) {
        FieldSpec F = s % 2 ? Q2 : FieldSpec{};
        PwMap phi = random_element(GroupId::faiet(), 4, s, F);
        auto ps = express_as_commutators(phi, GroupId::faiet());
        std::string text = print_commutators(ps, F);
        auto back = parse_commutators(text);
        EXPECT_EQ(product_of(back, F), phi);
        EXPECT_EQ(print_commutators(back, F), text);
    }
}
