#include <gtest/gtest.h>

#include "support.hpp"
#include "taulab/json_io.hpp"

using namespace taulab;

namespace {

template <typename F>
std::string error_of(F&& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(JsonPartition, RoundTrip) {
    for (const auto& lam : partitions_up_to(5)) EXPECT_EQ(partition_from_json(to_json(lam)), lam);
    EXPECT_EQ(to_json(Partition{3, 1}).dump(), "[3,1]");
}

TEST(JsonPartition, RejectsMalformed) {
    EXPECT_NE(error_of([] { partition_from_json(json::parse("[1,2]"), "/lambda"); }).find("/lambda"), std::string::npos);
    EXPECT_NE(error_of([] { partition_from_json(json::parse("[2,\"x\"]"), "/lambda"); }).find("/lambda/1"), std::string::npos);
    EXPECT_THROW(partition_from_json(json::parse("{}")), InputError);
    EXPECT_THROW(partition_from_json(json::parse("[2,0]")), InputError);
}

TEST(JsonFrobenius, RoundTrip) {
    for (const auto& lam : partitions_up_to(5)) {
        const auto f = to_frobenius(lam);
        const auto back = frobenius_from_json(to_json(f));
        EXPECT_EQ(back.alpha, f.alpha);
        EXPECT_EQ(back.beta, f.beta);
    }
    EXPECT_THROW(frobenius_from_json(json::parse("{\"alpha\":[1]}")), InputError);
}

TEST(JsonPolynomial, RoundTrip) {
    for (const auto& lam : partitions_up_to(4)) {
        const auto s = schur_in_powersums(lam, 4);
        EXPECT_EQ(power_sum_polynomial_from_json(to_json(s), 4), s);
    }
    const auto j = to_json(schur_in_powersums(Partition{1, 1}, 2));
    EXPECT_EQ(j.dump(), R"([{"coeff":"-1/2","mu":[2]},{"coeff":"1/2","mu":[1,1]}])");
    EXPECT_NE(error_of([] { power_sum_polynomial_from_json(json::parse(R"([{"mu":[3],"coeff":"1"}])"), 2, "/poly"); })
                  .find("/poly/0"),
              std::string::npos);
}

TEST(JsonScalar, Forms) {
    EXPECT_EQ(rational_from_json(json(3), ""), 3);
    EXPECT_EQ(rational_from_json(json("-2/6"), ""), Rational(-1, 3));
    EXPECT_EQ(rational_from_json(json(1.5), ""), Rational(3, 2));
    EXPECT_EQ(scalar_from_json(json::parse("[\"1/2\", -1]"), ""), ComplexRational(Rational(1, 2), Rational(-1)));
    EXPECT_THROW(rational_from_json(json("abc"), "/x"), InputError);
    EXPECT_THROW(scalar_from_json(json::parse("[1,2,3]"), "/x"), InputError);
    EXPECT_EQ(scalar_to_json(Rational(-4, 6)).get<std::string>(), "-2/3");
    EXPECT_EQ(scalar_to_json(ComplexRational(Rational(1), Rational(2))).dump(), R"(["1","2"])");
    for (const char* s : {"0", "-7/3", "12"})
        EXPECT_EQ(to_string(rational_from_json(scalar_to_json(parse_rational(s)), "")), s);
}

TEST(JsonGraph, RoundTripAndErrors) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = taulab::testing::random_graph(rng, 1 + trial % 4, false);
        EXPECT_TRUE(ribbon_graph_from_json(to_json(g)).equivalent(g));
    }
    EXPECT_NE(error_of([] { ribbon_graph_from_json(json::parse(R"({"vertices":[[1,-1]]})"), "graph"); }).find("graph/n"),
              std::string::npos);
    EXPECT_NE(error_of([] { ribbon_graph_from_json(json::parse(R"({"n":1,"vertices":[[1,"a"]]})"), "graph"); })
                  .find("graph/vertices/0/1"),
              std::string::npos);
    EXPECT_THROW(ribbon_graph_from_json(json::parse(R"({"n":1,"vertices":[[1]]})")), InputError);
}

TEST(JsonSources, ParsesAndLocatesErrors) {
    const auto src = sources_from_json(json::parse(R"({"N":2,"C":{"1":[[1,0],[0,"1/2"]],"-1":[[0,[0,1]],[1,0]]}})"));
    EXPECT_EQ(src.size, 2);
    EXPECT_EQ(src.at(1)(1, 1), ComplexRational(Rational(1, 2)));
    EXPECT_EQ(src.at(-1)(0, 1), ComplexRational(Rational(0), Rational(1)));
    EXPECT_FALSE(all_real(src));
    EXPECT_TRUE(all_real(SourceAssignment<ComplexRational>::identity(1, 2)));
    EXPECT_NE(error_of([] { sources_from_json(json::parse(R"({"N":2,"C":{"1":[[1,0],[0]]}})"), "s"); }).find("s/C/1/1"),
              std::string::npos);
    EXPECT_NE(error_of([] { sources_from_json(json::parse(R"({"N":2,"C":{"x":[]}})"), "s"); }).find("s/C/x"),
              std::string::npos);
    EXPECT_THROW(sources_from_json(json::parse(R"({"C":{}})")), InputError);
}

TEST(JsonTimes, Parses) {
    const auto t = times_from_json(json::parse(R"([[1,"1/2"],[[0,1]]])"), "t");
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].values[1], ComplexRational(Rational(1, 2)));
    EXPECT_EQ(t[1].values[0], ComplexRational(Rational(0), Rational(1)));
    EXPECT_NE(error_of([] { times_from_json(json::parse(R"([[1],5])"), "t"); }).find("t/1"), std::string::npos);
}
