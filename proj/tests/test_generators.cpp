#include "gdmatch/errors.hpp"
#include "gdmatch/generators.hpp"
#include "gdmatch/json_io.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace gdm;
using gdm::test::q;

namespace {

std::vector<Scalar> times(const Instance& inst)
{
    std::vector<Scalar> out;
    for (const Request& r : inst.requests()) out.push_back(r.atime);
    return out;
}

} // namespace

TEST(Tightness, SmallestInstance)
{
    Instance inst = tightness_instance(2, Variant::mpmd);
    EXPECT_EQ(times(inst), (std::vector<Scalar>{q(0), q(0), q(3, 2), q(3, 2)}));
    EXPECT_EQ(inst.request(0).pos.index, 0u);
    EXPECT_EQ(inst.request(1).pos.index, 1u);
    EXPECT_EQ(inst.distance(0, 1), q(2));
}

TEST(Tightness, ReleaseTimesForFourPairs)
{
    Instance inst = tightness_instance(4, Variant::mpmd);
    std::vector<Scalar> expected{q(0), q(0), q(5, 4), q(5, 4), q(7, 4), q(7, 4), q(9, 4), q(9, 4)};
    EXPECT_EQ(times(inst), expected);
}

TEST(Tightness, PolaritiesAlternate)
{
    Instance inst = tightness_instance(4, Variant::mbpmd);
    std::vector<int> signs;
    for (const Request& r : inst.requests()) signs.push_back(r.sgn);
    EXPECT_EQ(signs, (std::vector<int>{1, -1, -1, 1, 1, -1, -1, 1}));
}

TEST(Tightness, LastReleaseTime)
{
    for (std::size_t m : {2u, 4u, 10u, 50u}) {
        Instance inst = tightness_instance(m, Variant::mpmd);
        EXPECT_EQ(inst.size(), 2 * m);
        EXPECT_EQ(inst.requests().back().atime, q(1) + q(static_cast<long>(2 * m - 3), m));
    }
}

TEST(Tightness, RejectsOddOrSmall)
{
    EXPECT_THROW(tightness_instance(3, Variant::mpmd), InputError);
    EXPECT_THROW(tightness_instance(0, Variant::mpmd), InputError);
}

TEST(Ring, SixPairLayout)
{
    Instance inst = ring_instance(6);
    ASSERT_EQ(inst.size(), 12u);
    const Scalar eps = q(1, 192);
    EXPECT_EQ(inst.request(0).pos.x, q(0));
    EXPECT_EQ(inst.request(1).pos.x, q(1, 2));
    EXPECT_EQ(inst.request(2).pos.x, q(3, 4));
    EXPECT_EQ(inst.request(2).atime, q(4, 6) * eps);
    for (RequestId u = 3; u < 6; ++u) {
        EXPECT_EQ(inst.request(u).pos.x, inst.request(u - 3).pos.x);
        EXPECT_EQ(inst.request(u).atime, eps);
    }
    for (std::size_t k = 1; k <= 3; ++k) {
        EXPECT_EQ(inst.request(4 + 2 * k).pos.x, q(0));
        EXPECT_EQ(inst.request(5 + 2 * k).pos.x, q(3, 4));
        EXPECT_EQ(inst.request(4 + 2 * k).atime, eps * q(static_cast<long>(1 + k)));
    }
}

TEST(Ring, CounterclockwiseHalfStartsOpposite)
{
    Instance inst = ring_instance(6, RingHalf::counterclockwise);
    EXPECT_EQ(inst.request(2).pos.x, q(1, 4));
    EXPECT_THROW(ring_instance(4), InputError);
}

TEST(Random, DeterministicPerSeed)
{
    for (MetricKind kind : {MetricKind::line, MetricKind::matrix, MetricKind::ring, MetricKind::euclidean}) {
        RandomSpec spec;
        spec.m = 5;
        spec.metric = kind;
        spec.variant = Variant::mbpmd;
        spec.seed = 11;
        std::string a = serialize_instance(random_instance(spec));
        EXPECT_EQ(a, serialize_instance(random_instance(spec)));
        spec.seed = 12;
        EXPECT_NE(a, serialize_instance(random_instance(spec)));
    }
}

TEST(Random, EuclideanIsFloat)
{
    RandomSpec spec;
    spec.metric = MetricKind::euclidean;
    spec.m = 3;
    EXPECT_EQ(random_instance(spec).mode(), NumericMode::floating);
    spec.metric = MetricKind::ring;
    EXPECT_EQ(random_instance(spec).mode(), NumericMode::exact);
}
