#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "lrd/errors.hpp"
#include "lrd/series.hpp"
#include "lrd/synth.hpp"

using namespace lrd;
using lrd::testing::tcp_v4;

namespace {

std::vector<double> vals(std::initializer_list<double> v) { return v; }

}  // namespace

TEST_CASE("bin_series examples")
{
    const std::vector<PacketRecord> recs = {tcp_v4(0.05, 1, 80, 100), tcp_v4(0.30, 1, 80, 200),
                                            tcp_v4(0.45, 1, 80, 300)};
    const auto bytes = bin_series(recs, 100, Measure::Bytes, Timestamp{0});
    CHECK(bytes.values == vals({100, 0, 0, 200, 300}));
    const auto pkts = bin_series(recs, 100, Measure::Packets, Timestamp{0});
    CHECK(pkts.values == vals({1, 0, 0, 1, 1}));
    CHECK_THROWS_AS(bin_series({}, 100, Measure::Bytes, Timestamp{0}), EmptyInput);
    CHECK_THROWS_AS(bin_series(recs, 100, Measure::Bytes, Timestamp{100'000}), std::invalid_argument);
    CHECK_THROWS_AS(bin_series(recs, 0, Measure::Bytes, Timestamp{0}), std::invalid_argument);
}

TEST_CASE("bin_series with a fixed bin count")
{
    const std::vector<PacketRecord> recs = {tcp_v4(0.05, 1, 80, 100), tcp_v4(0.30, 1, 80, 200),
                                            tcp_v4(0.45, 1, 80, 300)};
    CHECK(bin_series(recs, 100, Measure::Bytes, Timestamp{0}, 4).values == vals({100, 0, 0, 200}));
    CHECK(bin_series(recs, 100, Measure::Bytes, Timestamp{200'000}, 3).values == vals({0, 200, 300}));
    CHECK(bin_series({}, 1000, Measure::Bytes, Timestamp{0}, 3).values == vals({0, 0, 0}));
}

TEST_CASE("binning conserves bytes")
{
    std::mt19937_64 rng(1);
    std::vector<PacketRecord> recs;
    std::uint64_t total = 0;
    for (int i = 0; i < 3000; ++i) {
        auto r = lrd::testing::random_record(rng);
        r.ts = Timestamp{static_cast<std::int64_t>(rng() % 60'000'000)};
        total += r.length;
        recs.push_back(r);
    }
    for (const std::int64_t iv : {100, 500, 1000, 10000}) {
        const auto s = bin_series(recs, iv, Measure::Bytes, Timestamp{0});
        CHECK(std::accumulate(s.values.begin(), s.values.end(), 0.0) == static_cast<double>(total));
        const auto p = bin_series(recs, iv, Measure::Packets, Timestamp{0});
        CHECK(std::accumulate(p.values.begin(), p.values.end(), 0.0) == 3000.0);
    }
}

TEST_CASE("aggregate_level examples")
{
    const auto a = vals({1, 2, 3, 4});
    CHECK(aggregate_level(a, 2).values == vals({1.5, 3.5}));
    CHECK(aggregate_level(vals({5, 5, 5, 5, 5, 5}), 3).values == vals({5, 5}));
    const auto t = aggregate_level(vals({1, 2, 3, 4, 5}), 2);
    CHECK(t.values == vals({1.5, 3.5}));
    CHECK(t.base_length == 5);
    CHECK(aggregate_level(a, 1).values == a);
    CHECK_THROWS_AS(aggregate_level(a, 5), BlockTooLarge);
    CHECK_THROWS_AS(aggregate_level(a, 0), std::invalid_argument);
}

TEST_CASE("aggregation preserves the mean and composes")
{
    const auto x = gen_iid_gaussian(6000, 4.0, 9);
    for (const std::size_t m : {2u, 3u, 7u, 50u, 999u}) {
        const auto agg = aggregate_level(x, m);
        const std::size_t used = m * (x.size() / m);
        const double base = std::accumulate(x.begin(), x.begin() + static_cast<long>(used), 0.0) / double(used);
        const double am = std::accumulate(agg.values.begin(), agg.values.end(), 0.0) / double(agg.values.size());
        CHECK(am == doctest::Approx(base).epsilon(1e-12));
    }
    for (const auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 3}, {4, 5}, {10, 6}}) {
        const auto twice = aggregate_level(aggregate_level(x, a).values, b).values;
        const auto once = aggregate_level(x, a * b).values;
        REQUIRE(twice.size() == once.size());
        for (std::size_t i = 0; i < once.size(); ++i) CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-12));
    }
}

TEST_CASE("iid aggregation variance scales as 1/m")
{
    const auto x = gen_iid_gaussian(1 << 16, 1.0, 21);
    const double v1 = sample_mean_var(x).variance;
    for (const std::size_t m : {4u, 16u, 64u}) {
        const double vm = sample_mean_var(aggregate_level(x, m).values).variance;
        CHECK(vm * double(m) / v1 == doctest::Approx(1.0).epsilon(0.15));
    }
}

TEST_CASE("sample_mean_var")
{
    const auto a = sample_mean_var(vals({1, 3}));
    CHECK(a.mean == 2.0);
    CHECK(a.variance == 1.0);
    const auto c = sample_mean_var(vals({7, 7, 7, 7}));
    CHECK(c.mean == 7.0);
    CHECK(c.variance == 0.0);
    // Population variance of 0..9 is sum((k - 4.5)^2) / 10 = 82.5 / 10.
    const auto d = sample_mean_var(vals({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
    CHECK(d.mean == doctest::Approx(4.5));
    CHECK(d.variance == doctest::Approx(8.25));
    CHECK_THROWS_AS(sample_mean_var(vals({1})), TooShort);
}

TEST_CASE("series csv")
{
    BinnedSeries s;
    s.interval_ms = 500;
    s.t0 = Timestamp::from_seconds(1700000000);
    s.values = {1, 2.5};
    s.class_id = TrafficClass::Web;
    std::ostringstream out;
    write_series_csv(out, s, "note");
    CHECK(out.str() == "# interval_ms=500,measure=bytes,class=3,t0=1700000000.000000\n# note\nbin_index,value\n0,1\n1,2.5\n");
}

TEST_CASE("measure names")
{
    CHECK(parse_measure("bytes") == Measure::Bytes);
    CHECK(parse_measure("packets") == Measure::Packets);
    CHECK_FALSE(parse_measure("flows").has_value());
    CHECK(format_number(0.1) == "0.1");
}
