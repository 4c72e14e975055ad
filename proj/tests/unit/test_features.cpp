#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "campus/forecast/baseline.hpp"
#include "campus/forecast/features.hpp"
#include "campus/forecast/splits.hpp"

using namespace campus::forecast;
using campus::RateProfile;

TEST_CASE("fourier features at reference angles") {
    auto f = fourier_features(0.0, 24.0, 1);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(f[1] == Catch::Approx(1.0));

    f = fourier_features(6.0, 24.0, 1); // quarter period
    CHECK(f[0] == Catch::Approx(1.0));
    CHECK(f[1] == Catch::Approx(0.0).margin(1e-15));

    f = fourier_features(12.0, 24.0, 2); // half period
    REQUIRE(f.size() == 4);
    CHECK(f[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(f[1] == Catch::Approx(-1.0));
    CHECK(f[2] == Catch::Approx(0.0).margin(1e-12));
    CHECK(f[3] == Catch::Approx(1.0));

    CHECK_THROWS_AS(fourier_features(1.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(fourier_features(1.0, 24.0, 0), std::invalid_argument);
}

TEST_CASE("fourier features are exactly periodic") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> t(0.0, 500.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = t(rng);
        for (double p : {24.0, 120.0}) {
            const auto a = fourier_features(x, p, 2);
            const auto b = fourier_features(x + p, p, 2);
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i] == Catch::Approx(b[i]).epsilon(0).margin(1e-12));
        }
    }
}

namespace {

RateProfile hourly_series(int days, double value = 5.0) {
    RateProfile p;
    p.values.assign(static_cast<std::size_t>(days) * 24, value);
    return p;
}

} // namespace

TEST_CASE("build_direct_set row arithmetic") {
    // 11 days of history, 1-day horizon, 10 daily lags -> exactly 24 rows
    FeatureSpec spec;
    auto set = build_direct_set(hourly_series(11), spec, 1);
    CHECK(set.X.rows() == 24);
    CHECK(set.y.size() == 24);
    // intercept + 2 periods * 2 pairs * 2 + 10 lags
    CHECK(set.X.cols() == 1 + 8 + 10);
}

TEST_CASE("build_direct_set lags are constant for a constant series") {
    FeatureSpec spec;
    auto set = build_direct_set(hourly_series(12, 7.5), spec, 1);
    const long lag_start = set.X.cols() - spec.lag_days;
    for (long r = 0; r < set.X.rows(); ++r)
        for (long c = lag_start; c < set.X.cols(); ++c) CHECK(set.X(r, c) == 7.5);
}

TEST_CASE("build_direct_set with no lags uses the full series") {
    FeatureSpec spec;
    spec.lag_days = 0;
    auto set = build_direct_set(hourly_series(2), spec, 1);
    CHECK(set.X.rows() == 48);
    CHECK(set.X.cols() == 9); // intercept + fourier only
}

TEST_CASE("build_direct_set names the required history length") {
    FeatureSpec spec;
    try {
        build_direct_set(hourly_series(5), spec, 1);
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("241") != std::string::npos);
    }
}

TEST_CASE("build_direct_set lag features reference the right slots") {
    RateProfile history;
    for (int t = 0; t < 24 * 12; ++t) history.values.push_back(static_cast<double>(t));
    FeatureSpec spec;
    spec.lag_days = 3;
    auto set = build_direct_set(history, spec, 2);
    // first row predicts t = 24*(2+2) = 96; lags at 48, 24, 0
    const long lag0 = set.X.cols() - 3;
    CHECK(set.y(0) == 96.0);
    CHECK(set.X(0, lag0) == 48.0);
    CHECK(set.X(0, lag0 + 1) == 24.0);
    CHECK(set.X(0, lag0 + 2) == 0.0);
}

TEST_CASE("build_direct_set threads extra flag columns through") {
    FeatureSpec spec;
    spec.lag_days = 2;
    spec.extra_flags = {"teaching_period"};
    RateProfile history = hourly_series(4, 3.0);
    std::map<std::string, std::vector<double>> extras;
    extras["teaching_period"].assign(history.values.size(), 0.0);
    for (std::size_t t = 48; t < history.values.size(); ++t) extras["teaching_period"][t] = 1.0;

    auto set = build_direct_set(history, spec, 1, extras);
    const auto names = set.feature_names;
    const auto it = std::find(names.begin(), names.end(), "teaching_period");
    REQUIRE(it != names.end());
    const long col = it - names.begin();
    // first row predicts t = 48, which is inside the teaching period
    CHECK(set.X(0, col) == 1.0);

    // missing column is an error
    CHECK_THROWS_AS(build_direct_set(history, spec, 1, {}), std::invalid_argument);
}

TEST_CASE("baseline profile averages each hour slot") {
    RateProfile two_days;
    two_days.values.assign(48, 0.0);
    two_days.values[9] = 10.0;
    two_days.values[33] = 20.0; // slot 9 the next day
    auto base = baseline_profile(two_days);
    REQUIRE(base.values.size() == 24);
    CHECK(base.values[9] == 15.0);
    CHECK(base.values[10] == 0.0);
}

TEST_CASE("baseline of one day is that day") {
    RateProfile one_day;
    for (int h = 0; h < 24; ++h) one_day.values.push_back(static_cast<double>(h * h));
    auto base = baseline_profile(one_day);
    for (int h = 0; h < 24; ++h) CHECK(base.values[h] == one_day.values[h]);
    CHECK_THROWS_AS(baseline_profile(RateProfile{}), std::invalid_argument);
}

TEST_CASE("baseline of a constant history is constant") {
    auto base = baseline_profile(hourly_series(7, 3.25));
    for (double v : base.values) CHECK(v == 3.25);
}

TEST_CASE("rolling splits expand the training window") {
    auto folds = rolling_splits(10, 2, 2);
    REQUIRE(folds.size() == 2);
    CHECK(folds[0].train == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
    CHECK(folds[0].test == std::vector<std::size_t>{6, 7});
    CHECK(folds[1].train == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(folds[1].test == std::vector<std::size_t>{8, 9});
}

TEST_CASE("single fold trains on everything but the tail") {
    auto folds = rolling_splits(10, 1, 3);
    REQUIRE(folds.size() == 1);
    CHECK(folds[0].train.size() == 7);
    CHECK(folds[0].test == std::vector<std::size_t>{7, 8, 9});
}

TEST_CASE("rolling splits reject degenerate geometry") {
    CHECK_THROWS_AS(rolling_splits(10, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(rolling_splits(10, 5, 2), std::invalid_argument);
}

TEST_CASE("rolling splits never leak the future into training") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::size_t> n(10, 100), f(1, 4), len(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ni = n(rng), nf = f(rng), tl = len(rng);
        if (nf * tl >= ni) continue;
        for (const auto& fold : rolling_splits(ni, nf, tl)) {
            REQUIRE(!fold.train.empty());
            REQUIRE(!fold.test.empty());
            const std::size_t max_train = *std::max_element(fold.train.begin(), fold.train.end());
            const std::size_t min_test = *std::min_element(fold.test.begin(), fold.test.end());
            CHECK(max_train < min_test);
        }
    }
}

TEST_CASE("one_hot drops the first level") {
    auto [cols, names] = one_hot({"lecture", "lab", "lecture", "tutorial"}, "type");
    REQUIRE(cols.size() == 2);
    CHECK(names[0] == "type=lab");
    CHECK(names[1] == "type=tutorial");
    CHECK(cols[0] == std::vector<double>{0, 1, 0, 0});
    CHECK(cols[1] == std::vector<double>{0, 0, 0, 1});
}
