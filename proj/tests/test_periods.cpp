#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbline/periods.hpp"

using namespace orbline;

namespace {

KClass random_class(const Field* f, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-2, 2);
    std::vector<Rat> c(f->n + 1);
    for (auto& x : c) x = d(rng);
    return KClass(f, c);
}

}  // namespace

TEST_CASE("closed form examples") {
    const Field* f = Field::get(5);
    auto P = calibrated_period(KClass::one(f), -1);
    CHECK(P.comp[0] == PuiseuxLog::term(f, Rat(1), 0, Scalar(f, Rat(1))));
}

TEST_CASE("closed form agrees with the H-side formula through psi_map") {
    std::mt19937 rng(17);
    for (int n : {4, 5, 6, 7}) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int m = -5; m <= 3; ++m)
                CHECK(calibrated_period(KClass::basis(f, i), m).comp == period_on_h(psi_map(KClass::basis(f, i)), m));
        KClass a = random_class(f, rng);
        CHECK(calibrated_period(a, -2).comp == period_on_h(psi_map(a), -2));
    }
}

TEST_CASE("translation invariance") {
    std::mt19937 rng(1);
    for (int n : {4, 6}) {
        const Field* f = Field::get(n);
        for (int t = 0; t < 3; ++t) {
            KClass a = random_class(f, rng);
            for (int m = -5; m <= 5; ++m)
                CHECK(calibrated_period(a, m).derivative() == calibrated_period(a, m + 1));
        }
    }
}

TEST_CASE("linearity") {
    std::mt19937 rng(2);
    const Field* f = Field::get(6);
    for (int t = 0; t < 5; ++t) {
        KClass a = random_class(f, rng), b = random_class(f, rng);
        for (int m : {-3, -1, 0, 2})
            CHECK(calibrated_period(a + b, m) == calibrated_period(a, m) + calibrated_period(b, m));
    }
}

TEST_CASE("monodromy surrogate matches sigma") {
    std::mt19937 rng(4);
    for (int n : {4, 5, 6, 8}) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int m : {-3, -1, 0, 1})
                CHECK(calibrated_period(KClass::basis(f, i), m).monodromy() ==
                      calibrated_period(sigma(KClass::basis(f, i)), m));
        KClass a = random_class(f, rng);
        CHECK(calibrated_period(a, -2).monodromy() == calibrated_period(sigma(a), -2));
    }
}

TEST_CASE("I0 on H") {
    const Field* f = Field::get(6);
    auto I0 = period_on_h(CohVector::basis(f, 0), 0);
    CHECK(I0[0] == PuiseuxLog::constant(Scalar(f, Rat(1))));
    CHECK(I0[1] == PuiseuxLog::term(f, Rat(-1), 0, Scalar(f, frac(1, 4))));
    auto J0 = period_on_h(CohVector::basis(f, 1), 0);
    for (const auto& c : J0) CHECK(c.is_zero());
}

TEST_CASE("f_tilde window") {
    for (int n : {4, 5, 7}) {
        const Field* f = Field::get(n);
        KClass e3 = eps_vector(f, {3, 1});
        auto ft = f_tilde(e3, -2, 2);
        CHECK(ft.size() == 5);
        CHECK(ft.front().first == -2);
        for (const auto& [m, P] : ft) {
            CHECK(P.comp[0].is_zero());
            CHECK(P.comp[1].is_zero());
        }
        CHECK_THROWS_AS(f_tilde(e3, 1, 0), UsageError);
    }
}

TEST_CASE("puiseux basics") {
    const Field* f = Field::get(4);
    auto x = PuiseuxLog::term(f, frac(1, 2), 1, Scalar(f, Rat(3)));
    CHECK_THROWS(PuiseuxLog::term(f, frac(1, 5), 0, Scalar(f, Rat(1))));
    CHECK_THROWS(x * x);
    CHECK((x - x).is_zero());
    auto y = PuiseuxLog::term(f, frac(-1, 2), 0, Scalar::symbol(f, kNQ));
    CHECK(y * y.inverse() == PuiseuxLog::constant(Scalar(f, Rat(1))));
    CHECK(x.truncated(Rat(1), Rat(2)).is_zero());
}
