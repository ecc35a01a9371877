#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbline/phase.hpp"

using namespace orbline;

namespace {

KClass eps(const Field* f, int s, int i) { return eps_vector(f, {s, i}); }

// log((1 - y^2)/(1 - y)^2) = sum over odd k of 2 y^k / k, with y = x^{kappa/2}
std::vector<Rat> sqrt_pattern(int kappa, int N) {
    std::vector<Rat> c(N + 1, Rat(0));
    const int h = kappa / 2;
    for (int k = 1; k * h <= N; k += 2) c[k * h] = frac(2, k);
    return c;
}

}  // namespace

TEST_CASE("direct and closed agree on basis pairs") {
    for (int n : {4, 5}) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                auto a = KClass::basis(f, i), b = KClass::basis(f, j);
                auto d = phase_direct(a, b, 12), c = phase_closed(a, b, 12);
                auto diff = d.first_difference(c);
                CHECK_MESSAGE(!diff, i, " ", j, " ", diff.value_or(""));
            }
        for (const auto& e : e_set(f)) CHECK(phase_direct(e, -e, 12) == phase_closed(e, -e, 12));
    }
}

TEST_CASE("phase examples") {
    for (int n : {4, 5, 6}) {
        const Field* f = Field::get(n);
        KClass e3 = eps(f, 3, 1);
        auto d = phase_direct(e3, -e3, 16);
        CHECK(d.head.is_zero());
        CHECK(d.log_coeff.is_zero());
        // (lambda1 - lambda2)/(sqrt(lambda1) - sqrt(lambda2))^2 expanded in x
        auto pat = sqrt_pattern(f->kappa, 16);
        for (int k = 1; k <= 16; ++k) CHECK(d.x[k] == Scalar(f, pat[k]));

        CHECK(phase_closed(e3, KClass(f), 5).x[3].is_zero());
        for (int i = 1; i <= n - 2; ++i) {
            auto ex = phase_exponents(eps(f, 1, i), eps(f, 1, i));
            for (int s = 1; s <= f->kappa; ++s) CHECK(ex[s - 1] == (s % (n - 2) == 0 ? 1 : 0));
        }
        CHECK_THROWS_AS(phase_direct(e3, e3, 0), UsageError);
    }
}

TEST_CASE("H tables agree with psi") {
    for (int n : {4, 5, 6}) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                auto a = KClass::basis(f, i), b = KClass::basis(f, j);
                CHECK(h_intersection(psi_map(a), psi_map(b)) == Scalar(f, inter_pair(a, b)));
            }
        for (int i = 0; i <= n; ++i) CHECK(h_sigma(psi_map(KClass::basis(f, i))) == psi_map(sigma(KClass::basis(f, i))));
    }
}

TEST_CASE("phase limit identity") {
    for (int n : {4, 5, 6}) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) CHECK(phase_limit_lhs(f, i, j, 14) == phase_limit_rhs(f, i, j, 14));
    }
}

TEST_CASE("b tilde values") {
    for (int n : {4, 5, 6, 7}) {
        const Field* f = Field::get(n);
        CHECK(b_tilde(eps(f, 2, 1)) == PuiseuxLog::constant(Scalar(f, frac(-1, 4))));
        CHECK(b_tilde(eps(f, 3, 1)) == PuiseuxLog::constant(Scalar(f, frac(1, 4))));
        for (int i = 1; i <= n - 2; ++i) CHECK(b_tilde(-eps(f, 1, i)) == b_tilde(eps(f, 1, i)));
        CHECK_THROWS_AS(b_tilde(KClass::one(f)), NotInE);
    }
}

TEST_CASE("b from limit") {
    for (int n : {4, 5, 6, 7}) {
        const Field* f = Field::get(n);
        auto lam = [&](const Rat& r) { return PuiseuxLog::term(f, r, 0, Scalar(f, Rat(1))); };
        auto r3 = b_from_limit(eps(f, 3, 1));
        CHECK(r3.raw == lam(Rat(1)) * Scalar(f, Rat(-4)));
        CHECK(r3.sign == Cyclotomic(f, Rat(-1)));
        CHECK(r3.value == lam(Rat(1)) * Scalar(f, Rat(4)));
        CHECK(b_from_limit(eps(f, 2, 1)).value == lam(Rat(1)) * Scalar(f, Rat(-4)));
        for (int i = 1; i <= n - 2; ++i) {
            Scalar c = Scalar(Cyclotomic::eta_j(f, 1, i)) * Scalar::symbol(f, kNQ, -1) * Rat(n - 2);
            CHECK(b_from_limit(eps(f, 1, i)).value == lam(1 + frac(1, n - 2)) * c);
        }
        for (const auto& e : e_set(f)) CHECK(b_from_limit(e).value == lam(Rat(1)) * b_tilde(e).inverse());
        CHECK_THROWS_AS(b_from_limit(KClass::L(f)), NotInE);
    }
}
