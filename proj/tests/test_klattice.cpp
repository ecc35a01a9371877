#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "orbline/klattice.hpp"

using namespace orbline;

namespace {

// Character oracle: rk and chi_{j,p} are ring homomorphisms and deg is a
// derivation along rk, and together they separate K tensor C.  Their values on
// products are predicted from the factors alone.
void check_product_by_characters(const KClass& a, const KClass& b) {
    const Field* f = a.field();
    KClass ab = k_mul(a, b);
    CHECK(rank(ab) == rank(a) * rank(b));
    CHECK(degree(ab) == rank(a) * degree(b) + rank(b) * degree(a));
    for (int j = 1; j <= 3; ++j)
        for (int p = 1; p < f->a[j]; ++p) CHECK(chi(j, p, ab) == chi(j, p, a) * chi(j, p, b));
}

KClass random_class(const Field* f, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<Rat> c(f->n + 1);
    for (auto& x : c) x = d(rng);
    return KClass(f, c);
}

KClass eps(const Field* f, int s, int i) { return eps_vector(f, {s, i}); }

}  // namespace

TEST_CASE("k_mul examples") {
    for (int n = 4; n <= 8; ++n) {
        const Field* f = Field::get(n);
        auto one = KClass::one(f);
        CHECK(KClass::L2(f) * KClass::L3(f) == KClass::L2(f) + KClass::L3(f) - one);
        CHECK(KClass::L(f) * KClass::L(f) == KClass::L(f) * Rat(2) - one);
        KClass lhs = (KClass::L1pow(f, 1) + KClass::L2(f) + KClass::L3(f) - one * Rat(2)) * (one * Rat(2) - KClass::L(f));
        CHECK(lhs == tangent_class(f));
        CHECK(KClass::L1pow(f, 1) * KClass::L1pow(f, n - 3) == KClass::L(f));
    }
}

TEST_CASE("k_mul agrees with character oracle") {
    std::mt19937 rng(5);
    for (int n = 4; n <= 9; ++n) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) check_product_by_characters(KClass::basis(f, i), KClass::basis(f, j));
        for (int t = 0; t < 10; ++t) {
            KClass a = random_class(f, rng), b = random_class(f, rng), c = random_class(f, rng);
            check_product_by_characters(a, b);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK((a * b).is_integral());
        }
    }
}

TEST_CASE("rank, degree, chi examples") {
    for (int n = 4; n <= 8; ++n) {
        const Field* f = Field::get(n);
        for (int i = 1; i <= n - 2; ++i) {
            CHECK(rank(eps(f, 1, i)) == 1);
            CHECK(degree(eps(f, 1, i)) == frac(1, 2) + frac(i, n - 2));
        }
        CHECK(chi(2, 1, KClass::L2(f)) == Cyclotomic(f, Rat(-1)));
        CHECK_THROWS_AS(chi(2, 2, KClass::L2(f)), std::out_of_range);
        CHECK_THROWS_AS(chi(1, n - 2, KClass::L2(f)), std::out_of_range);
    }
}

TEST_CASE("psi map") {
    for (int n = 4; n <= 7; ++n) {
        const Field* f = Field::get(n);
        CHECK(psi_map(KClass(f)).is_zero());
        for (int i = 1; i <= n - 2; ++i) {
            Scalar expect = (Scalar::pi(f) * Scalar(Cyclotomic::imag(f)) * Rat(2 * i + n - 2) - Scalar::euler_gamma(f)) *
                            frac(1, n - 2);
            CHECK(psi_map(eps(f, 1, i))[1] == expect);
        }
        KClass btw = beta_twisted(KClass::L1pow(f, 1));
        CHECK(psi_map(btw)[0].is_zero());
    }
}

TEST_CASE("euler pairing reference values") {
    for (int n = 4; n <= 8; ++n) {
        const Field* f = Field::get(n);
        for (int i = 1; i <= n - 3; ++i) {
            for (int j = 1; j <= n - 3; ++j)
                CHECK(euler_pair(eps(f, 1, i), eps(f, 1, j)) == (i <= j ? frac(1, 2) : frac(-1, 2)));
            CHECK(euler_pair(eps(f, 1, i), eps(f, 2, 1)) == frac(1, 2));
            CHECK(euler_pair(eps(f, 2, 1), eps(f, 1, i)) == frac(-1, 2));
            CHECK(euler_pair(eps(f, 1, i), eps(f, 3, 1)) == 0);
            CHECK(euler_pair(eps(f, 3, 1), eps(f, 1, i)) == 0);
        }
        CHECK(euler_pair(eps(f, 2, 1), eps(f, 2, 1)) == frac(1, 2));
        CHECK(euler_pair(eps(f, 3, 1), eps(f, 3, 1)) == frac(1, 2));
        CHECK(euler_pair(eps(f, 2, 1), eps(f, 3, 1)) == 0);
        CHECK(euler_pair(eps(f, 3, 1), eps(f, 2, 1)) == 0);
    }
}

TEST_CASE("intersection pairing") {
    for (int n = 4; n <= 8; ++n) {
        const Field* f = Field::get(n);
        CHECK(inter_pair(KClass::L1pow(f, 1), KClass::L1pow(f, 1)) == 2);
        CHECK(inter_pair(KClass::L2(f), KClass::L3(f)) == 0);
        KClass kern = KClass::L(f) - KClass::one(f);
        for (int i = 0; i <= n; ++i) CHECK(inter_pair(kern, KClass::basis(f, i)) == 0);
        auto labels = eps_labels(f);
        for (auto a : labels)
            for (auto b : labels) CHECK(inter_pair(eps_vector(f, a), eps_vector(f, b)) == (a == b ? 1 : 0));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                KClass x = KClass::basis(f, i), y = KClass::basis(f, j);
                CHECK(euler_fast(x, y) == euler_pair(x, y));
            }
    }
}

TEST_CASE("serre duality and sigma invariance") {
    for (int n = 4; n <= 7; ++n) {
        const Field* f = Field::get(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                KClass a = KClass::basis(f, i), b = KClass::basis(f, j);
                CHECK(euler_pair(b, a) == -euler_pair(a, sigma_inv(b)));
                CHECK(euler_fast(sigma(a), sigma(b)) == euler_fast(a, b));
            }
    }
}

TEST_CASE("sigma on eps") {
    for (int n = 4; n <= 9; ++n) {
        const Field* f = Field::get(n);
        KClass kern = KClass::L(f) - KClass::one(f);
        for (int i = 1; i <= n - 3; ++i) CHECK(sigma(eps(f, 1, i)) == eps(f, 1, i + 1));
        CHECK(sigma(eps(f, 1, n - 2)) == eps(f, 1, 1) + kern);
        CHECK(sigma(eps(f, 2, 1)) == -eps(f, 2, 1) + kern);
        CHECK(sigma(eps(f, 3, 1)) == -eps(f, 3, 1));
        for (int i = 0; i <= n; ++i) {
            CHECK(sigma_inv(sigma(KClass::basis(f, i))) == KClass::basis(f, i));
        }
    }
}

TEST_CASE("reflections") {
    for (int n = 4; n <= 6; ++n) {
        const Field* f = Field::get(n);
        auto roots = reflection_vectors(f, 1);
        std::set<KClass> mod;
        for (const auto& v : roots) {
            CHECK(inter_fast(v, v) == 2);
            mod.insert(canonical_mod_kernel(v));
        }
        CHECK(static_cast<int>(mod.size()) == 2 * n * (n - 1));
        for (const auto& a : mod)
            for (const auto& x : mod) CHECK(mod.count(canonical_mod_kernel(reflect(a, x))) == 1);
        const KClass& a = *mod.begin();
        CHECK(reflect(a, a) == -a);
        CHECK(reflect(a, reflect(a, *mod.rbegin())) == *mod.rbegin());
        CHECK_THROWS_AS(reflect(KClass::one(f) * Rat(2), a), NotARoot);
    }
}

TEST_CASE("H side") {
    for (int n = 4; n <= 7; ++n) {
        const Field* f = Field::get(n);
        auto p01 = CohVector::basis(f, 1);
        CHECK(theta_apply(p01) == p01 * Scalar(f, frac(-1, 2)));
        CHECK(rho_apply(CohVector::basis(f, 0)) == p01 * Scalar(f, frac(1, n - 2)));
        if (n > 4) CHECK(poincare(CohVector::basis(f, 2), CohVector::basis(f, n - 2)) == Scalar(f, frac(1, n - 2)));
    }
}
