#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbline/dtoda.hpp"
#include "orbline/sampling.hpp"

using namespace orbline;

namespace {

constexpr Frame Tf = Frame::kT;

// all side variables and x set to zero
Poly at_origin(const Coords& c, const Poly& p) {
    Poly out(p.field(), p.ring(), p.cap());
    for (const auto& [m, s] : p.terms()) {
        bool keep = m[Coords::x] == 0;
        for (int v = c.side_base(1); keep && v < p.ring()->size(); ++v) keep = m[v] == 0;
        if (keep) out.add(m, s);
    }
    return out;
}

}  // namespace

TEST_CASE("wave functions of the vacuum") {
    const Field* f = Field::get(5);
    auto c = Coords::make(f, 2, 3);
    TauFunction one{c, c->one(Frame::kQ)};
    for (int fam = 1; fam <= 3; ++fam)
        for (int s : {1, -1}) CHECK(make_psi(one, s, fam, 1).psi == c->one(Tf));
    CHECK_THROWS_AS(make_psi(one, 1, 4, 1), UsageError);
}

TEST_CASE("leading coefficients") {
    for (int n : {4, 6}) {
        const Field* f = Field::get(n);
        auto c = Coords::make(f, 2, 3);
        std::mt19937 rng(30 + n);
        for (int t = 0; t < 3; ++t) {
            TauFunction tau = random_tau(c, rng, 4);
            const Poly tt = tau.on(1, Tf);
            for (int s : {1, -1}) {
                // psi_{1,0} tau = tau(x - s eps)
                Poly lead = make_psi(tau, s, 1, 1).coeff(0) * tt;
                Poly shifted = tt.translate(Coords::x, c->var(Tf, Coords::h) * Rat(-s));
                CHECK(lead == shifted);
                for (int fam : {2, 3}) CHECK(make_psi(tau, s, fam, 1).coeff(0) == c->one(Tf));
            }
        }
    }
}

TEST_CASE("psi for an exponential tau") {
    // tau = exp(a t_{2,1}/eps): psi^+_{2,k} = (-2a/eps)^k / k! at t = 0; the rest is truncation
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 4);
    const Rat a = frac(3, 2);
    Poly tt = exp_series(c->var(Tf, c->tv(1, 2, 1)) * c->var(Tf, Coords::h, -1) * a);
    TauFunction tau{c, change_vars(*c, Tf, tt)};
    WaveFunction w = make_psi(tau, 1, 2, 1);
    Rat fact(1), base = -2 * a;
    Rat pw(1);
    for (int k = 0; k <= 2; ++k) {
        if (k > 0) {
            fact *= k;
            pw *= base;
        }
        CHECK(at_origin(*c, w.coeff(k)) == c->var(Tf, Coords::h, -k) * (pw / fact));
    }
}

TEST_CASE("non-invertible tau") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    TauFunction zero_const{c, c->var(Frame::kQ, c->qv(1, 1, 0))};
    CHECK_THROWS_AS(make_psi(zero_const, 1, 1, 1), NonInvertibleTau);
    TauFunction x_const{c, c->one(Frame::kQ) + c->var(Frame::kQ, Coords::x)};
    CHECK_THROWS_AS(make_psi(x_const, 1, 2, 1), NonInvertibleTau);
}

TEST_CASE("vacuum defect at the origin") {
    for (int n : {4, 5, 6}) {
        const Field* f = Field::get(n);
        const int n2 = n - 2;
        auto c = Coords::make(f, 2, 3);
        TauFunction one{c, c->one(Frame::kQ)};
        DTodaSystem d(one, one);
        const Scalar mc = -novikov_c(f);
        for (int m = -2; m <= 2; ++m)
            for (int r = 0; r <= 2; ++r) {
                Rat norm = factorial(r);
                for (int j = 0; j < r; ++j) norm *= n2;
                Scalar expect(f, Rat(0));
                if (m + 1 == n2 * r) expect += mc.pow(m + 1);
                if (1 - m == n2 * r) expect += mc.pow(1 - m);
                expect = expect * (Rat(1) / norm);
                if (r == 0 && m % 2 != 0) expect -= Scalar(f, Rat(1));
                CHECK(at_origin(*c, d.defect(m, r)) == c->scalar(Tf, expect));
            }
        CHECK_THROWS_AS(d.defect(0, 3), CapExceeded);
        CHECK_THROWS_AS(d.defect(0, -1), UsageError);
    }
}

TEST_CASE("dressed bilinear defect matches the HQE residue") {
    for (int n : {4, 5}) {
        const Field* f = Field::get(n);
        auto c = Coords::make(f, 2, 3);
        std::mt19937 rng(50 + n);
        const int pairs = n == 4 ? 2 : 1;
        for (int t = 0; t < pairs; ++t) {
            TauFunction a = random_tau(c, rng, 4), b = random_tau(c, rng, 4);
            DTodaSystem d(a, b);
            HqeSystem h(a, b);
            for (int m = -1; m <= 1; ++m)
                for (int r = 0; r <= 1; ++r) CHECK(d.dressed_defect(m, r) == hqe_in_t_frame(h, *c, m, r));
        }
    }
}

TEST_CASE("single-tau overload") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 1, 2);
    std::mt19937 rng(77);
    TauFunction a = random_tau(c, rng, 3);
    CHECK(bilinear_defect(a, 1, 1) == bilinear_defect(a, a, 1, 1));
    CHECK(bilinear_defect(a, 0, 0) == DTodaSystem(a, a).defect(0, 0));
}
