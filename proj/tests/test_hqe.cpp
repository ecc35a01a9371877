#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbline/hqe.hpp"
#include "orbline/sampling.hpp"

using namespace orbline;

namespace {

constexpr Frame Qf = Frame::kQ, Tf = Frame::kT;

// t-frame vertex operators written straight from their definitions
Poly gamma1_t(const Coords& c, int side, int sign, const Poly& tau) {
    Poly r = tau, cr = c.zero(Tf);
    for (int l = 1; l <= (c.f->n - 2) * (c.K + 1); ++l) {
        const int v = c.tv(side, 1, l);
        r = r.translate(v, c.var(Tf, Coords::z, -l) * frac(-sign, l));
        cr += c.var(Tf, v) * c.var(Tf, Coords::z, l) * Rat(sign);
    }
    return exp_series(cr) * r;
}

Poly gamma_a_t(const Coords& c, int side, int a, int zsign, const Poly& tau) {
    Poly r = tau, cr = c.zero(Tf);
    for (int l = 0; l <= c.K; ++l) {
        const int v = c.tv(side, a, 2 * l + 1);
        const int s = zsign < 0 ? -1 : 1;  // (zsign z)^{odd}
        r = r.translate(v, c.var(Tf, Coords::z, -2 * l - 1) * frac(-2 * s, 2 * l + 1));
        cr += c.var(Tf, v) * c.var(Tf, Coords::z, 2 * l + 1) * Rat(s);
    }
    return exp_series(cr) * r;
}

// q_{3,1,k} -> -q_{3,1,k} on both sides, which swaps t_2 and t_3
Poly swap23(const Coords& c, const Poly& p) {
    std::vector<std::optional<Poly>> img(c.q_ring->size());
    for (int side = 1; side <= 2; ++side)
        for (int k = 0; k <= c.K; ++k) img[c.qv(side, c.f->n, k)] = -c.var(Qf, c.qv(side, c.f->n, k));
    return linear_substitute(p, c.q_ring, img, p.cap());
}

Poly identify_sides(const Coords& c, const Poly& p) {
    std::vector<int> to(c.q_ring->size());
    for (int v = 0; v < c.q_ring->size(); ++v) to[v] = v < c.side_base(2) ? v : v - c.per_side();
    return p.map_vars(c.q_ring, to, p.cap());
}

Poly flip_z(const Coords& c, const Poly& p) {
    Poly out(p.field(), p.ring(), p.cap());
    for (const auto& [m, s] : p.terms()) out.add(m, m[Coords::z] % 2 ? -s : s);
    (void)c;
    return out;
}

}  // namespace

TEST_CASE("change of variables") {
    for (int n : {4, 5, 6}) {
        const Field* f = Field::get(n);
        auto c = Coords::make(f, 2, 3);
        const Poly ie = c->var(Qf, Coords::h, -1);
        // t_{2,1} -> (q_{2,1,0} + q_{3,1,0}) / (sqrt2 eps)
        Poly t21 = change_vars(*c, Tf, c->var(Tf, c->tv(1, 2, 1)));
        CHECK(t21 == (c->var(Qf, c->qv(1, n - 1, 0)) + c->var(Qf, c->qv(1, n, 0))) * ie *
                         Scalar::sqrt2(f).inverse());
        // t_{1,n-2} -> q_{0,1,0} / ((n-2) eps)
        Poly t1 = change_vars(*c, Tf, c->var(Tf, c->tv(2, 1, n - 2)));
        CHECK(t1 == c->var(Qf, c->qv(2, 1, 0)) * ie * frac(1, n - 2));
        // t_{1,1} carries (n-2)^{-1/(n-2)}
        Poly t11 = change_vars(*c, Tf, c->var(Tf, c->tv(1, 1, 1)));
        CHECK(t11 == c->var(Qf, c->qv(1, 2, 0)) * ie * Scalar::symbol(f, kR, -1));
        // t_{0,k} -> y_k / eps
        CHECK(change_vars(*c, Tf, c->var(Tf, c->tv(1, 0, 2))) == c->var(Qf, c->qv(1, 0, 2)) * ie);

        std::mt19937 rng(11 + n);
        for (int t = 0; t < 4; ++t) {
            Poly p = random_tau(c, rng, 6).on(1, Qf) * random_tau(c, rng, 3).on(2, Qf) * c->var(Qf, Coords::d);
            Poly pt = change_vars(*c, Qf, p);
            CHECK(change_vars(*c, Tf, pt) == p);
            CHECK(change_vars(*c, Qf, change_vars(*c, Tf, pt)) == pt);
        }
        CHECK_THROWS_AS(c->qv(1, 1, 3), CapExceeded);
        CHECK_THROWS_AS(c->tv(1, 2, 2), UsageError);
    }
}

TEST_CASE("tau text form round trip") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    FockSpace fs = FockSpace::make(f, 2, 4);
    std::mt19937 rng(3);
    TauFunction t = random_tau(c, rng, 6);
    Poly q = t.to_fock(fs);
    CHECK(TauFunction::from_fock(c, fs, q).p == t.p);
    CHECK(TauFunction::from_fock(c, fs, parse_fock(fs, serialize(fs, q))).p == t.p);
    // q_{0,0,1} = y_1 - 1
    Poly q001 = fs.var(fs.q(0, 1));
    CHECK(TauFunction::from_fock(c, fs, q001).p == c->var(Qf, c->qv(1, 0, 1)) - c->one(Qf));
    CHECK(TauFunction::from_fock(c, fs, fs.var(fs.q(0, 0))).p == c->var(Qf, Coords::x));
    FockSpace wide = FockSpace::make(f, 4, 4);
    CHECK_THROWS_AS(TauFunction::from_fock(c, wide, wide.var(wide.q(1, 3))), CapExceeded);
}

TEST_CASE("admissible tau") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    auto mk = [&](const Poly& p) { return TauFunction{c, p}; };
    const Poly one = c->one(Qf);
    CHECK(admissible_tau(mk(one)));
    CHECK(admissible_tau(mk(one + c->var(Qf, c->qv(1, 1, 0)))));   // phi01, k = 0
    CHECK(admissible_tau(mk(one + c->var(Qf, Coords::x) * c->var(Qf, Coords::h, -1))));
    CHECK_FALSE(admissible_tau(mk(one + c->var(Qf, Coords::x))));
    // phi_{1,1} psi^1: 1 + 1/2 - 1 = 1/2, balanced by Q^{1}: -1/2
    CHECK(admissible_tau(mk(one + c->var(Qf, c->qv(1, 2, 1)) * Scalar::symbol(f, kNQ))));
    CHECK_FALSE(admissible_tau(mk(one + c->var(Qf, c->qv(1, 2, 1)))));
}

TEST_CASE("q-frame vertex operators match the t-frame definitions") {
    for (int n : {4, 5}) {
        const Field* f = Field::get(n);
        auto c = Coords::make(f, 2, 3);
        std::mt19937 rng(21 + n);
        for (int t = 0; t < 3; ++t) {
            TauFunction tau = random_tau(c, rng, 5);
            for (int side = 1; side <= 2; ++side) {
                Poly tq = tau.on(side, Qf), tt = tau.on(side, Tf);
                for (int s : {1, -1}) {
                    CHECK(change_vars(*c, Qf, gamma1_q(*c, side, s).apply(tq)) == gamma1_t(*c, side, s, tt));
                    for (int a : {2, 3})
                        CHECK(change_vars(*c, Qf, gamma_odd_q(*c, side, a, s).apply(tq)) ==
                              gamma_a_t(*c, side, a, s, tt));
                }
            }
        }
    }
}

TEST_CASE("one-forms: b tilde pullbacks, sector weights and limits agree") {
    for (int n = 4; n <= 8; ++n) {
        const Field* f = Field::get(n);
        const PuiseuxLog lambda = PuiseuxLog::term(f, Rat(1), 0, Scalar(f, Rat(1)));
        for (const KClass& e : e_set(f)) {
            auto [lab, sgn] = classify_eps(e);
            (void)sgn;
            const PuiseuxLog b = b_tilde(e);
            CHECK(pullback_b(b, lab.sector) == sector_one_form(e));
            const LimitResult lim = b_from_limit(e);
            CHECK(lim.value * b == lambda);
        }
        const KClass e3 = eps_vector(f, {3, 1});
        CHECK(b_from_limit(e3).value == lambda * Scalar(f, Rat(4)));
        const OneForm w2 = sector_one_form(eps_vector(f, {2, 1}));
        CHECK(w2 == OneForm{Scalar(f, frac(-1, 2)), -1});
        const OneForm w1 = sector_one_form(eps_vector(f, {1, n - 2}));
        CHECK(w1 == OneForm{-novikov_c(f), -2});
    }
}

TEST_CASE("sector values on the vacuum") {
    for (int n : {4, 5}) {
        const Field* f = Field::get(n);
        auto c = Coords::make(f, 2, 3);
        TauFunction one{c, c->one(Qf)};
        HqeSystem h(one, one);
        CHECK(h.sector(1, 0, 0).is_zero());
        CHECK(h.sector(2, 0, 0) == c->scalar(Qf, Scalar(f, frac(1, 2))));
        CHECK(h.sector(3, 0, 0) == c->scalar(Qf, Scalar(f, frac(-1, 2))));
        CHECK(h.residual(0, 0).is_zero());
    }
    // n = 4, m = 1, r = 0: 1 + C^2 ([z^2] e^{-sum D_l z^l} + (eps D + 1/2) D0_1 / 2) in the t frame
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    TauFunction one{c, c->one(Qf)};
    HqeSystem h(one, one);
    auto dt = [&](int fam, int l) { return c->var(Tf, c->tv(1, fam, l)) - c->var(Tf, c->tv(2, fam, l)); };
    const Scalar C = novikov_c(f);
    Poly expect = c->one(Tf) +
                  (dt(1, 1) * dt(1, 1) * frac(1, 2) - dt(1, 2) +
                   (c->var(Tf, Coords::h) * c->var(Tf, Coords::d) + c->one(Tf) * frac(1, 2)) * dt(0, 1) * frac(1, 2)) *
                      (C * C);
    CHECK(change_vars(*c, Qf, h.sector(1, 1, 0)) == expect);
    CHECK(h.sector(2, 1, 0) == c->scalar(Qf, Scalar(f, frac(-1, 2))));
}

TEST_CASE("sector symmetries") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    std::mt19937 rng(8);
    for (int t = 0; t < 3; ++t) {
        TauFunction a = random_tau(c, rng, 5), b = random_tau(c, rng, 5);
        // parity of the sector-3 integrand at tau' = tau'', t' = t''
        Poly integrand =
            gamma_odd_q(*c, 1, 3, 1).apply(a.on(1, Qf)) * gamma_odd_q(*c, 2, 3, -1).apply(a.on(2, Qf));
        Poly diag = identify_sides(*c, integrand);
        CHECK(diag == flip_z(*c, diag));
        // t_2 <-> t_3 exchanges sectors 2 and 3 up to (-1)^{m+1}
        TauFunction sa{c, swap23(*c, a.p)}, sb{c, swap23(*c, b.p)};
        HqeSystem h(a, b), hs(sa, sb);
        for (int m = -1; m <= 2; ++m)
            for (int r = 0; r <= 1; ++r)
                CHECK(h.sector(2, m, r) == swap23(*c, hs.sector(3, m, r)) * Rat(m % 2 ? 1 : -1));
    }
}

TEST_CASE("residual is homogeneous for the q, x, eps grading") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    std::mt19937 rng(9);
    auto homogeneous = [&](TauFunction t) {
        Poly p(f, c->q_ring, c->D);
        for (const auto& [m, s] : t.p.terms()) {
            Mono mm = m;
            int w = m[Coords::x];
            for (int v = c->side_base(1); v < c->side_base(2); ++v) w += m[v];
            mm[Coords::h] = static_cast<std::int8_t>(-w);
            p.add(mm, s);
        }
        return TauFunction{c, p};
    };
    auto weight = [&](const Mono& m) {
        int w = m[Coords::x] + m[Coords::h] - m[Coords::d];
        for (int v = c->side_base(1); v < c->q_ring->size(); ++v) w += m[v];
        return w;
    };
    for (int t = 0; t < 2; ++t) {
        TauFunction a = homogeneous(random_tau(c, rng, 5)), b = homogeneous(random_tau(c, rng, 5));
        HqeSystem h(a, b);
        for (int m = -1; m <= 1; ++m) {
            Poly v = h.residual(m, 1);
            CHECK_FALSE(v.is_zero());
            bool ok = true;
            for (const auto& [mono, s] : v.terms()) ok = ok && weight(mono) == 0;
            CHECK(ok);
        }
    }
}

TEST_CASE("operator helpers") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 2, 3);
    const Poly x = c->var(Qf, Coords::x), D = c->var(Qf, Coords::d);
    // D o x = x D + 1
    CHECK(compose(D, x) == x * D + c->one(Qf));
    // (x D)^# = -D o x = -x D - 1
    CHECK(adjoint(x * D) == -(x * D) - c->one(Qf));
    std::mt19937 rng(4);
    for (int t = 0; t < 5; ++t) {
        Poly a = random_tau(c, rng, 3).p * (D + x), b = random_tau(c, rng, 3).p * (D * D - x);
        CHECK(adjoint(adjoint(a)) == a);
        CHECK(adjoint(compose(a, b)) == compose(adjoint(b), adjoint(a)));
    }
}

TEST_CASE("windows") {
    const Field* f = Field::get(4);
    auto c = Coords::make(f, 1, 2);
    TauFunction one{c, c->one(Qf)};
    HqeSystem h(one, one);
    CHECK_THROWS_AS(h.sector(1, 0, 2), CapExceeded);
    CHECK_THROWS_AS(h.sector(4, 0, 0), UsageError);
    CHECK_THROWS_AS(h.sector(2, 0, -1), UsageError);
    CHECK_NOTHROW(sector_residual(3, one, one, 2, 1));
}
