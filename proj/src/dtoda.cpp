#include "orbline/dtoda.hpp"

namespace orbline {

namespace {

constexpr Frame T = Frame::kT;

Poly xshift(const Coords& c, const Poly& p, int k) {
    return k == 0 ? p : p.translate(Coords::x, c.var(T, Coords::h) * Rat(k));
}

Scalar minus_c_pow(const Field* f, int k) { return (-novikov_c(f)).pow(k); }

}  // namespace

Poly WaveFunction::coeff(int k) const { return psi.coeff(Coords::z, -k); }

Poly series_inverse(const Poly& tau, const Coords& c) {
    Poly t0(tau.field(), tau.ring(), tau.cap());
    for (const auto& [m, s] : tau.terms())
        if (tau.weight(m) == 0) t0.add(m, s);
    if (t0.size() != 1) throw NonInvertibleTau("tau: t-constant part is not a single term");
    const auto& [m0, s0] = *t0.terms().begin();
    if (m0[Coords::x] != 0 || m0[Coords::d] != 0 || m0[Coords::z] != 0)
        throw NonInvertibleTau("tau: t-constant part depends on x");
    Scalar inv_s;
    try {
        inv_s = s0.inverse();
    } catch (const std::exception&) {
        throw NonInvertibleTau("tau: t-constant coefficient is not invertible");
    }
    Poly inv0 = c.var(T, Coords::h, -m0[Coords::h]) * inv_s;
    Poly one = c.one(T);
    Poly u = one - tau * inv0;  // no t-constant part
    Poly sum = one, pw = one;
    for (int k = 1; k <= c.D; ++k) {
        pw = pw * u;
        if (pw.is_zero()) break;
        sum += pw;
    }
    return sum * inv0;
}

WaveFunction make_psi(const TauFunction& tau, int sign, int family, int side) {
    const Coords& c = *tau.c;
    const Field* f = c.f;
    const int n2 = f->n - 2;
    const Poly t = tau.on(side, T);
    Poly num = t;
    if (family == 1) {
        for (int k = 1; k <= n2 * (c.K + 1); ++k)
            num = num.translate(c.tv(side, 1, k), c.var(T, Coords::z, -k) * frac(-sign, k));
        num = xshift(c, num, -sign);
    } else if (family == 2 || family == 3) {
        for (int k = 0; k <= c.K; ++k)
            num = num.translate(c.tv(side, family, 2 * k + 1), c.var(T, Coords::z, -2 * k - 1) * frac(-2 * sign, 2 * k + 1));
    } else {
        throw UsageError("wave function family must be 1, 2 or 3");
    }
    return {sign, family, side, num * series_inverse(t, c)};
}

Poly xi_difference(const Coords& c, int family) {
    const int n2 = c.f->n - 2;
    Poly out = c.zero(T);
    const Poly Dop = c.var(T, Coords::d), eps = c.var(T, Coords::h);
    auto diff = [&](int fam, int l) { return c.var(T, c.tv(1, fam, l)) - c.var(T, c.tv(2, fam, l)); };
    if (family == 1) {
        for (int k = 1; k <= n2 * (c.K + 1); ++k) out += diff(1, k) * c.var(T, Coords::z, k);
        for (int k = 1; k <= c.K; ++k) {
            Rat w = Rat(1) / factorial(k);
            for (int j = 0; j < k; ++j) w /= n2;
            out += diff(0, k) * c.var(T, Coords::z, n2 * k) * (eps * Dop - c.one(T) * (harmonic(k) / n2)) * w;
        }
    } else {
        for (int k = 1; k <= c.K + 1; ++k) out += diff(family, 2 * k - 1) * c.var(T, Coords::z, 2 * k - 1);
        for (int k = 1; k <= c.K; ++k) {
            Rat w = Rat(1) / factorial(k);
            for (int j = 0; j < k; ++j) w /= 2;
            out += diff(0, k) * c.var(T, Coords::z, 2 * k) * eps * Dop * w;
        }
    }
    return out;
}

DTodaSystem::DTodaSystem(const TauFunction& tau1, const TauFunction& tau2) : c_(tau1.c) {
    if (tau2.c != c_) throw UsageError("DTodaSystem: taus over different coordinates");
    const Coords& c = *c_;
    tau1_ = tau1.on(1, T);
    tau2_ = tau2.on(2, T);
    p1p_ = make_psi(tau1, 1, 1, 1).psi;
    p1m_ = make_psi(tau1, -1, 1, 1).psi;
    p2p_ = make_psi(tau2, 1, 1, 2).psi;
    p2m_ = make_psi(tau2, -1, 1, 2).psi;
    for (int a = 0; a < 2; ++a) {
        a1p_[a] = make_psi(tau1, 1, a + 2, 1).psi;
        a2m_[a] = make_psi(tau2, -1, a + 2, 2).psi;
        eodd_[a] = exp_series(xi_difference(c, a + 2));
    }
    const Poly x1 = xi_difference(c, 1);
    e12_ = exp_series(x1);
    e21_ = exp_series(-x1);
}

Poly DTodaSystem::defect(int m, int r) const {
    const Coords& c = *c_;
    const Field* f = c.f;
    const int n2 = f->n - 2;
    if (r < 0) throw UsageError("r must be nonnegative");
    if (r > c.K)
        throw CapExceeded("r = " + std::to_string(r) + " needs a z-window beyond the slice K = " +
                          std::to_string(c.K));
    // (-z/C)^{-m-1} and (-z/C)^{m-1}
    Poly t1 = z_coeff_product(p1p_, compose(e12_, xshift(c, p2m_, m)), -n2 * r + m + 1) * minus_c_pow(f, m + 1);
    Poly t2 = adjoint(z_coeff_product(xshift(c, p2p_, m), compose(e21_, p1m_), -n2 * r - m + 1) *
                      minus_c_pow(f, 1 - m));
    Rat n1 = factorial(r);
    for (int j = 0; j < r; ++j) n1 *= n2;
    Poly lhs = (t1 + t2) * (Rat(1) / n1);

    Poly rhs = c.zero(T);
    for (int a = 0; a < 2; ++a) {
        Poly v = z_coeff_product(a1p_[a], compose(eodd_[a], xshift(c, a2m_[a], m)), -2 * r);
        rhs += a == 0 ? v : v * Rat(m % 2 == 0 ? -1 : 1);
    }
    Rat n2r = factorial(r) * 2;
    for (int j = 0; j < r; ++j) n2r *= 2;
    return lhs - rhs * (Rat(1) / n2r);
}

Poly DTodaSystem::dressed_defect(int m, int r) const {
    return tau1_ * compose(defect(m, r), xshift(*c_, tau2_, m));
}

Poly bilinear_defect(const TauFunction& tau, int m, int r) { return DTodaSystem(tau, tau).defect(m, r); }

Poly bilinear_defect(const TauFunction& tau1, const TauFunction& tau2, int m, int r) {
    return DTodaSystem(tau1, tau2).defect(m, r);
}

Poly hqe_in_t_frame(const HqeSystem& h, const Coords& c, int m, int r) {
    Poly v = change_vars(c, Frame::kQ, h.residual(-m, r));
    return xshift(c, v, m) * Rat(m % 2 == 0 ? -1 : 1);
}

}  // namespace orbline
