#include "orbline/periods.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace orbline {

namespace {

// closed form for a single basis class, m <= -1
CalPeriod closed_negative(const KClass& alpha, int m) {
    const Field* f = alpha.field();
    const int ell = -m - 1;
    CalPeriod P{alpha, m, std::vector<PuiseuxLog>(f->n + 1, PuiseuxLog(f))};
    const Rat rk = rank(alpha);
    P.comp[0] = PuiseuxLog::term(f, Rat(ell + 1), 0, Scalar(f, rk / factorial(ell + 1)));

    // (lambda^ell / ell!) (rk (log lambda - C_ell)/(n-2) + 2 pi i deg)
    const Rat pre = 1 / factorial(ell);
    Scalar c_ell = Scalar::symbol(f, kLQ) * Rat(f->n - 2) + Scalar(f, harmonic(ell));
    Scalar const_part = (-c_ell) * (rk / (f->n - 2)) + Scalar::two_pi_i(f) * degree(alpha);
    P.comp[1] = PuiseuxLog::term(f, Rat(ell), 1, Scalar(f, pre * rk / (f->n - 2))) +
                PuiseuxLog::term(f, Rat(ell), 0, const_part * pre);

    for (int j = 1; j <= 3; ++j) {
        const int a = f->a[j];
        for (int p = 1; p < a; ++p) {
            Cyclotomic x = chi(j, p, alpha);
            if (x.is_zero()) continue;
            Rat den = 1;
            for (int k = 0; k <= ell; ++k) den *= Rat(k + 1) - frac(p, a);
            P.comp[h_index(f, j, p)] = PuiseuxLog::term(f, Rat(ell + 1) - frac(p, a), 0, Scalar(x) * Rat(1 / den));
        }
    }
    return P;
}

CalPeriod basis_period(const Field* f, int idx, int m) {
    using CacheKey = std::tuple<int, int, int>;
    static std::shared_mutex mu;
    static std::map<CacheKey, CalPeriod> cache;
    const CacheKey key{f->n, idx, m};
    {
        std::shared_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    CalPeriod P = m <= -1 ? closed_negative(KClass::basis(f, idx), m) : basis_period(f, idx, m - 1).derivative();
    std::unique_lock lock(mu);
    return cache.try_emplace(key, std::move(P)).first->second;
}

}  // namespace

CalPeriod CalPeriod::derivative() const {
    CalPeriod r{alpha, m + 1, comp};
    for (auto& c : r.comp) c = c.derivative();
    return r;
}

CalPeriod CalPeriod::monodromy() const {
    CalPeriod r{alpha, m, comp};
    for (auto& c : r.comp) c = c.monodromy();
    return r;
}

CalPeriod CalPeriod::operator+(const CalPeriod& o) const {
    CalPeriod r{alpha + o.alpha, m, comp};
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] += o.comp[i];
    return r;
}

std::string CalPeriod::str() const {
    std::string s;
    const Field* f = alpha.field();
    for (size_t i = 0; i < comp.size(); ++i) {
        if (comp[i].is_zero()) continue;
        s += "  " + h_basis_name(f, static_cast<int>(i)) + ": " + comp[i].str() + "\n";
    }
    return s.empty() ? "  0\n" : s;
}

CalPeriod calibrated_period(const KClass& alpha, int m) {
    const Field* f = alpha.field();
    CalPeriod P{alpha, m, std::vector<PuiseuxLog>(f->n + 1, PuiseuxLog(f))};
    for (int i = 0; i < alpha.size(); ++i) {
        if (alpha[i] == 0) continue;
        const CalPeriod& B = basis_period(f, i, m);
        for (int c = 0; c < alpha.size(); ++c) P.comp[c] += B.comp[c] * Scalar(f, alpha[i]);
    }
    return P;
}

std::vector<std::pair<int, CalPeriod>> f_tilde(const KClass& alpha, int lo, int hi) {
    if (lo > hi) throw UsageError("empty z window");
    std::vector<std::pair<int, CalPeriod>> out;
    for (int m = lo; m <= hi; ++m) out.emplace_back(m, calibrated_period(alpha, m));
    return out;
}

std::vector<PuiseuxLog> period_on_h(const CohVector& v, int m) {
    const Field* f = v.field();
    std::vector<PuiseuxLog> out(f->n + 1, PuiseuxLog(f));
    // phi00, theta = 1/2: lambda^{-m} / Gamma(1-m)
    if (m <= 0) out[0] = PuiseuxLog::term(f, Rat(-m), 0, v[0] * Rat(1 / factorial(-m)));
    // phi01, theta = -1/2: lambda^{-m-1} / Gamma(-m), plus the rho term
    Scalar rho0 = v[0] * frac(1, f->n - 2);
    if (m <= -1) {
        const int ell = -m - 1;
        const Rat inv = 1 / factorial(ell);
        out[1] = PuiseuxLog::term(f, Rat(ell), 0, v[1] * inv) +
                 PuiseuxLog::term(f, Rat(ell), 1, rho0 * inv) +
                 PuiseuxLog::term(f, Rat(ell), 0, -(Scalar::digamma(f, ell + 1) * rho0) * inv);
    } else {
        // -psi(x)/Gamma(x) -> (-1)^m m! at x = -m
        Rat lim = factorial(m) * (m % 2 ? -1 : 1);
        out[1] = PuiseuxLog::term(f, Rat(-m - 1), 0, rho0 * lim);
    }
    for (int j = 1; j <= 3; ++j) {
        const int a = f->a[j];
        for (int p = 1; p < a; ++p) {
            const int idx = h_index(f, j, p);
            if (v[idx].is_zero()) continue;
            const Rat u = 1 - frac(p, a);  // Gamma(u - m)
            Rat fac = 1;
            if (m >= 0)
                for (int i = 1; i <= m; ++i) fac *= u - i;
            else
                for (int i = 0; i <= -m - 1; ++i) fac /= u + i;
            Scalar c = v[idx] * Scalar::inv_gamma(f, j, a - p) * fac;
            out[idx] = PuiseuxLog::term(f, -frac(p, a) - m, 0, c);
        }
    }
    return out;
}

}  // namespace orbline
