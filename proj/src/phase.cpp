#include "orbline/phase.hpp"

#include <sstream>

namespace orbline {

namespace {

using CPoly = std::vector<Cyclotomic>;  // low degree first

CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
    const Field* f = a.front().field();
    CPoly r(a.size() + b.size() - 1, Cyclotomic(f));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

Cyclotomic cpoly_at_one(const CPoly& p) {
    Cyclotomic s(p.front().field());
    for (const auto& c : p) s += c;
    return s;
}

// strips factors (x - 1); returns how many
int strip_root_one(CPoly& p) {
    int k = 0;
    while (p.size() > 1 && cpoly_at_one(p).is_zero()) {
        // synthetic division by (x - 1)
        const Field* f = p.front().field();
        CPoly q(p.size() - 1, Cyclotomic(f));
        Cyclotomic carry(f);
        for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i) {
            carry += p[i];
            q[i - 1] = carry;
        }
        p = std::move(q);
        ++k;
    }
    return k;
}

void add_at(std::vector<Scalar>& v, int k, const Scalar& c) {
    if (k >= 0 && k < static_cast<int>(v.size())) v[k] += c;
}

}  // namespace

bool PhaseSeries::operator==(const PhaseSeries& o) const {
    return order == o.order && head == o.head && log_coeff == o.log_coeff && x == o.x;
}

std::optional<std::string> PhaseSeries::first_difference(const PhaseSeries& o) const {
    if (order != o.order) return "order " + std::to_string(order) + " vs " + std::to_string(o.order);
    if (head != o.head) return "head: " + head.str() + " vs " + o.head.str();
    if (log_coeff != o.log_coeff) return "log coefficient: " + log_coeff.str() + " vs " + o.log_coeff.str();
    for (int k = 1; k <= order; ++k)
        if (x[k] != o.x[k]) return "x^" + std::to_string(k) + ": " + x[k].str() + " vs " + o.x[k].str();
    return std::nullopt;
}

std::string PhaseSeries::str() const {
    std::ostringstream os;
    os << "head: " << head.str() << "\nlog(lambda2): " << log_coeff.str() << "\n";
    for (int k = 1; k <= order; ++k)
        if (!x[k].is_zero()) os << "x^" << k << ": " << x[k].str() << "\n";
    return os.str();
}

PhaseSeries phase_direct(const KClass& alpha, const KClass& beta, int N) {
    if (N < 1) throw UsageError("phase order must be >= 1");
    const Field* f = alpha.field();
    PhaseSeries out{Scalar(f), Scalar(f), std::vector<Scalar>(N + 1, Scalar(f)), N};
    const int mmax = N / f->kappa + 1;
    for (int m = 0; m <= mmax; ++m) {
        CalPeriod A = calibrated_period(alpha, m);
        CalPeriod B = calibrated_period(beta, -m - 1);
        const Rat sign = m % 2 ? 1 : -1;
        for (int u = 0; u < alpha.size(); ++u)
            for (int v = 0; v < alpha.size(); ++v) {
                Rat g = poincare_basis(f, u, v);
                if (g == 0) continue;
                for (const auto& [k1, c1] : A.comp[u].terms())
                    for (const auto& [k2, c2] : B.comp[v].terms()) {
                        if (k1.second != 0) throw std::logic_error("log lambda1 in a nonnegative-order period");
                        if (k1.first + k2.first != 0) throw std::logic_error("inhomogeneous pairing term");
                        Scalar c = c1 * c2 * (g * sign);
                        if (k2.first == 0) {
                            (k2.second ? out.log_coeff : out.head) += c;
                        } else {
                            if (k2.first < 0 || k2.second) throw std::logic_error("unexpected pairing term");
                            add_at(out.x, k2.first, c);
                        }
                    }
            }
    }
    out.x[0] = Scalar(f);
    return out;
}

std::vector<Rat> phase_exponents(const KClass& alpha, const KClass& beta) {
    const int kappa = alpha.field()->kappa;
    std::vector<Rat> e;
    KClass cur = beta;
    for (int s = 1; s <= kappa; ++s) {
        cur = sigma(cur);
        e.push_back(inter_fast(alpha, cur));
    }
    return e;
}

PhaseSeries phase_closed(const KClass& alpha, const KClass& beta, int N) {
    if (N < 1) throw UsageError("phase order must be >= 1");
    const Field* f = alpha.field();
    PhaseSeries out{Scalar(f), Scalar(f), std::vector<Scalar>(N + 1, Scalar(f)), N};
    const Rat rkrk = rank(alpha) * rank(beta);
    out.head = Scalar::two_pi_i(f) * Rat(-rank(alpha) * degree(beta)) + Scalar::symbol(f, kLQ) * rkrk;
    out.log_coeff = Scalar(f, -rkrk / (f->n - 2));
    auto e = phase_exponents(alpha, beta);
    for (int l = 1; l <= N; ++l) {
        Cyclotomic c(f);
        for (int s = 1; s <= f->kappa; ++s)
            if (e[s - 1] != 0) c += Cyclotomic::eta(f, -static_cast<long>(s) * l) * e[s - 1];
        out.x[l] = Scalar(c * frac(-1, l));
    }
    return out;
}

Scalar h_intersection(const CohVector& u, const CohVector& v) {
    const Field* f = u.field();
    Scalar r = u[0] * v[0] * frac(1, f->n - 2);
    for (int j = 1; j <= 3; ++j) {
        const int a = f->a[j];
        for (int p = 1; p < a; ++p) {
            const Scalar& x = u[h_index(f, j, p)];
            const Scalar& y = v[h_index(f, j, a - p)];
            if (x.is_zero() || y.is_zero()) continue;
            r += x * y * Scalar(Cyclotomic::sin_pi(f, p, a)) * Scalar::symbol(f, kPi, -1) * frac(1, a);
        }
    }
    return r;
}

CohVector h_sigma(const CohVector& v) {
    const Field* f = v.field();
    CohVector r = v;
    r[1] += v[0] * Scalar::two_pi_i(f) * frac(1, f->n - 2);
    for (int j = 1; j <= 3; ++j)
        for (int p = 1; p < f->a[j]; ++p) {
            int idx = h_index(f, j, p);
            r[idx] = v[idx] * Scalar(Cyclotomic::eta_j(f, j, -p));
        }
    return r;
}

std::vector<Scalar> phase_limit_lhs(const Field* f, int i, int j, int N) {
    auto A = period_on_h(CohVector::basis(f, i), 0);
    auto B = period_on_h(CohVector::basis(f, j), 0);
    // (lambda2 - rho) B
    std::vector<PuiseuxLog> LB(B.size(), PuiseuxLog(f));
    auto lam = PuiseuxLog::term(f, Rat(1), 0, Scalar(f, Rat(1)));
    for (size_t c = 0; c < B.size(); ++c) LB[c] = B[c] * lam;
    LB[1] = LB[1] - B[0] * Scalar(f, frac(1, f->n - 2));

    std::vector<Scalar> pair(N + 1, Scalar(f));
    for (int u = 0; u < static_cast<int>(A.size()); ++u)
        for (int v = 0; v < static_cast<int>(LB.size()); ++v) {
            Rat g = poincare_basis(f, u, v);
            if (g == 0) continue;
            for (const auto& [k1, c1] : A[u].terms())
                for (const auto& [k2, c2] : LB[v].terms()) {
                    if (k1.second || k2.second || k1.first + k2.first != 0 || k2.first < 0)
                        throw std::logic_error("unexpected term in the phase limit pairing");
                    add_at(pair, k2.first, c1 * c2 * g);
                }
        }
    // times lambda1 / (lambda1 - lambda2) = sum_k x^{kappa k}
    std::vector<Scalar> out(N + 1, Scalar(f));
    for (int a = 0; a <= N; ++a) {
        if (pair[a].is_zero()) continue;
        for (int b = a; b <= N; b += f->kappa) out[b] += pair[a];
    }
    return out;
}

std::vector<Scalar> phase_limit_rhs(const Field* f, int i, int j, int N) {
    CohVector a = CohVector::basis(f, i), cur = CohVector::basis(f, j);
    std::vector<Scalar> out(N + 1, Scalar(f));
    for (int s = 1; s <= f->kappa; ++s) {
        cur = h_sigma(cur);
        Scalar e = h_intersection(a, cur);
        if (e.is_zero()) continue;
        for (int m = 1; m <= N; ++m)
            out[m] += e * Scalar(Cyclotomic::eta(f, -static_cast<long>(s) * m)) * frac(1, f->kappa);
    }
    return out;
}

std::pair<EpsLabel, int> classify_eps(const KClass& eps) {
    const Field* f = eps.field();
    for (auto lab : eps_labels(f)) {
        KClass v = eps_vector(f, lab);
        if (eps == v) return {lab, 1};
        if (eps == -v) return {lab, -1};
    }
    throw NotInE("class is not in E: " + eps.str());
}

std::vector<KClass> e_set(const Field* f) {
    std::vector<KClass> out;
    for (auto lab : eps_labels(f)) {
        out.push_back(eps_vector(f, lab));
        out.push_back(-eps_vector(f, lab));
    }
    return out;
}

PuiseuxLog b_tilde(const KClass& eps) {
    const Field* f = eps.field();
    auto [lab, sgn] = classify_eps(eps);
    (void)sgn;
    switch (lab.sector) {
        case 1: {
            Scalar c = Scalar::symbol(f, kNQ) * Scalar(Cyclotomic::eta_j(f, 1, -lab.i)) * frac(1, f->n - 2);
            return PuiseuxLog::term(f, frac(-1, f->n - 2), 0, c);
        }
        case 2: return PuiseuxLog::constant(Scalar(f, frac(-1, 4)));
        default: return PuiseuxLog::constant(Scalar(f, frac(1, 4)));
    }
}

LimitResult b_from_limit(const KClass& eps) {
    const Field* f = eps.field();
    classify_eps(eps);
    const KClass beta = -eps;
    auto e = phase_exponents(eps, beta);

    const Rat rkrk = rank(eps) * rank(beta);
    // (Q mu^{-1/(n-2)})^{rkrk}, mu = lambda x^kappa
    const Rat xq = -rkrk * f->kappa / (f->n - 2);
    if (xq.get_den() != 1) throw std::logic_error("non-integral x power");
    const long xpow = xq.get_num().get_si();
    Scalar coeff = Scalar(Cyclotomic::exp_2pi_i(f, -rank(eps) * degree(beta))) *
                   Scalar::symbol(f, kNQ, static_cast<int>(rkrk.get_num().get_si()));

    const Cyclotomic one(f, Rat(1)), zero(f);
    CPoly num{one}, den{one};
    CPoly mono(std::abs(xpow) + 1, zero);
    mono.back() = one;
    (xpow >= 0 ? num : den) = mono;
    for (int s = 1; s <= f->kappa; ++s) {
        if (e[s - 1].get_den() != 1) throw PoleMismatch("non-integral exponent in the product formula");
        long k = e[s - 1].get_num().get_si();
        CPoly lin{one, -Cyclotomic::eta(f, -s)};
        for (long t = 0; t < std::abs(k); ++t) (k > 0 ? num : den) = cpoly_mul(k > 0 ? num : den, lin);
    }
    int order = strip_root_one(num) - strip_root_one(den);
    if (order != -1)
        throw PoleMismatch("e^Omega has order " + std::to_string(order) + " at mu = lambda, expected a simple pole");
    // (mu - lambda) = lambda (x^kappa - 1) = lambda (x - 1)(1 + ... + x^{kappa-1})
    Cyclotomic limit = cpoly_at_one(num) * cpoly_at_one(den).inverse() * Rat(f->kappa);

    LimitResult r;
    r.raw = PuiseuxLog::term(f, 1 - rkrk / (f->n - 2), 0, coeff * Scalar(limit));
    r.sign = Cyclotomic::exp_2pi_i(f, euler_pair(eps, eps_vector(f, {3, 1})));
    r.value = r.raw * Scalar(r.sign);
    return r;
}

}  // namespace orbline
