#include "orbline/hqe.hpp"

namespace orbline {

namespace {

std::string side_mark(int side) { return side == 1 ? "'" : "''"; }

Rat double_factorial(int k) {
    Rat r(1);
    for (int j = k; j > 1; j -= 2) r *= j;
    return r;
}

// prod_{k=0}^{l} (i + k(n-2))
Rat ladder(int i, int l, int n2) {
    Rat r(1);
    for (int k = 0; k <= l; ++k) r *= i + k * n2;
    return r;
}

bool is_rename(const Poly& p, int& to) {
    if (p.size() != 1) return false;
    const auto& [m, c] = *p.terms().begin();
    if (c != Scalar(p.field(), Rat(1))) return false;
    to = -1;
    for (int i = 0; i < p.ring()->size(); ++i) {
        if (m[i] == 0) continue;
        if (m[i] != 1 || to >= 0) return false;
        to = i;
    }
    return to >= 0;
}

}  // namespace

std::shared_ptr<const Coords> Coords::make(const Field* f, int K, int D) {
    if (K < 0 || D < 0) throw UsageError("Coords: negative cap");
    auto c = std::make_shared<Coords>();
    c->f = f;
    c->K = K;
    c->D = D;
    const int n2 = f->n - 2;
    for (int k = 1; k <= K; ++k) c->qvars.push_back({0, k});
    for (int a = 1; a <= f->n; ++a)
        for (int k = 0; k <= K; ++k) c->qvars.push_back({a, k});
    for (int l = 1; l <= K; ++l) c->tvars.push_back({0, l});
    for (int l = 1; l <= n2 * (K + 1); ++l) c->tvars.push_back({1, l});
    for (int fam = 2; fam <= 3; ++fam)
        for (int l = 0; l <= K; ++l) c->tvars.push_back({fam, 2 * l + 1});

    const auto hb = h_basis(f);
    for (Frame fr : {Frame::kQ, Frame::kT}) {
        std::vector<std::string> names{"x", "h", "z", "D"};
        std::vector<int> weight{0, 0, 0, 0};
        std::vector<bool> laurent{false, true, true, false};
        for (int side = 1; side <= 2; ++side) {
            const std::string s = side_mark(side);
            for (std::size_t i = 0; i < c->qvars.size(); ++i) {
                if (fr == Frame::kQ) {
                    auto [a, k] = c->qvars[i];
                    names.push_back((a == 0 ? "y" : "q") + s + "(" + std::to_string(hb[a].i) + "," +
                                    std::to_string(hb[a].p) + "," + std::to_string(k) + ")");
                } else {
                    auto [fam, l] = c->tvars[i];
                    names.push_back("t" + s + "(" + std::to_string(fam) + "," + std::to_string(l) + ")");
                }
                weight.push_back(1);
                laurent.push_back(false);
            }
        }
        (fr == Frame::kQ ? c->q_ring : c->t_ring) = make_ring(names, weight, laurent);
    }
    return c;
}

int Coords::qv(int side, int a, int k) const {
    if (a < 0 || a > f->n) throw UsageError("q variable: basis index out of range");
    if (a == 0 && k == 0) throw UsageError("q(0,0,0) is merged into x");
    if (k < 0 || k > K) throw CapExceeded("q variable beyond the slice K = " + std::to_string(K));
    if (a == 0) return side_base(side) + k - 1;
    return side_base(side) + K + (a - 1) * (K + 1) + k;
}

int Coords::tv(int side, int family, int l) const {
    const int n2 = f->n - 2;
    const int base = side_base(side);
    switch (family) {
        case 0:
            if (l < 1 || l > K) break;
            return base + l - 1;
        case 1:
            if (l < 1 || l > n2 * (K + 1)) break;
            return base + K + l - 1;
        case 2:
        case 3:
            if (l < 1 || l % 2 == 0) throw UsageError("odd families carry odd indices only");
            if (l > 2 * K + 1) break;
            return base + K + n2 * (K + 1) + (family - 2) * (K + 1) + (l - 1) / 2;
        default:
            throw UsageError("t family must be 0..3");
    }
    throw CapExceeded("t variable beyond the slice K = " + std::to_string(K));
}

Poly linear_substitute(const Poly& p, const RingPtr& target, const std::vector<std::optional<Poly>>& images,
                       int cap) {
    const Field* f = p.field();
    const int nv = p.ring()->size();
    std::vector<int> rename(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (v < static_cast<int>(images.size()) && images[v]) {
            int to;
            if (is_rename(*images[v], to)) rename[v] = to;
        } else {
            rename[v] = v;
        }
    }
    std::vector<std::vector<Poly>> pw(nv);
    Poly out(f, target, cap);
    for (const auto& [m, c] : p.terms()) {
        Mono keep{};
        for (int v = 0; v < nv; ++v)
            if (m[v] != 0 && rename[v] >= 0) keep[rename[v]] = static_cast<std::int8_t>(keep[rename[v]] + m[v]);
        Poly t = Poly::monomial(f, target, keep, c, cap);
        for (int v = 0; v < nv && !t.is_zero(); ++v) {
            if (m[v] == 0 || rename[v] >= 0) continue;
            if (m[v] < 0) throw UsageError("negative power of a substituted variable");
            auto& P = pw[v];
            if (P.empty()) P.push_back(Poly::constant(f, target, Scalar(f, Rat(1)), cap));
            while (static_cast<int>(P.size()) <= m[v]) P.push_back(P.back() * images[v]->with_cap(cap));
            t = t * P[m[v]];
        }
        out += t;
    }
    return out;
}

Poly change_vars(const Coords& c, Frame from, const Poly& p) {
    const Field* f = c.f;
    const int n = f->n, n2 = n - 2;
    const Frame to = from == Frame::kQ ? Frame::kT : Frame::kQ;
    const RingPtr& target = c.ring(to);
    std::vector<std::optional<Poly>> img(target->size());
    const Scalar s2 = Scalar::sqrt2(f);
    const Poly eps = c.var(to, Coords::h), ieps = c.var(to, Coords::h, -1);
    for (int side = 1; side <= 2; ++side) {
        if (from == Frame::kQ) {
            // q written in t
            for (int k = 1; k <= c.K; ++k) img[c.qv(side, 0, k)] = eps * c.var(to, c.tv(side, 0, k));
            for (int l = 0; l <= c.K; ++l) {
                Rat a = factorial(l + 1);
                for (int j = 0; j <= l; ++j) a *= n2;
                img[c.qv(side, 1, l)] = eps * c.var(to, c.tv(side, 1, (l + 1) * n2)) * a;
                for (int i = 1; i <= n - 3; ++i)
                    img[c.qv(side, 1 + i, l)] = eps * c.var(to, c.tv(side, 1, l * n2 + i)) *
                                                (Scalar::symbol(f, kR, i) * ladder(i, l, n2));
                Poly t2 = c.var(to, c.tv(side, 2, 2 * l + 1)), t3 = c.var(to, c.tv(side, 3, 2 * l + 1));
                Scalar w = s2 * (double_factorial(2 * l + 1) / 2);
                img[c.qv(side, n - 1, l)] = eps * (t2 + t3) * w;
                img[c.qv(side, n, l)] = eps * (t2 - t3) * w;
            }
        } else {
            // t written in q
            for (int k = 1; k <= c.K; ++k) img[c.tv(side, 0, k)] = ieps * c.var(to, c.qv(side, 0, k));
            for (int l = 1; l <= c.K + 1; ++l) {
                Rat a = factorial(l);
                for (int j = 0; j < l; ++j) a *= n2;
                img[c.tv(side, 1, l * n2)] = ieps * c.var(to, c.qv(side, 1, l - 1)) * (Rat(1) / a);
            }
            for (int l = 0; l <= c.K; ++l) {
                for (int i = 1; i <= n - 3; ++i)
                    img[c.tv(side, 1, l * n2 + i)] =
                        ieps * c.var(to, c.qv(side, 1 + i, l)) *
                        (Scalar::symbol(f, kR, -i) * (Rat(1) / ladder(i, l, n2)));
                Poly a = c.var(to, c.qv(side, n - 1, l)), b = c.var(to, c.qv(side, n, l));
                Scalar w = s2.inverse() * (Rat(1) / double_factorial(2 * l + 1));
                img[c.tv(side, 2, 2 * l + 1)] = ieps * (a + b) * w;
                img[c.tv(side, 3, 2 * l + 1)] = ieps * (a - b) * w;
            }
        }
    }
    if (p.ring() != c.ring(from)) throw UsageError("change_vars: polynomial is not in the source frame");
    return linear_substitute(p, target, img, p.cap());
}

TauFunction TauFunction::from_fock(const CoordsPtr& c, const FockSpace& fs, const Poly& q) {
    if (fs.f != c->f) throw UsageError("tau: field mismatch");
    std::vector<std::optional<Poly>> img(fs.ring->size());
    const Frame Q = Frame::kQ;
    for (const auto& [m, s] : q.terms())
        for (int a = 0; a <= fs.f->n; ++a)
            for (int k = c->K + 1; k <= fs.K; ++k)
                if (m[fs.q(a, k)] != 0)
                    throw CapExceeded("tau uses descendant index " + std::to_string(k) + " beyond K = " +
                                      std::to_string(c->K));
    for (const auto& [m, s] : q.terms())
        if (m[fs.u()] != 0) throw UsageError("tau must not contain the insertion marker");
    for (int a = 0; a <= fs.f->n; ++a)
        for (int k = 0; k <= std::min(fs.K, c->K); ++k) {
            Poly v = a == 0 && k == 0 ? c->var(Q, Coords::x) : c->var(Q, c->qv(1, a, k));
            if (a == 0 && k == 1) v -= c->one(Q);
            img[fs.q(a, k)] = v;
        }
    for (int a = 0; a <= fs.f->n; ++a)
        for (int k = c->K + 1; k <= fs.K; ++k) img[fs.q(a, k)] = c->zero(Q);
    img[fs.u()] = c->zero(Q);
    img[fs.h()] = c->var(Q, Coords::h);
    return TauFunction{c, linear_substitute(q, c->q_ring, img, c->D)};
}

Poly TauFunction::to_fock(const FockSpace& fs) const {
    std::vector<std::optional<Poly>> img(c->q_ring->size());
    img[Coords::x] = fs.var(fs.q(0, 0));
    img[Coords::h] = fs.var(fs.h());
    for (int a = 0; a <= c->f->n; ++a)
        for (int k = 0; k <= c->K; ++k) {
            if (a == 0 && k == 0) continue;
            Poly v = fs.var(fs.q(a, k));
            if (a == 0 && k == 1) v += fs.one();
            img[c->qv(1, a, k)] = v;
        }
    for (int v = c->side_base(2); v < c->q_ring->size(); ++v) img[v] = fs.zero();
    img[Coords::z] = fs.zero();
    img[Coords::d] = fs.zero();
    return linear_substitute(p, fs.ring, img, fs.D);
}

Poly TauFunction::on(int side, Frame fr) const {
    Poly r = p;
    if (side == 2) {
        std::vector<int> to(c->q_ring->size());
        for (int v = 0; v < c->q_ring->size(); ++v) to[v] = v < c->side_base(1) ? v : v + c->per_side();
        for (int v = c->side_base(2); v < c->q_ring->size(); ++v) to[v] = -1;
        r = p.map_vars(c->q_ring, to, p.cap());
    }
    return fr == Frame::kQ ? r : change_vars(*c, Frame::kQ, r);
}

bool admissible_tau(const TauFunction& t) {
    const Coords& c = *t.c;
    const Field* f = c.f;
    const auto hb = h_basis(f);
    std::vector<Rat> w(c.q_ring->size(), Rat(0));
    w[Coords::x] = -1;
    w[Coords::h] = -1;
    for (int i = 0; i < c.per_side(); ++i) {
        auto [a, k] = c.qvars[i];
        Rat deg(0);
        if (a > 0) deg = hb[a].i == 0 ? Rat(hb[a].p) : Rat(hb[a].p) / f->a[hb[a].i];
        w[c.side_base(1) + i] = k + deg - 1;
    }
    for (const auto& [m, s] : t.p.terms()) {
        Rat wm(0);
        for (int v = 0; v < c.q_ring->size(); ++v) wm += w[v] * m[v];
        for (const auto& [tm, cy] : s.terms()) {
            Rat total = wm - Rat(tm.e[kNQ]) / (f->n - 2);
            if (total != 0) return false;
        }
    }
    return true;
}

Poly compose(const Poly& P, const Poly& Q) {
    const int X = Coords::x, Dv = Coords::d;
    Poly out(P.field(), P.ring(), std::min(P.cap(), Q.cap()));
    if (P.is_zero() || Q.is_zero()) return out;
    const int dmax = P.exponent_range(Dv).second;
    std::vector<Poly> dq{Q};
    for (int d = 0; d <= dmax; ++d) {
        Poly Pd = P.coeff(Dv, d);
        if (Pd.is_zero()) continue;
        for (int j = 0; j <= d; ++j) {
            while (static_cast<int>(dq.size()) <= j) dq.push_back(dq.back().diff(X));
            if (dq[j].is_zero()) break;
            out += (Pd * dq[j]).times_var(Dv, d - j) * binomial(d, j);
        }
    }
    return out;
}

Poly adjoint(const Poly& P) {
    const int Dv = Coords::d;
    Poly out(P.field(), P.ring(), P.cap());
    if (P.is_zero()) return out;
    const int dmax = P.exponent_range(Dv).second;
    for (int d = 0; d <= dmax; ++d) {
        Poly Pd = P.coeff(Dv, d);
        if (Pd.is_zero()) continue;
        Poly Dd = Poly::variable(P.field(), P.ring(), Dv, d, P.cap());
        out += compose(Dd, Pd) * Rat(d % 2 ? -1 : 1);
    }
    return out;
}

namespace {

std::map<int, Poly> z_split(const Poly& p) {
    std::map<int, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        Mono mm = m;
        const int e = mm[Coords::z];
        mm[Coords::z] = 0;
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, Poly(p.field(), p.ring(), p.cap())).first;
        it->second.add(mm, c);
    }
    return out;
}

Poly z_coeff(const std::map<int, Poly>& A, const std::map<int, Poly>& B, int e, const Poly& proto) {
    Poly out(proto.field(), proto.ring(), proto.cap());
    for (const auto& [i, a] : A) {
        auto it = B.find(e - i);
        if (it != B.end()) out += a * it->second;
    }
    return out;
}

}  // namespace

Poly z_coeff_product(const Poly& a, const Poly& b, int e) {
    return z_coeff(z_split(a), z_split(b), e, a.with_cap(std::min(a.cap(), b.cap())));
}

Poly VertexOp::apply(const Poly& tau) const {
    Poly r = tau;
    for (const auto& [v, s] : shift) r = r.translate(v, s);
    if (creation.is_zero()) return r;
    return exp_series(creation) * r;
}

namespace {

// lambda^r with lambda = z^{n-2}/(n-2)
Poly lambda_pow1(const Coords& c, const Rat& r) {
    const int n2 = c.f->n - 2;
    Rat ze = r * n2;
    if (ze.get_den() != 1) throw std::logic_error("lambda power off the z lattice");
    const int e = static_cast<int>(ze.get_num().get_si());
    return c.var(Frame::kQ, Coords::z, e) * Scalar::symbol(c.f, kR, -e);
}

}  // namespace

VertexOp gamma1_q(const Coords& c, int side, int sign) {
    const Field* f = c.f;
    const int n = f->n, n2 = n - 2;
    const Frame Q = Frame::kQ;
    const Poly eps = c.var(Q, Coords::h), ieps = c.var(Q, Coords::h, -1);
    VertexOp op{c.zero(Q), {}};
    for (int l = 0; l <= c.K; ++l) {
        const int v01 = c.qv(side, 1, l);
        op.creation += lambda_pow1(c, Rat(l + 1)) * c.var(Q, v01) * ieps * (Rat(sign) / factorial(l + 1));
        op.shift.push_back({v01, lambda_pow1(c, Rat(-1 - l)) * eps * (Rat(-sign) * factorial(l) / n2)});
        for (int j = 1; j <= n - 3; ++j) {
            const int v = c.qv(side, 1 + j, l);
            Rat den(n2), up(1);
            for (int k = 0; k <= l; ++k) den *= Rat(k) + frac(j, n2);
            for (int k = 0; k < l; ++k) up *= Rat(k) + frac(j, n2);
            op.creation += lambda_pow1(c, l + frac(j, n2)) * c.var(Q, v) * ieps * (Rat(sign) / den);
            op.shift.push_back({v, lambda_pow1(c, -frac(j, n2) - l) * eps * (Rat(-sign) * up)});
        }
    }
    return op;
}

VertexOp gamma_odd_q(const Coords& c, int side, int a, int zsign) {
    const Field* f = c.f;
    const int n = f->n;
    const Frame Q = Frame::kQ;
    const int s = a == 2 ? 1 : -1;
    const Scalar s2 = Scalar::sqrt2(f);
    const Poly eps = c.var(Q, Coords::h), ieps = c.var(Q, Coords::h, -1);
    // lambda^{l+1/2} -> -w^{2l+1} / (2^l sqrt2), lambda^{-l-1/2} -> -2^l sqrt2 w^{-2l-1}, w = zsign z
    auto wpow = [&](int e) { return c.var(Q, Coords::z, e) * Rat((e % 2 != 0 && zsign < 0) ? -1 : 1); };
    VertexOp op{c.zero(Q), {}};
    for (int l = 0; l <= c.K; ++l) {
        Rat down(1), up(1), two(1);
        for (int k = 1; k <= l; ++k) down *= Rat(k) + frac(1, 2);
        for (int k = 0; k < l; ++k) up *= Rat(k) + frac(1, 2);
        for (int k = 0; k < l; ++k) two *= 2;
        const Poly q2 = c.var(Q, c.qv(side, n - 1, l)), q3 = c.var(Q, c.qv(side, n, l));
        Poly lam_plus = wpow(2 * l + 1) * (s2.inverse() * (Rat(-1) / two));
        Poly lam_minus = wpow(-2 * l - 1) * (s2 * (Rat(-1) * two));
        op.creation -= lam_plus * (q2 + q3 * Rat(s)) * ieps * (Rat(1) / down);
        op.shift.push_back({c.qv(side, n - 1, l), lam_minus * eps * up});
        op.shift.push_back({c.qv(side, n, l), lam_minus * eps * (up * s)});
    }
    return op;
}

Scalar novikov_c(const Field* f) { return -(Scalar::symbol(f, kNQ) * Scalar::symbol(f, kR)); }

HqeSystem::HqeSystem(const TauFunction& tau1, const TauFunction& tau2) : c_(tau1.c) {
    if (tau2.c != c_) throw UsageError("HqeSystem: taus over different coordinates");
    const Coords& c = *c_;
    const Frame Q = Frame::kQ;
    const int n2 = c.f->n - 2;
    Poly t1 = tau1.on(1, Q), t2 = tau2.on(2, Q);
    const Poly eps = c.var(Q, Coords::h), ieps = c.var(Q, Coords::h, -1);
    g1p_ = gamma1_q(c, 1, 1).apply(t1);
    g1m_ = gamma1_q(c, 1, -1).apply(t1);
    o1_ = gamma_odd_q(c, 1, 2, 1).apply(t1);
    o1e_ = gamma_odd_q(c, 1, 3, 1).apply(t1);

    Poly xm = c.zero(Q), xp = c.zero(Q), xo = c.zero(Q);
    const Poly Dop = c.var(Q, Coords::d);
    for (int l = 1; l <= c.K; ++l) {
        Poly dy = c.var(Q, c.qv(1, 0, l)) - c.var(Q, c.qv(2, 0, l));
        Rat w = Rat(1) / factorial(l);
        for (int j = 0; j < l; ++j) w /= n2;
        Poly zl = c.var(Q, Coords::z, n2 * l) * w;
        Poly hl = ieps * (harmonic(l) / n2);
        xm += zl * (Dop - hl) * dy;
        xp += zl * (Dop + hl) * dy;
        Rat wo = Rat(1) / factorial(l);
        for (int j = 0; j < l; ++j) wo /= 2;
        xo += c.var(Q, Coords::z, 2 * l) * Dop * dy * wo;
    }
    right_m_ = compose(exp_series(xm), gamma1_q(c, 2, -1).apply(t2).translate(Coords::x, eps));
    right_p_ = compose(exp_series(xp), gamma1_q(c, 2, 1).apply(t2).translate(Coords::x, -eps));
    const Poly eo = exp_series(xo);
    right2_ = compose(eo, gamma_odd_q(c, 2, 2, -1).apply(t2));
    right3_ = compose(eo, gamma_odd_q(c, 2, 3, -1).apply(t2));
}

void HqeSystem::check_window(int r) const {
    if (r < 0) throw UsageError("r must be nonnegative");
    if (r > c_->K)
        throw CapExceeded("r = " + std::to_string(r) + " needs a z-window beyond the slice K = " +
                          std::to_string(c_->K));
}

Poly HqeSystem::sector(int s, int m, int r) const {
    check_window(r);
    const Coords& c = *c_;
    const Frame Q = Frame::kQ;
    const Field* f = c.f;
    const int n2 = f->n - 2;
    const Poly eps = c.var(Q, Coords::h);
    auto xshift = [&](const Poly& p, int k) { return k == 0 ? p : p.translate(Coords::x, eps * Rat(k)); };
    // Res_{z=oo} of the sector 1-form times the integrand, Res_{z=oo} = -[z^{-1}]
    Rat norm = factorial(r);
    switch (s) {
        case 1: {
            for (int j = 0; j < r; ++j) norm *= n2;
            const OneForm w = sector_one_form(eps_vector(f, {1, n2}));
            const Scalar C = novikov_c(f);
            // w z^{-2} (z/C)^{+-m} z^{(n-2)r}
            Poly a = z_coeff_product(xshift(g1p_, m - 1), right_m_, -1 - w.zpow - m - n2 * r);
            Poly b = z_coeff_product(xshift(g1m_, m + 1), right_p_, -1 - w.zpow + m - n2 * r);
            return (a * C.pow(-m) + b * C.pow(m)) * (-w.c * (Rat(1) / norm));
        }
        case 2:
        case 3: {
            for (int j = 0; j < r; ++j) norm *= 2;
            const OneForm w = sector_one_form(eps_vector(f, {s, 1}));
            const Poly& left = s == 2 ? o1_ : o1e_;
            const Poly& right = s == 2 ? right2_ : right3_;
            Poly v = z_coeff_product(xshift(left, m), right, -1 - w.zpow - 2 * r);
            Scalar sign = Scalar(f, Rat(s == 2 && m % 2 != 0 ? 1 : -1));
            return v * (sign * w.c * (Rat(1) / norm));
        }
        default:
            throw UsageError("sector must be 1, 2 or 3");
    }
}

Poly HqeSystem::residual(int m, int r) const { return sector(1, m, r) + sector(2, m, r) + sector(3, m, r); }

SectorResidual sector_residual(int sector, const TauFunction& tau1, const TauFunction& tau2, int m, int r) {
    return {sector, m, r, HqeSystem(tau1, tau2).sector(sector, m, r)};
}

Poly hqe_residual(const TauFunction& tau1, const TauFunction& tau2, int m, int r) {
    return HqeSystem(tau1, tau2).residual(m, r);
}

OneForm sector_one_form(const KClass& eps) {
    const Field* f = eps.field();
    auto [lab, sgn] = classify_eps(eps);
    (void)sgn;
    switch (lab.sector) {
        case 1:
            return {-novikov_c(f) * Scalar(Cyclotomic::eta_j(f, 1, -lab.i)), -2};
        case 2:
            return {Scalar(f, frac(-1, 2)), -1};
        default:
            return {Scalar(f, frac(1, 2)), -1};
    }
}

OneForm pullback_b(const PuiseuxLog& b, int sector) {
    const Field* f = b.field();
    const int k = sector == 1 ? f->n - 2 : 2;
    std::optional<OneForm> out;
    for (const auto& [key, c] : b.terms()) {
        if (key.second != 0) throw UsageError("pullback_b: logarithmic term");
        const Rat r = b.exponent(key.first);
        const Rat ze = r * k;
        if (ze.get_den() != 1) throw UsageError("pullback_b: exponent off the z lattice");
        const int e = static_cast<int>(ze.get_num().get_si());
        // (z^k / k)^r dlambda/lambda = k^{1-r} z^{kr - 1} dz
        Scalar factor = sector == 1 ? Scalar::symbol(f, kR, -e) : Scalar::sqrt2(f).pow(-e);
        OneForm t{c * factor * Rat(k), e - 1};
        if (out && out->zpow != t.zpow) throw UsageError("pullback_b: not a monomial form");
        if (out)
            out->c += t.c;
        else
            out = t;
    }
    if (!out) return {Scalar(f), 0};
    return *out;
}

}  // namespace orbline
