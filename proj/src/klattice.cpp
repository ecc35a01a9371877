#include "orbline/klattice.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

namespace orbline {

namespace {

int idx_L2(const Field* f) { return f->n - 2; }
int idx_L3(const Field* f) { return f->n - 1; }
int idx_L(const Field* f) { return f->n; }

// kind: 0 -> L1^k (k stored), 1 -> L2, 2 -> L3, 3 -> L
struct Kind {
    int type;
    int k;
};

Kind kind_of(const Field* f, int idx) {
    if (idx <= f->n - 3) return {0, idx};
    if (idx == idx_L2(f)) return {1, 0};
    if (idx == idx_L3(f)) return {2, 0};
    return {3, 0};
}

std::vector<Rat> unit(const Field* f, int idx) {
    std::vector<Rat> v(f->n + 1, Rat(0));
    v[idx] = 1;
    return v;
}

// x + y - 1 for basis indices x, y
std::vector<Rat> plus_minus_one(const Field* f, int x, int y) {
    std::vector<Rat> v(f->n + 1, Rat(0));
    v[x] += 1;
    v[y] += 1;
    v[0] -= 1;
    return v;
}

std::vector<Rat> basis_product(const Field* f, int i, int j) {
    const int a1 = f->n - 2;
    Kind x = kind_of(f, i), y = kind_of(f, j);
    if (x.type == 0 && x.k == 0) return unit(f, j);
    if (y.type == 0 && y.k == 0) return unit(f, i);
    if (x.type > y.type) std::swap(x, y), std::swap(i, j);
    if (x.type == 0) {
        if (y.type == 0) {
            int s = x.k + y.k;
            if (s <= a1 - 1) return unit(f, s);
            if (s == a1) return unit(f, idx_L(f));
            return plus_minus_one(f, s - a1, idx_L(f));  // L * L1^{s-a1}
        }
        return plus_minus_one(f, i, j);  // L1^k times L2, L3 or L
    }
    if (x.type == 1 && y.type == 1) return unit(f, idx_L(f));
    if (x.type == 2 && y.type == 2) return unit(f, idx_L(f));
    if (x.type == 3 && y.type == 3) {
        auto v = unit(f, idx_L(f));
        v[idx_L(f)] = 2;
        v[0] = -1;
        return v;
    }
    return plus_minus_one(f, i, j);  // L2 L3, L2 L, L3 L
}

struct RingData {
    std::vector<std::vector<std::vector<Rat>>> table;
    KClass tp1, tp1_inv;
};

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    const int d = static_cast<int>(b.size());
    for (int c = 0; c < d; ++c) {
        int piv = c;
        while (piv < d && A[piv][c] == 0) ++piv;
        if (piv == d) throw std::domain_error("singular linear system");
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        Rat inv = 1 / A[c][c];
        for (int k = c; k < d; ++k) A[c][k] *= inv;
        b[c] *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rat fac = A[r][c];
            for (int k = c; k < d; ++k) A[r][k] -= fac * A[c][k];
            b[r] -= fac * b[c];
        }
    }
    return b;
}

std::vector<Rat> table_mul(const std::vector<std::vector<std::vector<Rat>>>& tab, const std::vector<Rat>& a,
                           const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            Rat w = a[i] * b[j];
            const auto& p = tab[i][j];
            for (size_t k = 0; k < p.size(); ++k)
                if (p[k] != 0) r[k] += w * p[k];
        }
    }
    return r;
}

const RingData& ring(const Field* f) {
    static std::array<std::unique_ptr<RingData>, 16> cache;
    static std::array<std::once_flag, 16> once;
    std::call_once(once[f->n], [f] {
        auto r = std::make_unique<RingData>();
        const int d = f->n + 1;
        r->table.assign(d, std::vector<std::vector<Rat>>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) r->table[i][j] = basis_product(f, i, j);
        std::vector<Rat> tp(d, Rat(0));
        tp[1] += 1;
        tp[idx_L2(f)] += 1;
        tp[idx_L3(f)] += 1;
        tp[idx_L(f)] -= 1;
        tp[0] -= 1;
        // columns: tp * b_j
        std::vector<std::vector<Rat>> A(d, std::vector<Rat>(d, Rat(0)));
        for (int j = 0; j < d; ++j) {
            auto col = table_mul(r->table, tp, unit(f, j));
            for (int i = 0; i < d; ++i) A[i][j] = col[i];
        }
        r->tp1 = KClass(f, tp);
        r->tp1_inv = KClass(f, solve_linear(A, unit(f, 0)));
        cache[f->n] = std::move(r);
    });
    return *cache[f->n];
}

}  // namespace

// ---------------------------------------------------------------- KClass

KClass::KClass(const Field* f) : f_(f), c_(f->n + 1, Rat(0)) {}

KClass::KClass(const Field* f, std::vector<Rat> coeffs) : f_(f), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != f->n + 1) throw UsageError("KClass needs n+1 coefficients");
}

KClass KClass::basis(const Field* f, int idx) {
    if (idx < 0 || idx > f->n) throw std::out_of_range("K basis index");
    return KClass(f, unit(f, idx));
}

KClass KClass::L1pow(const Field* f, int k) {
    if (k < 0 || k > f->n - 2) throw std::out_of_range("L1 power");
    return k == f->n - 2 ? L(f) : basis(f, k);
}
KClass KClass::L2(const Field* f) { return basis(f, idx_L2(f)); }
KClass KClass::L3(const Field* f) { return basis(f, idx_L3(f)); }
KClass KClass::L(const Field* f) { return basis(f, idx_L(f)); }

KClass KClass::operator+(const KClass& o) const {
    if (f_ != o.f_) throw UsageError("KClass operands belong to different rank parameters");
    KClass r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

KClass KClass::operator-() const {
    KClass r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

KClass KClass::operator-(const KClass& o) const { return *this + (-o); }

KClass KClass::operator*(const Rat& q) const {
    KClass r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
}

KClass KClass::operator*(const KClass& o) const {
    if (f_ != o.f_) throw UsageError("KClass operands belong to different rank parameters");
    return KClass(f_, table_mul(ring(f_).table, c_, o.c_));
}

bool KClass::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

bool KClass::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x == 0; });
}

std::string k_basis_name(const Field* f, int idx) {
    if (idx == 0) return "1";
    if (idx == 1) return "L1";
    if (idx <= f->n - 3) return "L1^" + std::to_string(idx);
    if (idx == idx_L2(f)) return "L2";
    if (idx == idx_L3(f)) return "L3";
    return "L";
}

std::string KClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if (c_[i] == 0) continue;
        Rat c = c_[i];
        bool neg = c < 0;
        Rat m = neg ? Rat(-c) : c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (i == 0) {
            os << rat_str(m);
        } else {
            if (m != 1) os << rat_str(m) << "*";
            os << k_basis_name(f_, i);
        }
    }
    return first ? "0" : os.str();
}

KClass k_mul(const KClass& a, const KClass& b) { return a * b; }

Rat rank(const KClass& a) {
    Rat r = 0;
    for (int i = 0; i < a.size(); ++i) r += a[i];
    return r;
}

Rat degree(const KClass& a) {
    const Field* f = a.field();
    Rat d = 0;
    for (int k = 1; k <= f->n - 3; ++k) d += a[k] * frac(k, f->n - 2);
    d += (a[idx_L2(f)] + a[idx_L3(f)]) * frac(1, 2);
    d += a[idx_L(f)];
    return d;
}

Cyclotomic chi(int j, int p, const KClass& a) {
    const Field* f = a.field();
    if (j < 1 || j > 3 || p < 1 || p >= f->a[j]) throw std::out_of_range("chi index (j,p)");
    Cyclotomic r(f);
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Kind k = kind_of(f, i);
        Cyclotomic v(f, Rat(1));
        if (j == 1 && k.type == 0) v = Cyclotomic::eta_j(f, 1, -static_cast<long>(p) * k.k);
        if (j == 2 && k.type == 1) v = Cyclotomic(f, Rat(-1));
        if (j == 3 && k.type == 2) v = Cyclotomic(f, Rat(-1));
        r += v * a[i];
    }
    return r;
}

KClass tangent_class(const Field* f) { return ring(f).tp1; }

KClass sigma(const KClass& a) { return a * ring(a.field()).tp1; }

KClass sigma_inv(const KClass& a) { return a * ring(a.field()).tp1_inv; }

KClass sigma_pow(const KClass& a, int s) {
    KClass r = a;
    for (int i = 0; i < s; ++i) r = sigma(r);
    for (int i = 0; i < -s; ++i) r = sigma_inv(r);
    return r;
}

KClass beta_zero(const KClass& b) {
    const int kappa = b.field()->kappa;
    KClass acc(b.field()), cur = b;
    for (int s = 0; s < kappa; ++s) {
        acc = acc + cur;
        cur = sigma(cur);
    }
    return acc * frac(1, kappa);
}

KClass beta_twisted(const KClass& b) { return b - beta_zero(b); }

// ---------------------------------------------------------------- H side

std::vector<HIndex> h_basis(const Field* f) {
    std::vector<HIndex> v{{0, 0}, {0, 1}};
    for (int p = 1; p <= f->n - 3; ++p) v.push_back({1, p});
    v.push_back({2, 1});
    v.push_back({3, 1});
    return v;
}

int h_index(const Field* f, int i, int p) {
    if (i == 0 && (p == 0 || p == 1)) return p;
    if (i == 1 && p >= 1 && p <= f->n - 3) return 1 + p;
    if ((i == 2 || i == 3) && p == 1) return f->n - 3 + i;
    throw std::out_of_range("H basis index (i,p)");
}

std::string h_basis_name(const Field* f, int idx) {
    auto b = h_basis(f).at(idx);
    return "phi" + std::to_string(b.i) + "," + std::to_string(b.p);
}

Rat h_theta(const Field* f, int idx) {
    auto b = h_basis(f).at(idx);
    if (b.i == 0) return b.p == 0 ? frac(1, 2) : frac(-1, 2);
    return frac(1, 2) - frac(b.p, f->a[b.i]);
}

CohVector::CohVector(const Field* f) : f_(f), v_(f->n + 1, Scalar(f)) {}

CohVector CohVector::basis(const Field* f, int idx) {
    CohVector v(f);
    v.v_.at(idx) = Scalar(f, Rat(1));
    return v;
}

CohVector CohVector::operator+(const CohVector& o) const {
    CohVector r = *this;
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
    return r;
}

CohVector CohVector::operator-(const CohVector& o) const {
    CohVector r = *this;
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
    return r;
}

CohVector CohVector::operator*(const Scalar& s) const {
    CohVector r = *this;
    for (auto& x : r.v_) x = x * s;
    return r;
}

bool CohVector::operator==(const CohVector& o) const { return v_ == o.v_; }

bool CohVector::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::string CohVector::str() const {
    std::string s;
    for (int i = 0; i < size(); ++i) {
        if (v_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "[" + v_[i].str() + "]*" + h_basis_name(f_, i);
    }
    return s.empty() ? "0" : s;
}

Rat poincare_basis(const Field* f, int x, int y) {
    auto hb = h_basis(f);
    const auto& a = hb.at(x);
    const auto& b = hb.at(y);
    if (a.i != b.i) return 0;
    if (a.i == 0) return a.p + b.p == 1 ? Rat(1) : Rat(0);
    const int ai = f->a[a.i];
    return a.p + b.p == ai ? frac(1, ai) : Rat(0);
}

Scalar poincare(const CohVector& u, const CohVector& v) {
    const Field* f = u.field();
    Scalar r(f);
    for (int x = 0; x < u.size(); ++x) {
        if (u[x].is_zero()) continue;
        for (int y = 0; y < v.size(); ++y) {
            if (v[y].is_zero()) continue;
            Rat g = poincare_basis(f, x, y);
            if (g != 0) r += u[x] * v[y] * g;
        }
    }
    return r;
}

CohVector theta_apply(const CohVector& v) {
    CohVector r = v;
    for (int i = 0; i < v.size(); ++i) r[i] = v[i] * h_theta(v.field(), i);
    return r;
}

CohVector rho_apply(const CohVector& v) {
    const Field* f = v.field();
    CohVector r(f);
    r[1] = v[0] * frac(1, f->n - 2);
    return r;
}

CohVector exp_pi_i_theta(const CohVector& v) {
    const Field* f = v.field();
    CohVector r = v;
    for (int i = 0; i < v.size(); ++i)
        r[i] = v[i] * Scalar(Cyclotomic::exp_pi_i(f, h_theta(f, i)));
    return r;
}

CohVector psi_map(const KClass& a) {
    const Field* f = a.field();
    CohVector v(f);
    const Rat rk = rank(a);
    v[0] = Scalar(f, rk);
    v[1] = Scalar::euler_gamma(f) * Rat(-rk / (f->n - 2)) + Scalar::two_pi_i(f) * degree(a);
    for (int j = 1; j <= 3; ++j)
        for (int p = 1; p < f->a[j]; ++p) {
            Cyclotomic c = chi(j, p, a);
            if (c.is_zero()) continue;
            v[h_index(f, j, p)] = Scalar::gamma(f, j, f->a[j] - p) * Scalar(c);
        }
    return v;
}

Rat euler_pair(const KClass& a, const KClass& b) {
    const Field* f = a.field();
    if (f != b.field()) throw UsageError("euler_pair operands belong to different rank parameters");
    CohVector pb = psi_map(b);
    CohVector rhs = exp_pi_i_theta(pb + rho_apply(pb) * (Scalar::pi(f) * Scalar(Cyclotomic::imag(f))));
    Scalar s = poincare(psi_map(a), rhs) * Scalar::symbol(f, kPi, -1) * frac(1, 2);
    return s.assert_rational();
}

Rat inter_pair(const KClass& a, const KClass& b) { return euler_pair(a, b) + euler_pair(b, a); }

const GramTables& GramTables::get(const Field* f) {
    static std::array<std::unique_ptr<GramTables>, 16> cache;
    static std::array<std::once_flag, 16> once;
    std::call_once(once[f->n], [f] {
        auto g = std::make_unique<GramTables>();
        const int d = f->n + 1;
        g->euler.assign(d, std::vector<Rat>(d, Rat(0)));
        g->inter.assign(d, std::vector<Rat>(d, Rat(0)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g->euler[i][j] = euler_pair(KClass::basis(f, i), KClass::basis(f, j));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g->inter[i][j] = g->euler[i][j] + g->euler[j][i];
        cache[f->n] = std::move(g);
    });
    return *cache[f->n];
}

namespace {
Rat bilinear(const std::vector<std::vector<Rat>>& G, const KClass& a, const KClass& b) {
    Rat r = 0;
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rat row = 0;
        for (int j = 0; j < b.size(); ++j)
            if (b[j] != 0) row += G[i][j] * b[j];
        r += a[i] * row;
    }
    return r;
}
}  // namespace

Rat euler_fast(const KClass& a, const KClass& b) { return bilinear(GramTables::get(a.field()).euler, a, b); }
Rat inter_fast(const KClass& a, const KClass& b) { return bilinear(GramTables::get(a.field()).inter, a, b); }

// ---------------------------------------------------------------- roots

std::vector<EpsLabel> eps_labels(const Field* f) {
    std::vector<EpsLabel> v;
    for (int i = 1; i <= f->n - 2; ++i) v.push_back({1, i});
    v.push_back({2, 1});
    v.push_back({3, 1});
    return v;
}

KClass eps_vector(const Field* f, EpsLabel lab) {
    KClass half = (KClass::L2(f) + KClass::L3(f)) * frac(1, 2);
    switch (lab.sector) {
        case 1:
            if (lab.i < 1 || lab.i > f->n - 2) break;
            return KClass::L1pow(f, lab.i) + half - KClass::one(f);
        case 2:
            if (lab.i != 1) break;
            return half - KClass::one(f);
        case 3:
            if (lab.i != 1) break;
            return (KClass::L2(f) - KClass::L3(f)) * frac(1, 2);
        default: break;
    }
    throw std::out_of_range("eps label");
}

std::string eps_name(EpsLabel lab) {
    return "eps" + std::to_string(lab.sector) + "_" + std::to_string(lab.i);
}

KClass canonical_mod_kernel(const KClass& a) {
    const Field* f = a.field();
    const Rat& cl = a[idx_L(f)];
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), cl.get_num_mpz_t(), cl.get_den_mpz_t());
    KClass shift = (KClass::L(f) - KClass::one(f)) * Rat(fl);
    return a - shift;
}

std::vector<KClass> reflection_vectors(const Field* f, int m_range) {
    if (m_range < 0) throw UsageError("m_range must be nonnegative");
    auto labels = eps_labels(f);
    KClass kern = KClass::L(f) - KClass::one(f);
    std::set<KClass> out;
    for (size_t x = 0; x < labels.size(); ++x)
        for (size_t y = 0; y < labels.size(); ++y) {
            if (x == y) continue;
            KClass ex = eps_vector(f, labels[x]), ey = eps_vector(f, labels[y]);
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    KClass base = (ex + ey * Rat(s2)) * Rat(s1);
                    for (int m = -m_range; m <= m_range; ++m) out.insert(base + kern * Rat(m));
                }
        }
    return {out.begin(), out.end()};
}

KClass reflect(const KClass& a, const KClass& x) {
    if (inter_fast(a, a) != 2) throw NotARoot("reflection vector must have (a|a) = 2: " + a.str());
    return x - a * inter_fast(a, x);
}

}  // namespace orbline
