#include "orbline/fock.hpp"

#include <cctype>
#include <mutex>
#include <sstream>

namespace orbline {

FockSpace FockSpace::make(const Field* f, int K, int D) {
    if (K < 0 || D < 0) throw UsageError("FockSpace: negative cap");
    FockSpace fs;
    fs.f = f;
    fs.K = K;
    fs.D = D;
    std::vector<std::string> names;
    std::vector<int> weight;
    std::vector<bool> laurent;
    const auto hb = h_basis(f);
    for (int a = 0; a <= f->n; ++a)
        for (int k = 0; k <= K; ++k) {
            names.push_back("q(" + std::to_string(hb[a].i) + "," + std::to_string(hb[a].p) + "," +
                            std::to_string(k) + ")");
            weight.push_back(1);
            laurent.push_back(false);
        }
    names.push_back("u");
    weight.push_back(1);
    laurent.push_back(false);
    names.push_back("h");
    weight.push_back(0);
    laurent.push_back(true);
    fs.ring = make_ring(names, weight, laurent);
    return fs;
}

int FockSpace::q(int a, int k) const {
    if (a < 0 || a > f->n) throw UsageError("FockSpace: basis index out of range");
    if (k < 0 || k > K)
        throw CapExceeded("descendant index " + std::to_string(k) + " beyond K = " + std::to_string(K));
    return a * (K + 1) + k;
}

void FockSpace::check_window(const Poly& p) const {
    auto [lo, hi] = p.exponent_range(h());
    if (lo < -h_window || hi > h_window) throw CapExceeded("hbar exponent outside the declared window");
}

HField HField::term(const CohVector& v, int k) {
    HField r(v.field());
    r.c[k] = v;
    return r;
}

CohVector HField::at(int k) const {
    auto it = c.find(k);
    return it == c.end() ? CohVector(f) : it->second;
}

int HField::lo() const { return c.empty() ? 0 : c.begin()->first; }
int HField::hi() const { return c.empty() ? -1 : c.rbegin()->first; }

HField HField::plus() const {
    HField r(f);
    for (const auto& [k, v] : c)
        if (k >= 0) r.c[k] = v;
    return r;
}

HField HField::minus() const {
    HField r(f);
    for (const auto& [k, v] : c)
        if (k < 0) r.c[k] = v;
    return r;
}

HField HField::operator+(const HField& o) const {
    HField r = *this;
    if (!r.f) r.f = o.f;
    for (const auto& [k, v] : o.c) {
        auto it = r.c.find(k);
        if (it == r.c.end())
            r.c[k] = v;
        else
            it->second = it->second + v;
    }
    return r;
}

HField HField::operator-(const HField& o) const { return *this + o * Scalar(o.f, Rat(-1)); }

HField HField::operator*(const Scalar& s) const {
    HField r(f);
    for (const auto& [k, v] : c) r.c[k] = v * s;
    return r;
}

bool HField::is_zero() const {
    for (const auto& [k, v] : c)
        if (!v.is_zero()) return false;
    return true;
}

const std::vector<CohVector>& dual_basis(const Field* f) {
    static std::mutex mu;
    static std::map<const Field*, std::vector<CohVector>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    std::vector<CohVector> d;
    for (int a = 0; a <= f->n; ++a) {
        CohVector v(f);
        for (int b = 0; b <= f->n; ++b) {
            Rat g = poincare_basis(f, a, b);
            if (g != 0) v[b] = Scalar(f, 1 / g);
        }
        d.push_back(v);
    }
    return cache.emplace(f, std::move(d)).first->second;
}

Scalar omega(const HField& f, const HField& g) {
    const Field* fld = f.f ? f.f : g.f;
    Scalar r(fld);
    for (const auto& [k, v] : f.c) {
        auto it = g.c.find(-k - 1);
        if (it == g.c.end()) continue;
        Scalar p = poincare(v, it->second);
        r += (k % 2 == 0) ? p : -p;
    }
    return r;
}

namespace {

Scalar sign(const Field* f, int e) { return Scalar(f, Rat(e % 2 == 0 ? 1 : -1)); }

// creation operator sum (-1)^{l+1} (f_k, phi_b) u q_{b,l} / h for f = fminus
Poly creation(const FockSpace& fs, const HField& fm) {
    Poly X = fs.zero();
    for (const auto& [k, v] : fm.c) {
        if (k >= 0) throw UsageError("creation part has a nonnegative z power");
        const int l = -k - 1;
        for (int b = 0; b <= fs.f->n; ++b) {
            Scalar c = poincare(v, CohVector::basis(fs.f, b));
            if (c.is_zero()) continue;
            Mono m{};
            m[fs.q(b, l)] = 1;
            m[fs.u()] = 1;
            m[fs.h()] = -1;
            X.add(m, c * sign(fs.f, l + 1));
        }
    }
    return X;
}

}  // namespace

Poly heisenberg_apply(const FockSpace& fs, const HField& f, const Poly& tau) {
    Poly r = fs.zero();
    for (const auto& [k, v] : f.c) {
        if (k < 0) continue;
        for (int a = 0; a <= fs.f->n; ++a) {
            if (v[a].is_zero()) continue;
            r -= tau.diff(fs.q(a, k)).times_var(fs.u()).times_var(fs.h()) * v[a];
        }
    }
    r += creation(fs, f.minus()) * tau;
    fs.check_window(r);
    return r;
}

Poly vertex_apply(const FockSpace& fs, const HField& fplus, const HField& fminus, const Poly& tau) {
    Poly r = tau.with_cap(std::min(tau.cap(), fs.D));
    for (const auto& [k, v] : fplus.c) {
        if (k < 0) throw UsageError("annihilation part has a negative z power");
        for (int a = 0; a <= fs.f->n; ++a) {
            if (v[a].is_zero()) continue;
            Mono m{};
            m[fs.u()] = 1;
            m[fs.h()] = 1;
            r = r.translate(fs.q(a, k), Poly::monomial(fs.f, fs.ring, m, -v[a], fs.D));
        }
    }
    Poly X = creation(fs, fminus);
    if (!X.is_zero()) r = exp_series(X) * r;
    fs.check_window(r);
    return r;
}

HMatrix zero_matrix(const Field* f) {
    return HMatrix(f->n + 1, std::vector<Scalar>(f->n + 1, Scalar(f)));
}

HMatrix matmul(const HMatrix& a, const HMatrix& b) {
    const int d = static_cast<int>(a.size());
    const Field* f = a[0][0].field();
    HMatrix r(d, std::vector<Scalar>(d, Scalar(f)));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < d; ++j)
                if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

namespace {

bool matrix_zero(const HMatrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

void prune(MatSeries& s) {
    for (auto it = s.m.begin(); it != s.m.end();)
        it = matrix_zero(it->second) ? s.m.erase(it) : std::next(it);
}

HMatrix matadd(const HMatrix& a, const HMatrix& b, const Scalar& sb) {
    HMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!b[i][j].is_zero()) r[i][j] += b[i][j] * sb;
    return r;
}

}  // namespace

MatSeries MatSeries::identity(const Field* f) {
    MatSeries s(f);
    HMatrix id = zero_matrix(f);
    for (int i = 0; i <= f->n; ++i) id[i][i] = Scalar(f, Rat(1));
    s.m[0] = id;
    return s;
}

HMatrix MatSeries::at(int k) const {
    auto it = m.find(k);
    return it == m.end() ? zero_matrix(f) : it->second;
}

HField MatSeries::apply(const HField& v) const {
    HField r(f);
    for (const auto& [k, M] : m)
        for (const auto& [j, x] : v.c) {
            CohVector y(f);
            for (int a = 0; a <= f->n; ++a)
                for (int b = 0; b <= f->n; ++b)
                    if (!M[a][b].is_zero() && !x[b].is_zero()) y[a] += M[a][b] * x[b];
            r = r + HField::term(y, k + j);
        }
    HField out(f);
    for (auto& [k, y] : r.c)
        if (!y.is_zero()) out.c[k] = y;
    return out;
}

MatSeries MatSeries::operator+(const MatSeries& o) const {
    MatSeries r = *this;
    if (!r.f) r.f = o.f;
    for (const auto& [k, M] : o.m) r.m[k] = matadd(r.at(k), M, Scalar(r.f, Rat(1)));
    prune(r);
    return r;
}

MatSeries MatSeries::operator-(const MatSeries& o) const { return *this + o * Scalar(o.f, Rat(-1)); }

MatSeries MatSeries::operator*(const MatSeries& o) const {
    MatSeries r(f);
    for (const auto& [k, A] : m)
        for (const auto& [l, B] : o.m) r.m[k + l] = matadd(r.at(k + l), matmul(A, B), Scalar(f, Rat(1)));
    prune(r);
    return r;
}

MatSeries MatSeries::operator*(const Scalar& s) const {
    MatSeries r(f);
    for (const auto& [k, M] : m) r.m[k] = matadd(zero_matrix(f), M, s);
    prune(r);
    return r;
}

MatSeries MatSeries::adjoint() const {
    // (A* u, v) = (u, A v): A* = G^{-1} A^T G
    MatSeries r(f);
    const int d = f->n + 1;
    HMatrix G = zero_matrix(f), Gi = zero_matrix(f);
    const auto& dual = dual_basis(f);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            G[a][b] = Scalar(f, poincare_basis(f, a, b));
            Gi[b][a] = dual[a][b];
        }
    for (const auto& [k, M] : m) {
        HMatrix T = zero_matrix(f);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) T[a][b] = M[b][a];
        r.m[k] = matmul(matmul(Gi, T), G);
    }
    prune(r);
    return r;
}

MatSeries MatSeries::reflect() const {
    MatSeries r(f);
    for (const auto& [k, M] : m) r.m[k] = k % 2 == 0 ? M : matadd(zero_matrix(f), M, Scalar(f, Rat(-1)));
    return r;
}

bool MatSeries::is_zero() const {
    for (const auto& [k, M] : m)
        if (!matrix_zero(M)) return false;
    return true;
}

bool MatSeries::operator==(const MatSeries& o) const { return (*this - o).is_zero(); }

bool is_infinitesimally_symplectic(const MatSeries& A) { return (A.adjoint().reflect() + A).is_zero(); }

bool is_symplectic(const MatSeries& S) {
    return S.adjoint().reflect() * S == MatSeries::identity(S.f);
}

MatSeries series_log(const MatSeries& S) {
    MatSeries N = S - MatSeries::identity(S.f);
    MatSeries r(S.f), pw = N;
    for (int j = 1; j <= 64; ++j) {
        if (pw.is_zero()) return r;
        r = r + pw * Scalar(S.f, frac(j % 2 ? 1 : -1, j));
        pw = pw * N;
    }
    throw UsageError("series_log: S - 1 is not nilpotent");
}

std::vector<CohVector> isotropic_basis(const Field* f) {
    std::vector<CohVector> u{CohVector::basis(f, 1)};
    for (int p = 1; 2 * p < f->n - 2; ++p) u.push_back(CohVector::basis(f, h_index(f, 1, p)));
    u.push_back(CohVector::basis(f, f->n - 1) +
                CohVector::basis(f, f->n) * Scalar(Cyclotomic::imag(f)));
    return u;
}

MatSeries isotropic_series(const Field* f, const std::vector<std::vector<std::vector<Rat>>>& B) {
    const auto u = isotropic_basis(f);
    const int r = static_cast<int>(u.size());
    MatSeries S = MatSeries::identity(f);
    for (std::size_t k = 0; k < B.size(); ++k) {
        if (static_cast<int>(B[k].size()) != r) throw UsageError("isotropic_series: block size");
        HMatrix M = zero_matrix(f);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                if (B[k][a][b] == 0) continue;
                for (int j = 0; j <= f->n; ++j) {
                    Scalar pb = poincare(u[b], CohVector::basis(f, j));
                    if (pb.is_zero()) continue;
                    for (int i = 0; i <= f->n; ++i)
                        if (!u[a][i].is_zero()) M[i][j] += u[a][i] * pb * B[k][a][b];
                }
            }
        S.m[-static_cast<int>(k) - 1] = M;
    }
    prune(S);
    return S;
}

QuadOp QuadOp::operator-() const {
    QuadOp r = *this;
    for (auto& t : r.terms) t.c = -t.c;
    return r;
}

QuadOp quantize(const FockSpace& fs, const MatSeries& A) {
    if (!is_infinitesimally_symplectic(A))
        throw NotInfinitesimallySymplectic("A*(-z) + A(z) does not vanish");
    const Field* f = fs.f;
    QuadOp op;
    if (A.m.empty()) return op;
    const int spread = std::max(std::abs(A.m.begin()->first), std::abs(A.m.rbegin()->first));
    const int kx = fs.K + spread + 1;
    const int d = f->n + 1;
    const auto& dual = dual_basis(f);
    auto Q = [&](int a, int k) { return HField::term(CohVector::basis(f, a), k); };
    auto P = [&](int a, int k) { return HField::term(dual[a] * sign(f, k + 1), -k - 1); };
    std::vector<HField> AQ, AP;
    for (int a = 0; a < d; ++a)
        for (int k = 0; k <= kx; ++k) {
            AQ.push_back(A.apply(Q(a, k)));
            AP.push_back(A.apply(P(a, k)));
        }
    auto id = [&](int a, int k) { return a * (kx + 1) + k; };
    const Rat half = frac(1, 2);
    for (int a = 0; a < d; ++a)
        for (int k = 0; k <= kx; ++k)
            for (int b = 0; b < d; ++b)
                for (int l = 0; l <= kx; ++l) {
                    Scalar qq = omega(AQ[id(a, k)], Q(b, l)) * half;
                    if (!qq.is_zero()) op.terms.push_back({QuadOp::kQQ, a, k, b, l, qq});
                    Scalar pp = omega(AP[id(a, k)], P(b, l)) * half;
                    if (!pp.is_zero()) op.terms.push_back({QuadOp::kPP, a, k, b, l, pp});
                    Scalar qp = (omega(AQ[id(a, k)], P(b, l)) + omega(AP[id(b, l)], Q(a, k))) * half;
                    if (!qp.is_zero()) op.terms.push_back({QuadOp::kQP, a, k, b, l, qp});
                }
    return op;
}

Poly QuadOp::apply(const FockSpace& fs, const Poly& tau) const {
    Poly r = fs.zero();
    for (const auto& t : terms) {
        switch (t.kind) {
            case kQQ:
                r += tau.times_var(fs.q(t.a, t.k)).times_var(fs.q(t.b, t.l)).times_var(fs.h(), -2) * t.c;
                break;
            case kPP:
                if (t.k > fs.K || t.l > fs.K) break;
                r += tau.diff(fs.q(t.a, t.k)).diff(fs.q(t.b, t.l)).times_var(fs.h(), 2) * t.c;
                break;
            case kQP: {
                if (t.l > fs.K) break;
                Poly d = tau.diff(fs.q(t.b, t.l));
                if (d.is_zero()) break;
                r += d.times_var(fs.q(t.a, t.k)) * t.c;
                break;
            }
        }
    }
    fs.check_window(r);
    return r;
}

Poly QuadOp::exp_apply(const FockSpace& fs, const Poly& tau) const {
    Poly sum = tau, term = tau;
    for (int j = 1; j <= 4 * fs.D + 64; ++j) {
        term = apply(fs, term) * frac(1, j);
        if (term.is_zero()) return sum;
        sum += term;
    }
    throw CapExceeded("exponential of a quantized operator does not terminate at the cap");
}

Poly quantize_quadratic(const FockSpace& fs, const MatSeries& A, const Poly& tau) {
    return quantize(fs, A).apply(fs, tau);
}

std::map<std::pair<int, int>, HMatrix> w_matrices(const MatSeries& S) {
    const Field* f = S.f;
    int d = 0;
    for (const auto& [k, M] : S.m) {
        if (k > 0 || (k == 0 && !(M == MatSeries::identity(f).at(0))))
            throw UsageError("w_form expects S = 1 + O(1/z)");
        d = std::max(d, -k);
    }
    MatSeries Sa = S.adjoint();
    auto Sk = [&](int k) { return S.at(-k); };
    auto Sak = [&](int k) { return Sa.at(-k); };
    auto N = [&](int k, int l) {
        HMatrix r = matmul(Sak(k), Sk(l));
        if (k == 0 && l == 0)
            for (int i = 0; i <= f->n; ++i) r[i][i] -= Scalar(f, Rat(1));
        return r;
    };
    std::map<std::pair<int, int>, HMatrix> W;
    auto Wat = [&](int k, int l) {
        auto it = W.find({k, l});
        return (k < 0 || l < 0 || it == W.end()) ? zero_matrix(f) : it->second;
    };
    if (!matrix_zero(N(0, 0))) throw NotDivisible("constant term of S*(w)S(z) - 1");
    for (int s = 1; s <= 2 * d; ++s) {
        for (int k = 0; k < s; ++k) {
            HMatrix w = matadd(N(k, s - k), Wat(k - 1, s - k), Scalar(f, Rat(-1)));
            if (!matrix_zero(w)) W[{k, s - k - 1}] = w;
        }
        HMatrix rem = matadd(N(s, 0), Wat(s - 1, 0), Scalar(f, Rat(-1)));
        if (!matrix_zero(rem))
            throw NotDivisible("S*(w)S(z) - 1 is not divisible by 1/z + 1/w at degree " + std::to_string(s));
    }
    return W;
}

Scalar w_form(const MatSeries& S, const HField& f, const HField& g) {
    Scalar r(S.f);
    for (const auto& [kl, M] : w_matrices(S)) {
        auto [k, l] = kl;
        CohVector gl = g.at(l), fk = f.at(k);
        if (gl.is_zero() || fk.is_zero()) continue;
        MatSeries Wm(S.f);
        Wm.m[0] = M;
        HField img = Wm.apply(HField::term(gl, 0));
        r += poincare(img.at(0), fk);
    }
    return r;
}

ConjugationSides s_conjugation_check(const FockSpace& fs, const MatSeries& S, const HField& f,
                                     const Poly& tau) {
    if (!is_symplectic(S)) throw NotInfinitesimallySymplectic("S is not symplectic");
    QuadOp A = quantize(fs, series_log(S));
    QuadOp minusA = -A;
    ConjugationSides out;
    out.lhs = A.exp_apply(fs, vertex_apply(fs, f.plus(), f.minus(), minusA.exp_apply(fs, tau)));
    HField Sf = S.apply(f);
    Scalar w = w_form(S, f.plus(), f.plus()) * frac(1, 2);
    Poly phase = fs.one();
    if (!w.is_zero()) phase = exp_series(fs.var(fs.u(), 2) * w);
    out.rhs = phase * vertex_apply(fs, Sf.plus(), Sf.minus(), tau);
    return out;
}

namespace {

std::string rat_text(const Rat& q) { return q.get_den() == 1 ? q.get_num().get_str() : q.get_str(); }

}  // namespace

std::string serialize(const FockSpace& fs, const Poly& p) {
    std::ostringstream os;
    const auto hb = h_basis(fs.f);
    for (const auto& [m, c] : p.terms()) {
        if (m[fs.u()] != 0) throw UsageError("serialize: marker u present; set u = 1 first");
        os << rat_text(frac(m[fs.h()], 2)) << " | [";
        bool first = true;
        for (int a = 0; a <= fs.f->n; ++a)
            for (int k = 0; k <= fs.K; ++k) {
                int e = m[fs.q(a, k)];
                if (!e) continue;
                if (!first) os << ",";
                first = false;
                os << "(" << hb[a].i << "," << hb[a].p << "," << k << "):" << e;
            }
        os << "] | " << c.str() << "\n";
    }
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    int line;
    void skip() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(line, static_cast<int>(pos) + 1, what);
    }
    void expect(char ch) {
        skip();
        if (pos >= s.size() || s[pos] != ch) fail(std::string("expected '") + ch + "'");
        ++pos;
    }
    long integer() {
        skip();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1]))) {
            pos = start;
            fail("expected an integer");
        }
        return std::stol(s.substr(start, pos - start));
    }
    Rat rational() {
        long num = integer();
        skip();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            std::size_t at = pos;
            long den = integer();
            if (den == 0) {
                pos = at;
                fail("zero denominator");
            }
            return frac(num, den);
        }
        return Rat(num);
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
};

}  // namespace

Poly parse_fock(const FockSpace& fs, const std::string& text) {
    Poly p(fs.f, fs.ring, fs.D);
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        Cursor cur{raw, 0, line};
        if (cur.done() || raw[cur.pos] == '#') continue;
        Mono m{};
        std::size_t at = cur.pos;
        Rat he = cur.rational() * 2;
        if (he.get_den() != 1) {
            cur.pos = at;
            cur.fail("hbar exponent must be a multiple of 1/2");
        }
        m[fs.h()] = static_cast<std::int8_t>(he.get_num().get_si());
        cur.expect('|');
        cur.expect('[');
        cur.skip();
        if (cur.pos < raw.size() && raw[cur.pos] != ']') {
            for (;;) {
                cur.expect('(');
                std::size_t vat = cur.pos;
                int i = static_cast<int>(cur.integer());
                cur.expect(',');
                int pp = static_cast<int>(cur.integer());
                cur.expect(',');
                int k = static_cast<int>(cur.integer());
                cur.expect(')');
                cur.expect(':');
                int e = static_cast<int>(cur.integer());
                int a;
                try {
                    a = h_index(fs.f, i, pp);
                } catch (const std::out_of_range&) {
                    cur.pos = vat;
                    cur.fail("no basis vector (" + std::to_string(i) + "," + std::to_string(pp) + ")");
                }
                if (k < 0 || k > fs.K || e < 0 || e > 100) {
                    cur.pos = vat;
                    cur.fail("index or exponent out of range");
                }
                m[fs.q(a, k)] = static_cast<std::int8_t>(m[fs.q(a, k)] + e);
                cur.skip();
                if (cur.pos < raw.size() && raw[cur.pos] == ',') {
                    ++cur.pos;
                    continue;
                }
                break;
            }
        }
        cur.expect(']');
        cur.expect('|');
        Rat c = cur.rational();
        if (!cur.done()) cur.fail("trailing characters");
        if (p.weight(m) > fs.D) throw ParseError(line, 1, "term exceeds the degree cap");
        p.add(m, Scalar(fs.f, c));
    }
    return p;
}

}  // namespace orbline
