#include "orbline/scalars.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace orbline {

namespace {

constexpr int kMinN = 4;
constexpr int kMaxN = 12;

using IPoly = std::vector<long>;  // integer coefficients, low degree first

IPoly ipoly_divexact(IPoly num, const IPoly& den) {
    IPoly q(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        long c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        for (size_t k = 0; k < den.size(); ++k) num[i + k] -= c * den[k];
    }
    return q;
}

IPoly cyclotomic_poly(int m) {
    IPoly p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) p = ipoly_divexact(p, cyclotomic_poly(d));
    return p;
}

std::unique_ptr<Field> build_field(int n) {
    auto f = std::make_unique<Field>();
    f->n = n;
    f->a = {0, n - 2, 2, 2};
    f->kappa = 2 * (n - 2);
    f->M = std::lcm(4, f->kappa);
    IPoly phi = cyclotomic_poly(f->M);
    f->deg = static_cast<int>(phi.size()) - 1;
    for (long c : phi) f->phi.emplace_back(c);
    const int d = f->deg;
    f->xpow.assign(2 * f->M, std::vector<Rat>(d, Rat(0)));
    for (int k = 0; k < 2 * f->M; ++k) {
        if (k < d) {
            f->xpow[k][k] = 1;
            continue;
        }
        // x^k = x * x^{k-1}
        const auto& prev = f->xpow[k - 1];
        std::vector<Rat> cur(d, Rat(0));
        for (int i = 0; i + 1 < d; ++i) cur[i + 1] = prev[i];
        const Rat top = prev[d - 1];
        if (top != 0)
            for (int i = 0; i < d; ++i) cur[i] -= top * f->phi[i];
        f->xpow[k] = std::move(cur);
    }
    return f;
}

}  // namespace

int min_rank() { return kMinN; }
int max_rank() { return kMaxN; }

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat harmonic(int k) {
    Rat h = 0;
    for (int i = 1; i <= k; ++i) h += frac(1, i);
    return h;
}

Rat factorial(int k) {
    mpz_class r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return Rat(r);
}

const Field* Field::get(int n) {
    if (n < kMinN || n > kMaxN)
        throw UsageError("rank parameter n must lie in [" + std::to_string(kMinN) + ", " +
                         std::to_string(kMaxN) + "], got " + std::to_string(n));
    static std::array<std::unique_ptr<Field>, kMaxN + 1> cache;
    static std::array<std::once_flag, kMaxN + 1> once;
    std::call_once(once[n], [n] { cache[n] = build_field(n); });
    return cache[n].get();
}

// ---------------------------------------------------------------- Cyclotomic

Cyclotomic::Cyclotomic(const Field* f) : f_(f), c_(f->deg, Rat(0)) {}

Cyclotomic::Cyclotomic(const Field* f, const Rat& q) : Cyclotomic(f) { c_[0] = q; }

Cyclotomic Cyclotomic::zeta(const Field* f, long k) {
    long r = k % f->M;
    if (r < 0) r += f->M;
    Cyclotomic z(f);
    z.c_ = f->xpow[r];
    return z;
}

Cyclotomic Cyclotomic::eta(const Field* f, long k) { return zeta(f, k * (f->M / f->kappa)); }

Cyclotomic Cyclotomic::eta_j(const Field* f, int j, long k) {
    return zeta(f, k * (f->M / f->a.at(j)));
}

Cyclotomic Cyclotomic::imag(const Field* f) { return zeta(f, f->M / 4); }

Cyclotomic Cyclotomic::exp_2pi_i(const Field* f, const Rat& q) {
    Rat e = q * f->M;
    if (e.get_den() != 1)
        throw std::domain_error("exp(2 pi i q) outside Q(zeta_M) for q = " + rat_str(q));
    return zeta(f, e.get_num().get_si());
}

Cyclotomic Cyclotomic::exp_pi_i(const Field* f, const Rat& q) { return exp_2pi_i(f, q / 2); }

Cyclotomic Cyclotomic::sin_pi(const Field* f, int p, int a) {
    if ((f->M % (2 * a)) != 0) throw std::domain_error("sin(pi p/a) needs 2a | M");
    long u = static_cast<long>(p) * (f->M / (2 * a));
    Cyclotomic num = zeta(f, u) - zeta(f, -u);
    return num * (imag(f) * Rat(2)).inverse();
}

void Cyclotomic::check(const Cyclotomic& o) const {
    if (f_ && o.f_ && f_ != o.f_)
        throw UsageError("cyclotomic operands belong to different rank parameters");
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::rational() const { return c_.empty() ? Rat(0) : c_[0]; }

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Cyclotomic r = *this;
    r += o;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check(o);
    if (!o.f_) return *this;
    if (!f_) return *this = o;
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    check(o);
    if (!f_ || !o.f_) return Cyclotomic();
    const int d = f_->deg;
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    for (int i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < d; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    Cyclotomic r(f_);
    for (int k = 0; k < 2 * d - 1; ++k) {
        if (prod[k] == 0) continue;
        if (k < d) {
            r.c_[k] += prod[k];
        } else {
            const auto& red = f_->xpow[k];
            for (int i = 0; i < d; ++i)
                if (red[i] != 0) r.c_[i] += prod[k] * red[i];
        }
    }
    return r;
}

Cyclotomic Cyclotomic::operator*(const Rat& q) const {
    Cyclotomic r = *this;
    r *= q;
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Rat& q) {
    for (auto& x : c_) x *= q;
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (!f_ || is_zero()) throw NotInvertible("inverse of zero cyclotomic");
    const int d = f_->deg;
    if (is_rational()) return Cyclotomic(f_, 1 / c_[0]);
    // columns: this * x^j; solve A y = e_0
    std::vector<std::vector<Rat>> A(d, std::vector<Rat>(d + 1, Rat(0)));
    for (int j = 0; j < d; ++j) {
        Cyclotomic col = *this * zeta(f_, j);
        for (int i = 0; i < d; ++i) A[i][j] = col.c_[i];
    }
    A[0][d] = 1;
    for (int c = 0; c < d; ++c) {
        int piv = c;
        while (piv < d && A[piv][c] == 0) ++piv;
        if (piv == d) throw NotInvertible("singular multiplication matrix");
        std::swap(A[piv], A[c]);
        Rat inv = 1 / A[c][c];
        for (int k = c; k <= d; ++k) A[c][k] *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rat fac = A[r][c];
            for (int k = c; k <= d; ++k) A[r][k] -= fac * A[c][k];
        }
    }
    Cyclotomic y(f_);
    for (int i = 0; i < d; ++i) y.c_[i] = A[i][d];
    return y;
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic r(f_, Rat(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (!f_ || !o.f_) return is_zero() && o.is_zero();
    check(o);
    return c_ == o.c_;
}

int Cyclotomic::compare(const Cyclotomic& o) const {
    const size_t d = std::max(c_.size(), o.c_.size());
    for (size_t i = 0; i < d; ++i) {
        Rat x = i < c_.size() ? c_[i] : Rat(0);
        Rat y = i < o.c_.size() ? o.c_[i] : Rat(0);
        int c = cmp(x, y);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::string Cyclotomic::str() const {
    if (is_zero()) return "0";
    if (is_rational()) return rat_str(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        Rat c = c_[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Rat m = neg ? Rat(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << rat_str(m);
        } else {
            if (m != 1) os << rat_str(m) << "*";
            os << "zeta";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- symbols

int gamma_slot(int j, int p) {
    if (j == 1) {
        if (p < 1 || p > 10) throw std::out_of_range("G(1,p) index");
        return kG1 + p - 1;
    }
    if (j == 2 && p == 1) return kG2;
    if (j == 3 && p == 1) return kG3;
    throw std::out_of_range("G(j,p) index");
}

std::string symbol_name(int slot) {
    switch (slot) {
        case kEG: return "E_G";
        case kG2: return "G(2,1)";
        case kG3: return "G(3,1)";
        case kLQ: return "L_Q";
        case kNQ: return "N_Q";
        case kPi: return "Pi";
        case kR: return "R";
        case kS2: return "S2";
        default: break;
    }
    if (slot >= kG1 && slot < kG2) return "G(1," + std::to_string(slot - kG1 + 1) + ")";
    throw std::out_of_range("symbol slot");
}

bool TransMonomial::trivial() const {
    for (auto x : e)
        if (x) return false;
    return true;
}

std::string TransMonomial::str(const Field*) const {
    std::string s;
    for (int i = 0; i < kNumSyms; ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += symbol_name(i);
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Field* f) : f_(f) {}

Scalar::Scalar(const Field* f, const Rat& q) : f_(f) {
    if (q != 0) t_.emplace_back(TransMonomial{}, Cyclotomic(f, q));
}

Scalar::Scalar(const Cyclotomic& c) : f_(c.field()) {
    if (f_ && !c.is_zero()) t_.emplace_back(TransMonomial{}, c);
}

Scalar Scalar::symbol(const Field* f, int slot, int power) {
    if (power < 0 && (slot == kEG || slot == kLQ || (slot >= kG1 && slot <= kG3)))
        return symbol(f, slot, -power).inverse();
    TransMonomial m;
    m.e[slot] = static_cast<std::int16_t>(power);
    Cyclotomic c(f, Rat(1));
    normalize(f, m, c);
    Scalar s(f);
    s.t_.emplace_back(m, c);
    return s;
}

Scalar Scalar::gamma(const Field* f, int j, int p) {
    if (j < 1 || j > 3 || p < 1 || p >= f->a[j]) throw std::out_of_range("Gamma(p/a_j) index");
    return symbol(f, gamma_slot(j, p));
}

Scalar Scalar::inv_gamma(const Field* f, int j, int p) {
    // 1/Gamma(q) = Gamma(1-q) sin(pi q) / pi
    const int a = f->a.at(j);
    Scalar r = gamma(f, j, a - p) * Scalar(Cyclotomic::sin_pi(f, p, a));
    return r * symbol(f, kPi, -1);
}

Scalar Scalar::euler_gamma(const Field* f) {
    return symbol(f, kEG) + symbol(f, kLQ) * Rat(f->n - 2);
}

Scalar Scalar::digamma(const Field* f, int k) {
    if (k < 1) throw std::domain_error("digamma at non-positive integer");
    return Scalar(f, harmonic(k - 1)) - symbol(f, kEG);
}

Scalar Scalar::sqrt2(const Field* f) { return f->n == 4 ? symbol(f, kR) : symbol(f, kS2); }

Scalar Scalar::two_pi_i(const Field* f) {
    return pi(f) * Scalar(Cyclotomic::imag(f) * Rat(2));
}

void Scalar::normalize(const Field* f, TransMonomial& m, Cyclotomic& c) {
    for (int j = 1; j <= 3; ++j) {
        const int a = f->a[j];
        for (int p = 1; 2 * p <= a; ++p) {
            const int s1 = gamma_slot(j, p);
            if (2 * p == a) {
                int k = m.e[s1] / 2;
                if (k > 0) {
                    m.e[s1] -= 2 * k;
                    m.e[kPi] += k;  // Gamma(1/2)^2 = pi
                }
                continue;
            }
            const int s2 = gamma_slot(j, a - p);
            int k = std::min(m.e[s1], m.e[s2]);
            if (k > 0) {
                m.e[s1] -= k;
                m.e[s2] -= k;
                m.e[kPi] += k;
                c = c * Cyclotomic::sin_pi(f, p, a).pow(-k);
            }
        }
    }
    auto reduce_root = [&](int slot, int base, int order) {
        int e = m.e[slot];
        int q = e >= 0 ? e / order : -((-e + order - 1) / order);
        if (q != 0) {
            m.e[slot] = static_cast<std::int16_t>(e - q * order);
            Rat b = base;
            Rat fac = 1;
            for (int i = 0; i < std::abs(q); ++i) fac *= b;
            c *= q > 0 ? fac : Rat(1 / fac);
        }
    };
    reduce_root(kR, f->n - 2, f->n - 2);
    reduce_root(kS2, 2, 2);
}

const Field* Scalar::join(const Scalar& o) const {
    if (f_ && o.f_ && f_ != o.f_)
        throw UsageError("scalar operands belong to different rank parameters");
    return f_ ? f_ : o.f_;
}

void Scalar::add_term(const TransMonomial& m, const Cyclotomic& c) {
    auto it = std::lower_bound(t_.begin(), t_.end(), m,
                               [](const auto& a, const TransMonomial& b) { return a.first < b; });
    if (it != t_.end() && it->first == m) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    } else if (!c.is_zero()) {
        t_.insert(it, {m, c});
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    r += o;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    f_ = join(o);
    if (t_.empty()) {
        t_ = o.t_;
        return *this;
    }
    std::vector<std::pair<TransMonomial, Cyclotomic>> out;
    out.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
            out.push_back(std::move(t_[i++]));
        } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
            out.push_back(o.t_[j++]);
        } else {
            Cyclotomic c = t_[i].second + o.t_[j].second;
            if (!c.is_zero()) out.emplace_back(t_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    t_ = std::move(out);
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r(join(o));
    if (t_.empty() || o.t_.empty()) return r;
    if (t_.size() == 1 && o.t_.size() == 1 && t_[0].first.trivial()) {
        r.t_ = o.t_;
        r.t_[0].second = t_[0].second * o.t_[0].second;
        if (r.t_[0].second.is_zero()) r.t_.clear();
        return r;
    }
    std::vector<std::pair<TransMonomial, Cyclotomic>> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (const auto& [m1, c1] : t_) {
        for (const auto& [m2, c2] : o.t_) {
            TransMonomial m;
            for (int k = 0; k < kNumSyms; ++k) m.e[k] = m1.e[k] + m2.e[k];
            Cyclotomic c = c1 * c2;
            normalize(r.f_, m, c);
            acc.emplace_back(m, std::move(c));
        }
    }
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [m, c] : acc) {
        if (!r.t_.empty() && r.t_.back().first == m)
            r.t_.back().second += c;
        else
            r.t_.emplace_back(m, std::move(c));
    }
    r.t_.erase(std::remove_if(r.t_.begin(), r.t_.end(), [](const auto& x) { return x.second.is_zero(); }),
               r.t_.end());
    return r;
}

Scalar Scalar::operator*(const Rat& q) const {
    Scalar r = *this;
    r *= q;
    return r;
}

Scalar& Scalar::operator*=(const Rat& q) {
    if (q == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, c] : t_) c *= q;
    return *this;
}

Scalar Scalar::inverse() const {
    if (t_.size() != 1) throw NotInvertible("inverse of a scalar with " + std::to_string(t_.size()) + " terms");
    const auto& [m, c] = t_[0];
    if (m.e[kEG] || m.e[kLQ]) throw NotInvertible("inverse of a scalar containing E_G or L_Q");
    Scalar r(f_, Rat(1));
    for (int j = 1; j <= 3; ++j)
        for (int p = 1; p < f_->a[j]; ++p) {
            int e = m.e[gamma_slot(j, p)];
            for (int k = 0; k < e; ++k) r = r * inv_gamma(f_, j, p);
        }
    TransMonomial inv;
    for (int s : {kNQ, kPi, kR, kS2}) inv.e[s] = static_cast<std::int16_t>(-m.e[s]);
    Cyclotomic ci = c.inverse();
    normalize(f_, inv, ci);
    Scalar tail(f_);
    tail.t_.emplace_back(inv, ci);
    return r * tail;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(f_, Rat(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (t_.size() != o.t_.size()) return false;
    join(o);
    for (size_t i = 0; i < t_.size(); ++i)
        if (!(t_[i].first == o.t_[i].first) || t_[i].second != o.t_[i].second) return false;
    return true;
}

bool Scalar::operator<(const Scalar& o) const {
    if (t_.size() != o.t_.size()) return t_.size() < o.t_.size();
    for (size_t i = 0; i < t_.size(); ++i) {
        if (t_[i].first < o.t_[i].first) return true;
        if (o.t_[i].first < t_[i].first) return false;
        int c = t_[i].second.compare(o.t_[i].second);
        if (c) return c < 0;
    }
    return false;
}

Rat Scalar::assert_rational() const {
    if (t_.empty()) return Rat(0);
    if (t_.size() == 1 && t_[0].first.trivial() && t_[0].second.is_rational())
        return t_[0].second.rational();
    std::vector<std::string> residual;
    bool irrational = false;
    for (const auto& [m, c] : t_) {
        for (int k = 0; k < kNumSyms; ++k)
            if (m.e[k]) {
                std::string nm = symbol_name(k);
                if (std::find(residual.begin(), residual.end(), nm) == residual.end()) residual.push_back(nm);
            }
        if (!c.is_rational()) irrational = true;
    }
    std::sort(residual.begin(), residual.end());
    if (irrational) residual.push_back("zeta");
    throw NonRational(residual, "scalar is not rational: " + str());
}

std::string Scalar::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < t_.size(); ++i) {
        const auto& [m, c] = t_[i];
        if (i) s += " + ";
        std::string cs = c.str();
        bool compound = !c.is_rational();
        if (m.trivial()) {
            s += compound ? "(" + cs + ")" : cs;
        } else {
            s += "(" + cs + ")*" + m.str(f_);
        }
    }
    return s;
}

}  // namespace orbline
