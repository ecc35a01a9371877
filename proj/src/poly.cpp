#include "orbline/poly.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace orbline {

int Ring::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

int Ring::index(const std::string& name) const {
    int i = find(name);
    if (i < 0) throw UsageError("unknown variable " + name);
    return i;
}

RingPtr make_ring(std::vector<std::string> names, std::vector<int> weight,
                  std::vector<bool> laurent) {
    if (names.size() > static_cast<std::size_t>(kMaxVars))
        throw CapExceeded("ring needs " + std::to_string(names.size()) + " variables, limit " +
                          std::to_string(kMaxVars));
    if (weight.size() != names.size() || laurent.size() != names.size())
        throw UsageError("ring tables differ in length");
    auto r = std::make_shared<Ring>();
    r->names = std::move(names);
    r->weight = std::move(weight);
    r->laurent = std::move(laurent);
    return r;
}

Rat binomial(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Rat r(1);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

Mono mono_add(const Mono& a, const Mono& b) {
    Mono m;
    for (int i = 0; i < kMaxVars; ++i) {
        int s = a[i] + b[i];
        if (s > 127 || s < -127) throw CapExceeded("exponent overflow");
        m[i] = static_cast<std::int8_t>(s);
    }
    return m;
}

struct Flat {
    const Mono* m;
    const Scalar* c;
    int w;
};

std::vector<Flat> flatten(const Poly& p, bool sort_by_weight) {
    std::vector<Flat> v;
    v.reserve(p.size());
    for (const auto& [m, c] : p.terms()) v.push_back({&m, &c, p.weight(m)});
    if (sort_by_weight)
        std::stable_sort(v.begin(), v.end(), [](const Flat& x, const Flat& y) { return x.w < y.w; });
    return v;
}

void mul_block(const std::vector<Flat>& A, std::size_t lo, std::size_t hi, const std::vector<Flat>& B,
               int cap, std::map<Mono, Scalar>& out) {
    for (std::size_t i = lo; i < hi; ++i) {
        const Flat& a = A[i];
        for (const Flat& b : B) {
            if (a.w + b.w > cap) break;
            Mono m = mono_add(*a.m, *b.m);
            Scalar c = *a.c * *b.c;
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(m, std::move(c));
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
}

}  // namespace

Poly::Poly(const Field* f, RingPtr r, int cap) : f_(f), r_(std::move(r)), cap_(cap) {}

Poly Poly::constant(const Field* f, RingPtr r, const Scalar& c, int cap) {
    Poly p(f, std::move(r), cap);
    p.add(Mono{}, c);
    return p;
}

Poly Poly::variable(const Field* f, RingPtr r, int v, int e, int cap) {
    Mono m{};
    m[v] = static_cast<std::int8_t>(e);
    return monomial(f, std::move(r), m, Scalar(f, Rat(1)), cap);
}

Poly Poly::monomial(const Field* f, RingPtr r, const Mono& m, const Scalar& c, int cap) {
    Poly p(f, std::move(r), cap);
    p.add(m, c);
    return p;
}

int Poly::weight(const Mono& m) const {
    int w = 0;
    for (int i = 0; i < r_->size(); ++i) w += r_->weight[i] * m[i];
    return w;
}

int Poly::max_weight() const {
    int w = -1;
    for (const auto& [m, c] : t_) w = std::max(w, weight(m));
    return w;
}

void Poly::add(const Mono& m, const Scalar& c) {
    if (c.is_zero() || weight(m) > cap_) return;
    for (int i = 0; i < r_->size(); ++i)
        if (m[i] < 0 && !r_->laurent[i]) throw CapExceeded("negative power of " + r_->names[i]);
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

void Poly::check(const Poly& o) const {
    if (r_ != o.r_) throw UsageError("polynomials over different rings");
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check(o);
    if (o.cap_ < cap_) *this = with_cap(o.cap_);
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(f_, r_, cap_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
}

Poly Poly::operator*(const Scalar& s) const {
    Poly r(f_, r_, cap_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : t_) r.add(m, c * s);
    return r;
}

Poly Poly::operator*(const Rat& q) const { return *this * Scalar(f_, q); }

Poly Poly::operator*(const Poly& o) const {
    if (t_.size() * o.t_.size() >= 4096 && omp_get_max_threads() > 1) return mul_parallel(*this, o);
    return mul_serial(*this, o);
}

Poly mul_serial(const Poly& a, const Poly& b) {
    if (a.ring() != b.ring()) throw UsageError("polynomials over different rings");
    Poly r(a.field(), a.ring(), std::min(a.cap(), b.cap()));
    auto A = flatten(a, false), B = flatten(b, true);
    std::map<Mono, Scalar> out;
    mul_block(A, 0, A.size(), B, r.cap(), out);
    for (auto& [m, c] : out) r.add(m, c);
    return r;
}

Poly mul_parallel(const Poly& a, const Poly& b) {
    if (a.ring() != b.ring()) throw UsageError("polynomials over different rings");
    Poly r(a.field(), a.ring(), std::min(a.cap(), b.cap()));
    auto A = flatten(a, false), B = flatten(b, true);
    const int blocks = std::max(1, std::min<int>(static_cast<int>(A.size()), 4 * omp_get_max_threads()));
    std::vector<std::map<Mono, Scalar>> part(blocks);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < blocks; ++k) {
        std::size_t lo = A.size() * k / blocks, hi = A.size() * (k + 1) / blocks;
        mul_block(A, lo, hi, B, r.cap(), part[k]);
    }
    for (auto& p : part)
        for (auto& [m, c] : p) r.add(m, c);
    return r;
}

bool Poly::operator==(const Poly& o) const {
    check(o);
    return t_ == o.t_;
}

Poly Poly::with_cap(int c) const {
    Poly r(f_, r_, c);
    for (const auto& [m, s] : t_) r.add(m, s);
    return r;
}

Poly Poly::diff(int v) const {
    Poly r(f_, r_, cap_);
    for (const auto& [m, c] : t_) {
        if (m[v] == 0) continue;
        Mono mm = m;
        --mm[v];
        r.add(mm, c * Rat(m[v]));
    }
    return r;
}

Poly Poly::times_var(int v, int e) const {
    Mono d{};
    d[v] = static_cast<std::int8_t>(e);
    Poly r(f_, r_, cap_);
    for (const auto& [m, c] : t_) r.add(mono_add(m, d), c);
    return r;
}

Poly Poly::substitute(int v, const Poly& value) const {
    check(value);
    Poly r(f_, r_, std::min(cap_, value.cap_));
    std::vector<Poly> pw{Poly::constant(f_, r_, Scalar(f_, Rat(1)), r.cap_)};
    for (const auto& [m, c] : t_) {
        if (m[v] < 0) throw UsageError("substitution into a negative power");
        while (static_cast<int>(pw.size()) <= m[v]) pw.push_back(pw.back() * value);
        Mono rest = m;
        rest[v] = 0;
        r += Poly::monomial(f_, r_, rest, c, r.cap_) * pw[m[v]];
    }
    return r;
}

Poly Poly::translate(int v, const Poly& shift) const {
    check(shift);
    for (const auto& [m, c] : shift.t_)
        if (m[v] != 0) throw UsageError("translation shift involves the shifted variable");
    Poly r(f_, r_, std::min(cap_, shift.cap_));
    std::vector<Poly> pw{Poly::constant(f_, r_, Scalar(f_, Rat(1)), r.cap_)};
    for (const auto& [m, c] : t_) {
        const int e = m[v];
        if (e < 0) throw UsageError("translation of a negative power");
        while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * shift);
        for (int j = 0; j <= e; ++j) {
            Mono rest = m;
            rest[v] = static_cast<std::int8_t>(e - j);
            r += Poly::monomial(f_, r_, rest, c * binomial(e, j), r.cap_) * pw[j];
        }
    }
    return r;
}

Poly Poly::coeff(int v, int e) const {
    Poly r(f_, r_, cap_);
    for (const auto& [m, c] : t_) {
        if (m[v] != e) continue;
        Mono mm = m;
        mm[v] = 0;
        r.t_.emplace(mm, c);
    }
    return r;
}

std::pair<int, int> Poly::exponent_range(int v) const {
    if (t_.empty()) return {0, 0};
    int lo = 127, hi = -127;
    for (const auto& [m, c] : t_) {
        lo = std::min<int>(lo, m[v]);
        hi = std::max<int>(hi, m[v]);
    }
    return {lo, hi};
}

Poly Poly::map_vars(const RingPtr& target, const std::vector<int>& to, int cap) const {
    Poly r(f_, target, cap);
    for (const auto& [m, c] : t_) {
        Mono mm{};
        for (int i = 0; i < r_->size(); ++i) {
            if (m[i] == 0) continue;
            if (to[i] < 0) throw UsageError("variable " + r_->names[i] + " has no image");
            mm[to[i]] = static_cast<std::int8_t>(mm[to[i]] + m[i]);
        }
        r.add(mm, c);
    }
    return r;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < r_->size(); ++i) {
            if (m[i] == 0) continue;
            os << "*" << r_->names[i];
            if (m[i] != 1) os << "^" << int(m[i]);
        }
    }
    return os.str();
}

Poly exp_series(const Poly& X) {
    if (X.terms().count(Mono{})) throw UsageError("exp_series: constant term");
    Poly sum = Poly::constant(X.field(), X.ring(), Scalar(X.field(), Rat(1)), X.cap());
    Poly term = sum;
    for (int k = 1; k <= 256; ++k) {
        term = term * X * frac(1, k);
        if (term.is_zero()) return sum;
        sum += term;
    }
    throw CapExceeded("exp_series does not terminate at the cap");
}

}  // namespace orbline
