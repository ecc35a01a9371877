#include "orbline/puiseux.hpp"

namespace orbline {

PuiseuxLog PuiseuxLog::term(const Field* f, const Rat& r, int log_power, const Scalar& c) {
    if (log_power != 0 && log_power != 1) throw std::domain_error("log power must be 0 or 1");
    Rat k = r * f->kappa;
    if (k.get_den() != 1) throw std::domain_error("lambda exponent " + rat_str(r) + " not in (1/kappa)Z");
    PuiseuxLog p(f);
    p.add({static_cast<int>(k.get_num().get_si()), log_power}, c);
    return p;
}

PuiseuxLog PuiseuxLog::constant(const Scalar& c) { return term(c.field(), Rat(0), 0, c); }

Scalar PuiseuxLog::coeff(const Rat& r, int log_power) const {
    Rat k = r * f_->kappa;
    if (k.get_den() != 1) return Scalar(f_);
    auto it = t_.find({static_cast<int>(k.get_num().get_si()), log_power});
    return it == t_.end() ? Scalar(f_) : it->second;
}

void PuiseuxLog::add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

PuiseuxLog& PuiseuxLog::operator+=(const PuiseuxLog& o) {
    if (!f_) f_ = o.f_;
    if (o.f_ && f_ != o.f_) throw UsageError("series belong to different rank parameters");
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
}

PuiseuxLog PuiseuxLog::operator+(const PuiseuxLog& o) const {
    PuiseuxLog r = *this;
    r += o;
    return r;
}

PuiseuxLog PuiseuxLog::operator-() const {
    PuiseuxLog r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

PuiseuxLog PuiseuxLog::operator-(const PuiseuxLog& o) const { return *this + (-o); }

PuiseuxLog PuiseuxLog::operator*(const Scalar& s) const {
    PuiseuxLog r(f_ ? f_ : s.field());
    for (const auto& [k, c] : t_) r.add(k, c * s);
    return r;
}

PuiseuxLog PuiseuxLog::operator*(const PuiseuxLog& o) const {
    PuiseuxLog r(f_ ? f_ : o.f_);
    for (const auto& [k1, c1] : t_)
        for (const auto& [k2, c2] : o.t_) {
            if (k1.second + k2.second > 1) throw std::domain_error("product produces (log lambda)^2");
            r.add({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
        }
    return r;
}

PuiseuxLog PuiseuxLog::inverse() const {
    if (t_.size() != 1 || t_.begin()->first.second != 0)
        throw NotInvertible("series inverse needs a single log-free term");
    PuiseuxLog r(f_);
    r.add({-t_.begin()->first.first, 0}, t_.begin()->second.inverse());
    return r;
}

PuiseuxLog PuiseuxLog::derivative() const {
    PuiseuxLog r(f_);
    for (const auto& [k, c] : t_) {
        auto [kr, e] = k;
        Rat rr = exponent(kr);
        if (rr != 0) r.add({kr - f_->kappa, e}, c * rr);
        if (e == 1) r.add({kr - f_->kappa, 0}, c);
    }
    return r;
}

PuiseuxLog PuiseuxLog::monodromy() const {
    PuiseuxLog r(f_);
    for (const auto& [k, c] : t_) {
        auto [kr, e] = k;
        Scalar phase(Cyclotomic::exp_2pi_i(f_, exponent(kr)));
        r.add({kr, e}, c * phase);
        if (e == 1) r.add({kr, 0}, c * phase * Scalar::two_pi_i(f_));
    }
    return r;
}

PuiseuxLog PuiseuxLog::truncated(const Rat& lo, const Rat& hi) const {
    PuiseuxLog r(f_);
    for (const auto& [k, c] : t_) {
        Rat rr = exponent(k.first);
        if (rr >= lo && rr <= hi) r.add(k, c);
    }
    return r;
}

std::string PuiseuxLog::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : t_) {
        if (!s.empty()) s += " + ";
        s += "[" + c.str() + "]";
        if (k.first != 0) s += "*lambda^(" + rat_str(exponent(k.first)) + ")";
        if (k.second) s += "*log(lambda)";
    }
    return s;
}

}  // namespace orbline
