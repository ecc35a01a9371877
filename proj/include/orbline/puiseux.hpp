#pragma once

#include <map>
#include <string>
#include <utility>

#include "orbline/scalars.hpp"

namespace orbline {

// Finite sum of c * lambda^r * (log lambda)^e, r in (1/kappa)Z, e in {0, 1}.
class PuiseuxLog {
public:
    using Key = std::pair<int, int>;  // (kappa * r, e)

    PuiseuxLog() = default;
    explicit PuiseuxLog(const Field* f) : f_(f) {}
    static PuiseuxLog term(const Field* f, const Rat& r, int log_power, const Scalar& c);
    static PuiseuxLog constant(const Scalar& c);

    const Field* field() const { return f_; }
    const std::map<Key, Scalar>& terms() const { return t_; }
    Rat exponent(int k) const { return frac(k, f_->kappa); }
    Scalar coeff(const Rat& r, int log_power) const;
    bool is_zero() const { return t_.empty(); }

    PuiseuxLog operator+(const PuiseuxLog& o) const;
    PuiseuxLog operator-(const PuiseuxLog& o) const;
    PuiseuxLog operator-() const;
    PuiseuxLog operator*(const Scalar& s) const;
    PuiseuxLog operator*(const PuiseuxLog& o) const;  // throws if log^2 appears
    PuiseuxLog& operator+=(const PuiseuxLog& o);
    bool operator==(const PuiseuxLog& o) const { return t_ == o.t_; }
    bool operator!=(const PuiseuxLog& o) const { return !(*this == o); }

    PuiseuxLog inverse() const;  // single term without log
    PuiseuxLog derivative() const;
    // counterclockwise continuation: log -> log + 2 pi i, lambda^r -> e^{2 pi i r} lambda^r
    PuiseuxLog monodromy() const;
    // keeps lo <= r <= hi
    PuiseuxLog truncated(const Rat& lo, const Rat& hi) const;

    std::string str() const;

private:
    const Field* f_ = nullptr;
    std::map<Key, Scalar> t_;
    void add(const Key& k, const Scalar& c);
};

}  // namespace orbline
