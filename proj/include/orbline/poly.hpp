#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbline/scalars.hpp"

namespace orbline {

constexpr int kMaxVars = 64;
using Mono = std::array<std::int8_t, kMaxVars>;

// Variable table shared by polynomials that may be combined.  Weighted degree
// sum(weight * exponent) drives truncation; laurent variables may carry
// negative exponents.
struct Ring {
    std::vector<std::string> names;
    std::vector<int> weight;
    std::vector<bool> laurent;

    int size() const { return static_cast<int>(names.size()); }
    int find(const std::string& name) const;  // -1 when absent
    int index(const std::string& name) const;
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, std::vector<int> weight,
                  std::vector<bool> laurent);

// Exponent or window overflow.  Raised instead of silently dropping terms.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kExact = std::numeric_limits<int>::max() / 4;

// Sparse polynomial over Scalar truncated at weighted degree `cap`.  All
// binary operations keep the smaller cap.
class Poly {
public:
    Poly() = default;
    Poly(const Field* f, RingPtr r, int cap = kExact);

    static Poly constant(const Field* f, RingPtr r, const Scalar& c, int cap = kExact);
    static Poly variable(const Field* f, RingPtr r, int v, int e = 1, int cap = kExact);
    static Poly monomial(const Field* f, RingPtr r, const Mono& m, const Scalar& c,
                         int cap = kExact);

    const Field* field() const { return f_; }
    const RingPtr& ring() const { return r_; }
    int cap() const { return cap_; }
    const std::map<Mono, Scalar>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }

    int weight(const Mono& m) const;
    int max_weight() const;  // -1 for zero
    void add(const Mono& m, const Scalar& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Scalar& s) const;
    Poly operator*(const Rat& q) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly with_cap(int c) const;
    Poly diff(int v) const;
    Poly times_var(int v, int e = 1) const;
    // v -> value; v must appear with nonnegative exponents only
    Poly substitute(int v, const Poly& value) const;
    // v -> v + shift; shift must not involve v
    Poly translate(int v, const Poly& shift) const;
    Poly coeff(int v, int e) const;  // coefficient of v^e with v removed
    std::pair<int, int> exponent_range(int v) const;  // {0,0} for zero
    // re-express in another ring; to[v] is the target index of v, -1 only for
    // variables that do not occur
    Poly map_vars(const RingPtr& target, const std::vector<int>& to, int cap) const;

    std::string str() const;

private:
    const Field* f_ = nullptr;
    RingPtr r_;
    int cap_ = kExact;
    std::map<Mono, Scalar> t_;
    void check(const Poly& o) const;
};

// Products through a serial loop and through the OpenMP kernel; both give the
// same map since arithmetic is exact.
Poly mul_serial(const Poly& a, const Poly& b);
Poly mul_parallel(const Poly& a, const Poly& b);

// exp(X) = sum X^k / k!; X must have no constant term and the series must
// terminate at the cap.
Poly exp_series(const Poly& X);

// Binomial coefficient as a rational.
Rat binomial(int n, int k);

}  // namespace orbline
