#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbline {

using Rat = mpq_class;

// canonical a/b; a two-argument mpq_class is not reduced
inline Rat frac(long a, long b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& q);
Rat harmonic(int k);
Rat factorial(int k);

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Per-n constants: a = (n-2, 2, 2), kappa = 2(n-2), M = lcm(4, kappa) and
// the reduction data for Q[x]/Phi_M.
struct Field {
    int n = 0;
    std::array<int, 4> a{};  // a[1..3]
    int kappa = 0;
    int M = 0;
    int deg = 0;                                // deg Phi_M
    std::vector<Rat> phi;                       // monic, length deg+1
    std::vector<std::vector<Rat>> xpow;         // x^k mod Phi_M, 0 <= k < 2M

    // shared, immutable instance for rank parameter n (4 <= n <= 12)
    static const Field* get(int n);
};

int min_rank();
int max_rank();

// Element of Q[x]/Phi_M, x = zeta_M.
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(const Field* f);
    Cyclotomic(const Field* f, const Rat& q);

    static Cyclotomic zeta(const Field* f, long k);       // zeta_M^k
    static Cyclotomic eta(const Field* f, long k = 1);    // e^{2 pi i k / kappa}
    static Cyclotomic eta_j(const Field* f, int j, long k = 1);
    static Cyclotomic imag(const Field* f);
    static Cyclotomic exp_2pi_i(const Field* f, const Rat& q);  // needs M q in Z
    static Cyclotomic exp_pi_i(const Field* f, const Rat& q);
    static Cyclotomic sin_pi(const Field* f, int p, int a);     // sin(pi p / a)

    const Field* field() const { return f_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational() const;  // constant term; caller checks is_rational

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rat& q) const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rat& q);
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
    int compare(const Cyclotomic& o) const;

    std::string str() const;

private:
    const Field* f_ = nullptr;
    std::vector<Rat> c_;
    void check(const Cyclotomic& o) const;
    friend class Scalar;
};

// Formal symbols.  Slot order is alphabetical by printed name.
enum Sym : int {
    kEG = 0,      // Euler-Mascheroni constant
    kG1 = 1,      // G(1,p) at kG1 + p - 1, p <= 10
    kG2 = 11,     // G(2,1)
    kG3 = 12,     // G(3,1)
    kLQ = 13,     // log Q
    kNQ = 14,     // Q
    kPi = 15,
    kR = 16,      // (n-2)^{1/(n-2)}
    kS2 = 17,     // sqrt 2 (only when n > 4)
    kNumSyms = 18
};

struct TransMonomial {
    std::array<std::int16_t, kNumSyms> e{};
    bool trivial() const;
    bool operator<(const TransMonomial& o) const { return e < o.e; }
    bool operator==(const TransMonomial& o) const { return e == o.e; }
    std::string str(const Field* f) const;
};

int gamma_slot(int j, int p);
std::string symbol_name(int slot);

struct NonRational : std::runtime_error {
    std::vector<std::string> residual;
    explicit NonRational(std::vector<std::string> r, const std::string& what)
        : std::runtime_error(what), residual(std::move(r)) {}
};

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

// Finite sum of cyclotomic multiples of normalized monomials.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(const Field* f);
    Scalar(const Field* f, const Rat& q);
    Scalar(const Field* f, long q) : Scalar(f, Rat(q)) {}
    Scalar(const Cyclotomic& c);  // NOLINT: implicit lift is convenient

    static Scalar symbol(const Field* f, int slot, int power = 1);
    static Scalar pi(const Field* f) { return symbol(f, kPi); }
    static Scalar gamma(const Field* f, int j, int p);      // Gamma(p / a_j)
    static Scalar inv_gamma(const Field* f, int j, int p);  // 1 / Gamma(p / a_j)
    static Scalar euler_gamma(const Field* f);              // E_G + (n-2) L_Q
    static Scalar digamma(const Field* f, int k);           // psi(k), k >= 1
    static Scalar sqrt2(const Field* f);
    static Scalar two_pi_i(const Field* f);

    const Field* field() const { return f_; }
    const std::vector<std::pair<TransMonomial, Cyclotomic>>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator*(const Rat& q) const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator*=(const Rat& q);
    Scalar pow(long e) const;      // negative e only for single-term scalars
    Scalar inverse() const;        // single-term scalars with invertible symbols

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // total order for canonical output

    Rat assert_rational() const;
    std::string str() const;

private:
    const Field* f_ = nullptr;
    std::vector<std::pair<TransMonomial, Cyclotomic>> t_;  // sorted, nonzero
    void add_term(const TransMonomial& m, const Cyclotomic& c);
    static void normalize(const Field* f, TransMonomial& m, Cyclotomic& c);
    const Field* join(const Scalar& o) const;
};

inline Scalar operator*(const Rat& q, const Scalar& s) { return s * q; }

}  // namespace orbline
