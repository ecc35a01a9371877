#pragma once

#include <string>
#include <vector>

#include "orbline/scalars.hpp"

namespace orbline {

// Basis B = {1, L1, ..., L1^{n-3}, L2, L3, L}; index helpers below.
class KClass {
public:
    KClass() = default;
    explicit KClass(const Field* f);
    KClass(const Field* f, std::vector<Rat> coeffs);

    static KClass one(const Field* f) { return basis(f, 0); }
    static KClass basis(const Field* f, int idx);
    static KClass L1pow(const Field* f, int k);  // 0 <= k <= n-2, L1^{n-2} = L
    static KClass L2(const Field* f);
    static KClass L3(const Field* f);
    static KClass L(const Field* f);

    const Field* field() const { return f_; }
    int size() const { return static_cast<int>(c_.size()); }
    const Rat& operator[](int i) const { return c_[i]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    KClass operator+(const KClass& o) const;
    KClass operator-(const KClass& o) const;
    KClass operator-() const;
    KClass operator*(const Rat& q) const;
    KClass operator*(const KClass& o) const;  // ring product
    bool operator==(const KClass& o) const { return c_ == o.c_; }
    bool operator!=(const KClass& o) const { return !(*this == o); }
    bool operator<(const KClass& o) const { return c_ < o.c_; }

    bool is_integral() const;
    bool is_zero() const;
    std::string str() const;

private:
    const Field* f_ = nullptr;
    std::vector<Rat> c_;
};

std::string k_basis_name(const Field* f, int idx);

KClass k_mul(const KClass& a, const KClass& b);
Rat rank(const KClass& a);
Rat degree(const KClass& a);
Cyclotomic chi(int j, int p, const KClass& a);
KClass tangent_class(const Field* f);  // L1 + L2 + L3 - L - 1
KClass sigma(const KClass& a);
KClass sigma_inv(const KClass& a);
KClass sigma_pow(const KClass& a, int s);
KClass beta_zero(const KClass& b);     // (1/kappa) sum_{s<kappa} sigma^s b
KClass beta_twisted(const KClass& b);  // b - beta_zero(b)

// Chen-Ruan side.  Basis order: phi00, phi01, phi_{1,1..n-3}, phi21, phi31.
struct HIndex {
    int i, p;
};
std::vector<HIndex> h_basis(const Field* f);
int h_index(const Field* f, int i, int p);
std::string h_basis_name(const Field* f, int idx);
Rat h_theta(const Field* f, int idx);

class CohVector {
public:
    CohVector() = default;
    explicit CohVector(const Field* f);
    static CohVector basis(const Field* f, int idx);

    const Field* field() const { return f_; }
    int size() const { return static_cast<int>(v_.size()); }
    Scalar& operator[](int i) { return v_[i]; }
    const Scalar& operator[](int i) const { return v_[i]; }

    CohVector operator+(const CohVector& o) const;
    CohVector operator-(const CohVector& o) const;
    CohVector operator*(const Scalar& s) const;
    bool operator==(const CohVector& o) const;
    bool is_zero() const;
    std::string str() const;

private:
    const Field* f_ = nullptr;
    std::vector<Scalar> v_;
};

Scalar poincare(const CohVector& u, const CohVector& v);
Rat poincare_basis(const Field* f, int a, int b);
CohVector theta_apply(const CohVector& v);
CohVector rho_apply(const CohVector& v);
CohVector exp_pi_i_theta(const CohVector& v);
CohVector psi_map(const KClass& a);

Rat euler_pair(const KClass& a, const KClass& b);
Rat inter_pair(const KClass& a, const KClass& b);

// Euler form on the basis B, evaluated once per n through psi_map; the
// bilinear extension gives the fast path used by enumeration code.
struct GramTables {
    std::vector<std::vector<Rat>> euler;
    std::vector<std::vector<Rat>> inter;
    static const GramTables& get(const Field* f);
};
Rat euler_fast(const KClass& a, const KClass& b);
Rat inter_fast(const KClass& a, const KClass& b);

struct EpsLabel {
    int sector;  // 1, 2, 3
    int i;
    bool operator==(const EpsLabel& o) const { return sector == o.sector && i == o.i; }
    bool operator<(const EpsLabel& o) const {
        return sector != o.sector ? sector < o.sector : i < o.i;
    }
};
std::vector<EpsLabel> eps_labels(const Field* f);
KClass eps_vector(const Field* f, EpsLabel lab);
std::string eps_name(EpsLabel lab);

struct NotARoot : std::domain_error {
    using std::domain_error::domain_error;
};

KClass canonical_mod_kernel(const KClass& a);  // representative mod Z(L-1)
std::vector<KClass> reflection_vectors(const Field* f, int m_range);
KClass reflect(const KClass& a, const KClass& x);

}  // namespace orbline
