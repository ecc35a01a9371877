#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbline/klattice.hpp"
#include "orbline/poly.hpp"

namespace orbline {

using FockPoly = Poly;

// Variables q_{a,k} (a a phi-basis index, 0 <= k <= K), the insertion marker u
// and h = hbar^{1/2}.  Every Heisenberg generator carries one factor u, so with
// weight(q) = weight(u) = 1 annihilators have weight 0, creators weight 2 and
// truncation at weighted degree D commutes with all operators below.  Setting
// u = 1 recovers the plain action.
struct FockSpace {
    const Field* f = nullptr;
    int K = 0;
    int D = 0;
    int h_window = 40;  // |exponent of h| bound
    RingPtr ring;

    static FockSpace make(const Field* f, int K, int D);

    int q(int a, int k) const;
    int u() const { return (f->n + 1) * (K + 1); }
    int h() const { return u() + 1; }

    Poly zero() const { return Poly(f, ring, D); }
    Poly one() const { return Poly::constant(f, ring, Scalar(f, Rat(1)), D); }
    Poly var(int v, int e = 1) const { return Poly::variable(f, ring, v, e, D); }
    Poly scalar(const Scalar& c) const { return Poly::constant(f, ring, c, D); }
    void check_window(const Poly& p) const;
};

// f = sum_k f_k z^k with f_k in H.
struct HField {
    const Field* f = nullptr;
    std::map<int, CohVector> c;

    HField() = default;
    explicit HField(const Field* fld) : f(fld) {}
    static HField term(const CohVector& v, int k);

    CohVector at(int k) const;
    int lo() const;
    int hi() const;
    HField plus() const;   // k >= 0
    HField minus() const;  // k < 0
    HField operator+(const HField& o) const;
    HField operator-(const HField& o) const;
    HField operator*(const Scalar& s) const;
    bool is_zero() const;
};

// dual basis phi^a under the Poincare pairing
const std::vector<CohVector>& dual_basis(const Field* f);

// Res_{z=0} (f(-z), g(z)) dz
Scalar omega(const HField& f, const HField& g);

Poly heisenberg_apply(const FockSpace& fs, const HField& f, const Poly& tau);
// e^{fminus^} e^{fplus^} tau
Poly vertex_apply(const FockSpace& fs, const HField& fplus, const HField& fminus, const Poly& tau);

// Matrix-valued Laurent series in z over the phi basis; m[k][i][j] is the phi_i
// component of the z^k coefficient applied to phi_j.
using HMatrix = std::vector<std::vector<Scalar>>;
struct MatSeries {
    const Field* f = nullptr;
    std::map<int, HMatrix> m;

    MatSeries() = default;
    explicit MatSeries(const Field* fld) : f(fld) {}
    static MatSeries identity(const Field* f);

    HMatrix at(int k) const;
    HField apply(const HField& v) const;
    MatSeries operator+(const MatSeries& o) const;
    MatSeries operator-(const MatSeries& o) const;
    MatSeries operator*(const MatSeries& o) const;
    MatSeries operator*(const Scalar& s) const;
    MatSeries adjoint() const;   // Poincare transpose, coefficientwise
    MatSeries reflect() const;   // z -> -z
    bool is_zero() const;
    bool operator==(const MatSeries& o) const;
};
using SympSeries = MatSeries;

HMatrix zero_matrix(const Field* f);
HMatrix matmul(const HMatrix& a, const HMatrix& b);

struct NotInfinitesimallySymplectic : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotDivisible : std::domain_error {
    using std::domain_error::domain_error;
};

bool is_infinitesimally_symplectic(const MatSeries& A);  // A*(-z) + A(z) = 0
bool is_symplectic(const MatSeries& S);                  // S*(-z) S(z) = 1
MatSeries series_log(const MatSeries& S);                // S - 1 must be nilpotent

// phi01, phi_{1,p} with 2p < n-2, and phi21 + i phi31: pairwise orthogonal
std::vector<CohVector> isotropic_basis(const Field* f);
// S = 1 + sum_k z^{-k} sum_{a,b} B[k-1][a][b] u_a (u_b, .) over the isotropic
// basis; (S - 1)^2 = 0, and S is symplectic when B[k-1] is symmetric for odd k
// and antisymmetric for even k.
MatSeries isotropic_series(const Field* f, const std::vector<std::vector<std::vector<Rat>>>& B);

// Quantized quadratic Hamiltonian h_A(f) = Omega(Af, f)/2 in Darboux coordinates.
struct QuadOp {
    enum Kind { kQQ, kQP, kPP };
    struct Term {
        Kind kind;
        int a, k, b, l;  // first and second coordinate
        Scalar c;
    };
    std::vector<Term> terms;

    QuadOp operator-() const;
    Poly apply(const FockSpace& fs, const Poly& tau) const;
    Poly exp_apply(const FockSpace& fs, const Poly& tau) const;  // e^{A^} tau
};
QuadOp quantize(const FockSpace& fs, const MatSeries& A);
Poly quantize_quadratic(const FockSpace& fs, const MatSeries& A, const Poly& tau);

// W_{k,l} with sum W_{k,l} w^{-k} z^{-l} = (S*(w)S(z) - 1)/(z^{-1} + w^{-1})
std::map<std::pair<int, int>, HMatrix> w_matrices(const MatSeries& S);
Scalar w_form(const MatSeries& S, const HField& f, const HField& g);

struct ConjugationSides {
    Poly lhs;  // S^ Gamma_f S^{-1} tau
    Poly rhs;  // e^{W(f+,f+)/2} Gamma_{Sf} tau
};
ConjugationSides s_conjugation_check(const FockSpace& fs, const MatSeries& S, const HField& f,
                                     const Poly& tau);

// Text form, one term per line: "hbar-exponent | [(i,p,k):e,...] | scalar".
struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int l, int c, const std::string& what)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + what),
          line(l),
          column(c) {}
};
std::string serialize(const FockSpace& fs, const Poly& p);
Poly parse_fock(const FockSpace& fs, const std::string& text);

}  // namespace orbline
