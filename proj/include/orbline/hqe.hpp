#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "orbline/fock.hpp"
#include "orbline/phase.hpp"
#include "orbline/poly.hpp"

namespace orbline {

enum class Frame { kQ, kT };

// Two coordinate systems for a pair of tau functions.  Both rings start with
// x, h = hbar^{1/2} = epsilon, z and D = d/dx, followed by the variables of
// side 1 and then side 2.  Only the slice k <= K is kept: q_{a,k} with k <= K
// (q_{0,0,0} is merged into x and q_{0,0,k} is stored dilaton shifted, y_k =
// q_{0,0,k} + delta_{k,1}), matching t_{0,1..K}, t_{1,1..(n-2)(K+1)} and
// t_{2|3,1,3,..,2K+1}.  Setting the remaining variables to zero commutes with
// everything computed here.
struct Coords {
    const Field* f = nullptr;
    int K = 0;
    int D = 0;  // degree cap on side variables
    RingPtr q_ring, t_ring;

    struct QVar {
        int a, k;  // phi-basis index, descendant index
    };
    struct TVar {
        int family, l;
    };
    std::vector<QVar> qvars;  // per side
    std::vector<TVar> tvars;  // per side, same length as qvars

    static std::shared_ptr<const Coords> make(const Field* f, int K, int D);

    static constexpr int x = 0, h = 1, z = 2, d = 3;
    int per_side() const { return static_cast<int>(qvars.size()); }
    int side_base(int side) const { return 4 + (side - 1) * per_side(); }
    int qv(int side, int a, int k) const;       // throws CapExceeded outside the slice
    int tv(int side, int family, int l) const;  // throws CapExceeded outside the slice
    const RingPtr& ring(Frame fr) const { return fr == Frame::kQ ? q_ring : t_ring; }

    Poly zero(Frame fr) const { return Poly(f, ring(fr), D); }
    Poly one(Frame fr) const { return Poly::constant(f, ring(fr), Scalar(f, Rat(1)), D); }
    Poly var(Frame fr, int v, int e = 1) const { return Poly::variable(f, ring(fr), v, e, D); }
    Poly scalar(Frame fr, const Scalar& c) const { return Poly::constant(f, ring(fr), c, D); }
};
using CoordsPtr = std::shared_ptr<const Coords>;

// Substitutes each variable of p by images[v] (a polynomial in the target
// ring); an empty image keeps the variable at the same index.
Poly linear_substitute(const Poly& p, const RingPtr& target, const std::vector<std::optional<Poly>>& images,
                       int cap);

// The linear change between the q and t frames (both sides at once).
Poly change_vars(const Coords& c, Frame from, const Poly& p);

// Tau function in the q frame on side 1, polynomial in x and the slice.
struct TauFunction {
    CoordsPtr c;
    Poly p;

    // q_{0,0,0} -> x, q_{0,0,1} -> y_1 - 1; fails with CapExceeded outside the slice
    static TauFunction from_fock(const CoordsPtr& c, const FockSpace& fs, const Poly& q);
    Poly to_fock(const FockSpace& fs) const;
    // p on the given side in the given frame
    Poly on(int side, Frame fr) const;
};

// Dimension-formula grading: q_{i,p,k} has weight k + p/a_i - 1, x weight -1,
// y_1 weight 0, epsilon weight -1, Q weight -1/(n-2); admissible iff every
// monomial (per Q-power) has weight 0.
bool admissible_tau(const TauFunction& t);

// Normal-ordered differential operators sum_i f_i(x) D^i.
Poly compose(const Poly& P, const Poly& Q);  // P o Q
Poly adjoint(const Poly& P);                  // x^# = x, D^# = -D, (AB)^# = B^# A^#
// [z^e](a * b)
Poly z_coeff_product(const Poly& a, const Poly& b, int e);

// e^{creation} after translating variables by the shifts.
struct VertexOp {
    Poly creation;
    std::vector<std::pair<int, Poly>> shift;
    Poly apply(const Poly& tau) const;
};
// q-frame operators built from the lambda-form of the calibrated vertex
// operators with lambda = z^{n-2}/(n-2) resp. z^2/2.
VertexOp gamma1_q(const Coords& c, int side, int sign);        // Gamma_1^{sign}(z)
VertexOp gamma_odd_q(const Coords& c, int side, int a, int zsign);  // Gamma_a(zsign z), a = 2, 3

struct SectorResidual {
    int sector = 0, m = 0, r = 0;
    Poly value;
};

// HQE residues for a pair (tau1 on the primed side, tau2 on the double primed
// side) at q'_{0,0,0} = m epsilon, q''_{0,0,0} = 0.
class HqeSystem {
public:
    HqeSystem(const TauFunction& tau1, const TauFunction& tau2);
    Poly sector(int s, int m, int r) const;
    Poly residual(int m, int r) const;

private:
    CoordsPtr c_;
    Poly g1p_, g1m_, o1_, o1e_;         // Gamma_1^{+-}, Gamma_2(z), Gamma_3(z) on tau1
    Poly right_m_, right_p_, right2_, right3_;  // the x-flow factors composed with the tau2 side
    void check_window(int r) const;
};

SectorResidual sector_residual(int sector, const TauFunction& tau1, const TauFunction& tau2, int m, int r);
Poly hqe_residual(const TauFunction& tau1, const TauFunction& tau2, int m, int r);

// c * z^zpow dz
struct OneForm {
    Scalar c;
    int zpow = 0;
    bool operator==(const OneForm& o) const { return c == o.c && zpow == o.zpow; }
};
// the weights multiplying the sector residues: -C eta^{-i} z^{-2} dz, -dz/2z, dz/2z
OneForm sector_one_form(const KClass& eps);
// b(lambda) dlambda/lambda under lambda = z^{n-2}/(n-2) (sector 1) or z^2/2
OneForm pullback_b(const PuiseuxLog& b, int sector);

Scalar novikov_c(const Field* f);  // C = -Q (n-2)^{1/(n-2)}

}  // namespace orbline
