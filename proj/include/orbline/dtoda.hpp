#pragma once

#include "orbline/hqe.hpp"

namespace orbline {

struct NonInvertibleTau : std::domain_error {
    using std::domain_error::domain_error;
};

// psi^{sign}_{family} as a series in z^{-1} over the t frame of one side.
// Families 2 and 3 start with 1; family 1 starts with tau(x - sign eps)/tau(x).
struct WaveFunction {
    int sign = 1;
    int family = 1;
    int side = 1;
    Poly psi;
    Poly coeff(int k) const;  // psi_{., k}, the z^{-k} coefficient
};

WaveFunction make_psi(const TauFunction& tau, int sign, int family, int side = 1);

// 1/tau at the cap; the t-constant part must be a single invertible term
Poly series_inverse(const Poly& tau, const Coords& c);

// xi_family(t', z) - xi_family(t'', z)
Poly xi_difference(const Coords& c, int family);

// Bilinear equations for a pair: Psi(x, t') built from tau1 and Psi(x + m eps, t'')
// from tau2.  The value is LHS - RHS as an x-differential operator.
class DTodaSystem {
public:
    DTodaSystem(const TauFunction& tau1, const TauFunction& tau2);
    Poly defect(int m, int r) const;
    // tau1(x, t') * defect o tau2(x + m eps, t'')
    Poly dressed_defect(int m, int r) const;

private:
    CoordsPtr c_;
    Poly tau1_, tau2_;
    Poly p1p_, p1m_, p2p_, p2m_;  // family 1, signs +-, on tau1 (side 1) and tau2 (side 2)
    Poly a1p_[2], a2m_[2];        // families 2, 3: psi^+ on tau1, psi^- on tau2
    Poly e12_, e21_, eodd_[2];
};

Poly bilinear_defect(const TauFunction& tau, int m, int r);
Poly bilinear_defect(const TauFunction& tau1, const TauFunction& tau2, int m, int r);

// The HQE residue at -m carried to the t frame, shifted by x -> x + m eps and
// multiplied by (-1)^{m+1}; equals DTodaSystem::dressed_defect(m, r).
Poly hqe_in_t_frame(const HqeSystem& h, const Coords& c, int m, int r);

}  // namespace orbline
