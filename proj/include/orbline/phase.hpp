#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbline/periods.hpp"

namespace orbline {

// head + log_coeff * log(lambda2) + sum_{k=1..order} x[k] x^k, x = (lambda2/lambda1)^{1/kappa}
struct PhaseSeries {
    Scalar head;
    Scalar log_coeff;
    std::vector<Scalar> x;  // x[0] unused
    int order = 0;

    bool operator==(const PhaseSeries& o) const;
    // description of the first differing coefficient, if any
    std::optional<std::string> first_difference(const PhaseSeries& o) const;
    std::string str() const;
};

PhaseSeries phase_direct(const KClass& alpha, const KClass& beta, int N);
PhaseSeries phase_closed(const KClass& alpha, const KClass& beta, int N);
std::vector<Rat> phase_exponents(const KClass& alpha, const KClass& beta);  // s = 1..kappa

// Intersection form and monodromy written on the phi basis.
Scalar h_intersection(const CohVector& u, const CohVector& v);
CohVector h_sigma(const CohVector& v);

// x-coefficients 0..N of lambda1 times each side of the phase limit identity
// for the phi-basis pair (i, j).
std::vector<Scalar> phase_limit_lhs(const Field* f, int i, int j, int N);
std::vector<Scalar> phase_limit_rhs(const Field* f, int i, int j, int N);

struct NotInE : std::domain_error {
    using std::domain_error::domain_error;
};
struct PoleMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

// E = {+-eps^1_i, +-eps^2_1, +-eps^3_1}; returns the label and the sign
std::pair<EpsLabel, int> classify_eps(const KClass& eps);
std::vector<KClass> e_set(const Field* f);

PuiseuxLog b_tilde(const KClass& eps);

struct LimitResult {
    PuiseuxLog raw;   // lim (mu - lambda) e^{Omega(eps, -eps)}
    Cyclotomic sign;  // e^{2 pi i <eps, eps^3_1>}
    PuiseuxLog value; // raw * sign, expected lambda / b_tilde
};
LimitResult b_from_limit(const KClass& eps);

}  // namespace orbline
