#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbline/klattice.hpp"
#include "orbline/puiseux.hpp"

namespace orbline {

// H-valued series: one PuiseuxLog per phi-basis component.
struct CalPeriod {
    KClass alpha;
    int m = 0;
    std::vector<PuiseuxLog> comp;

    CalPeriod derivative() const;  // m -> m + 1
    CalPeriod monodromy() const;
    CalPeriod operator+(const CalPeriod& o) const;
    bool operator==(const CalPeriod& o) const { return comp == o.comp; }
    std::string str() const;
};

CalPeriod calibrated_period(const KClass& alpha, int m);

// coefficients of (-z)^m for lo <= m <= hi
std::vector<std::pair<int, CalPeriod>> f_tilde(const KClass& alpha, int lo, int hi);

// The same closed form written on H: lambda^{theta-m-1/2}/Gamma(theta-m+1/2) plus the
// rho term, applied to an H-vector with Scalar entries.  Valid for every m; for
// m >= 0 the 1/Gamma(-m) poles are resolved by their limits.
std::vector<PuiseuxLog> period_on_h(const CohVector& v, int m);

}  // namespace orbline
