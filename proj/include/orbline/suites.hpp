#pragma once

#include <string>
#include <vector>

#include "orbline/hqe.hpp"

namespace orbline {

// One aggregated check: `instances` cases were evaluated, the witness names
// the first failing case in enumeration order.
struct CheckRecord {
    std::string suite;
    std::string id;
    std::string params;
    int instances = 0;
    int failures = 0;
    std::string witness;
    bool pass() const { return failures == 0; }
};

using Report = std::vector<CheckRecord>;

bool all_pass(const Report& r);

// pairing tables, Serre duality, sigma invariance
Report pairing_suite(const Field* f);
// <a, b_0>, <b_0, a>, twisted intersections, weighted sigma sum; all basis pairs
Report averaging_suite(const Field* f);
Report roots_suite(const Field* f, int m_range);
// direct vs closed phase, phase limit identity, b tilde / limit / one-form agreement
Report phase_suite(const Field* f, int order);
Report periods_suite(const Field* f);

// One record per (m, r): the residual (resp. defect) vanishes.
Report hqe_check(const TauFunction& tau1, const TauFunction& tau2, int m_max, int r_max);
Report dtoda_check(const TauFunction& tau1, const TauFunction& tau2, int m_max, int r_max);
// dressed bilinear defect == HQE residue carried to the t frame, per (m, r)
Report equivalence_check(const TauFunction& tau1, const TauFunction& tau2, int m_max, int r_max,
                         const std::string& label = "");

// Euler and intersection forms on the basis and the eps table
std::string lattice_table_text(const Field* f);
std::string lattice_table_json(const Field* f);

// everything above, in a fixed order
Report identities_all(const Field* f, int order);

// text: one aligned line per check plus a summary line; json: one object per check
std::string render_text(const Report& r);
std::string render_json(const Report& r);

}  // namespace orbline
