#pragma once

#include <string>
#include <vector>

// Self-contained acceptance checks: each one compares a closed form or a
// stated invariant against an independent numerical route and reports a
// verdict with the measured numbers.
namespace nalandau::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

CheckResult check_spectrum_closed_vs_dense();
CheckResult check_working_point_energies();
CheckResult check_hall_staircase();
CheckResult check_zeta_determinant();
CheckResult check_perturbation_nullity();
CheckResult check_crossed_fields();
CheckResult check_lattice_expansion();
CheckResult check_structural_invariants();

// all of the above, in order
std::vector<CheckResult> run_acceptance_checks();

} // namespace nalandau::validate
