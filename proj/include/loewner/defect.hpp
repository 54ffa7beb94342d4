#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "metric.hpp"
#include "systole.hpp"

namespace loewner {

//! One inequality lhs >= rhs judged against an error budget.
struct InequalityRow
{
    bool applicable = false;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    double error_budget = 0;
    bool pass = false;         //!< margin >= -error_budget
    bool strong_pass = false;  //!< margin >= 0 with the raw upper bound
};

InequalityRow judge(double lhs, double rhs, double error_budget);

struct EqualityCase
{
    bool detected = false;
    double distance_to_eisenstein = 0;
    double variance = 0;
};

//! Grid systole against the exact one-variable value.
struct OneVarCrossCheck
{
    bool applicable = false;
    double exact = 0;
    double grid = 0;
    //! False flags a grid loop shorter than min f beyond quadrature error.
    bool consistent = true;
};

struct DefectReport
{
    double area = 0;
    double mean = 0;
    double variance = 0;
    double sigma_sq = 0;
    double sys_upper = 0;
    double sys_err = 0;
    double flat_lambda1 = 0;

    InequalityRow loewner;         // area - (sqrt3/2) sys^2 >= 0
    InequalityRow loewner_defect;  // area - (sqrt3/2) sys^2 >= var
    InequalityRow sigma_defect;    // area - sigma^2 sys^2 >= var
    InequalityRow rectangular;     // area - sys^2 >= var, tau imaginary
    InequalityRow one_var_second;  // area - var >= (sys + |f0|/2)^2
    InequalityRow one_var_nosys;   // area - sys^2 >= var + |f0|^2/4
    InequalityRow biaxial_second;  // area - sys^2 >= var + |P f|^2/16
    //! Coefficient 1/4 variant, one-variable factors only.
    InequalityRow biaxial_second_one_var;
    // Intermediate steps of the proofs.
    InequalityRow mean_gap;          // E(f) - sys >= |f0|/2
    InequalityRow averaged_systole;  // sys(f_bar) >= sys(f)
    InequalityRow averaged_chain;    // E(f) >= sys(f) + |P f|/4

    EqualityCase equality_case;
    OneVarCrossCheck one_var_check;
    std::optional<SystoleEstimate> systole;

    //! Rows in report order with their JSON names.
    std::vector<std::pair<std::string_view, InequalityRow const*>>
    rows() const;
    //! Every applicable row passes within budget.
    bool all_pass() const;
};

//! Loewner rows, sigma row, rectangular row, and the equality case.
DefectReport loewner_defect_report(TorusMetric const& metric,
                                   SystoleEstimate const& sys);

//! Rows for one-variable factors on the square torus, using the exact
//! systole. Leaves rows not applicable otherwise.
void second_defect_one_var(TorusMetric const& metric, DefectReport& report);

//! Biaxial second-defect row plus the averaged-metric chain.
void second_defect_biaxial(TorusMetric const& metric,
                           SystoleEstimate const& sys, DefectReport& report);

EqualityCase equality_case_check(TorusMetric const& metric);

//! Full pipeline: systole estimate then every row.
DefectReport analyze(TorusMetric const& metric,
                     SystoleOptions const& options = {});

}  // namespace loewner
