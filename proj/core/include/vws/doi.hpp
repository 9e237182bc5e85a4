#pragma once

#include <span>
#include <string>
#include <vector>

#include "vws/coeffs.hpp"
#include "vws/fit.hpp"
#include "vws/symbol.hpp"

namespace vws {

// lambda(t) = <t>^-N for t >= 0 and 1 for t < 0.
double doi_weight(double t, int N);

// f(t) = int_0^t lambda(s/K - 10) ds, tabulated by the trapezoid rule at step K/100.
class DoiFunction {
 public:
  DoiFunction(double K, int N, double t_max);

  double operator()(double t) const;  // linear interpolation of the table
  double derivative(double t) const;  // lambda(t/K - 10), exact
  double second_derivative(double t) const;

  double K() const { return K_; }
  int N() const { return N_; }
  double step() const { return step_; }
  double t_max() const { return step_ * double(table_.size() - 1); }
  const std::vector<double>& table() const { return table_; }
  // 10K + K int_0^inf <s>^-N ds, the supremum of f.
  double supremum_bound() const;

 private:
  double K_;
  int N_;
  double step_;
  std::vector<double> table_;
};

DoiFunction build_f(double K, int N, double t_max = 0.0);

struct DoiParams {
  double C1 = 4.0;
  double mu = 1.0;
  double delta = 0.1;
  double K = 1.0;
  int N = 2;
};

void validate(const DoiParams& p);

// q = C1 mu^2 <xi>^-1 sum_j x_j d_xi_j a2, with analytic first derivatives.
SymbolJet build_q(const CoefficientSet& cs, double C1, double mu, const XiGrid& xi);

// d = (q/<x>) phi_0 + (f(|q|) + 2 delta)(phi_+ - phi_-), with first derivatives by the chain rule.
SymbolJet build_d(const SymbolJet& q, const DoiParams& p, const DoiFunction& f);

struct DoiMargin {
  double constant = 0.0;  // max over the lattice of (<x>^-N |xi| - {a2, d})
  double min_margin = 0.0;  // -constant
};

DoiMargin check_doi(const SymbolJet& d, const SymbolJet& a2, int N);

struct DoiCheckParams {
  double C1 = 4.0;
  double delta = 0.1;
  int N = 2;
  double mu = 1.0;           // ellipticity constant from the hypothesis check
  XiGrid xi;                 // lattice of frequencies to scan
  double variation = 0.10;   // allowed spread of ladder constants
  double constant_floor = 1.0;  // spread is relative to max(|C|, floor)
  double bounded_slope_tolerance = 0.1;
  double second_slope_tolerance = 0.3;
  int workers = 1;
};

struct DoiMemberReport {
  double eps = 0.0;
  double omega = 0.0;
  double q_growth = 0.0;          // sup |q| / <x>
  double escape_constant = 0.0;   // max (C1 |xi| - {a2, q})
  double doi_constant = 0.0;      // max (<x>^-N |xi| - {a2, d})
  double first_x_derivative = 0.0;   // sup |d_x d|
  double second_x_derivative = 0.0;  // sup |d_x d_x d|
};

struct FunctionChecks {
  double at_zero = 0.0;
  bool nondecreasing = false;
  double worst_slope_excess = 0.0;  // min over cells of (table slope - lambda lower bound)
  double supremum = 0.0;
  double supremum_bound = 0.0;
  bool pass = false;
};

struct DoiLadderReport {
  DoiParams params;
  std::vector<DoiMemberReport> members;
  double escape_constant = 0.0;  // ladder-wide C2
  double escape_variation = 0.0;
  bool escape_pass = false;
  double doi_constant = 0.0;  // ladder-wide C
  double doi_variation = 0.0;
  bool doi_pass = false;
  LineFit first_derivative_fit;
  LineFit second_derivative_fit;
  bool symbol_class_pass = false;
  FunctionChecks f_checks;
  std::string caveat;

  bool pass() const { return escape_pass && doi_pass && symbol_class_pass && f_checks.pass; }
};

FunctionChecks check_f(const DoiFunction& f);

// Scans every ladder member pointwise; the lattice is never stored.
DoiLadderReport check_doi_ladder(std::span<const CoefficientSet> sets, const DoiCheckParams& params);

}  // namespace vws
