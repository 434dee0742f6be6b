#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "qzeta/index.hpp"
#include "qzeta/qseries.hpp"

namespace qzeta {

/// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

struct NumericResult {
    /// Partial sum; never extrapolated.
    Real value;
    /// Bound on |value - exact|.
    Real tail_bound;
    std::size_t terms_used = 0;
};

/// zeta_q(k) at real q in (0,1) by direct summation over the outer variable.
/// Throws NotAdmissible, BadQ, or InvalidArgument for eps <= 0.
NumericResult eval_qmzv(const Index& k, const Real& q, const Real& eps);

/// zeta_q(k) at real q from the exact expansion through q^N: the modified
/// coefficients a_n are summed and the rest is bounded by an envelope on a_n.
NumericResult eval_expansion(const Index& k, const Real& q, std::size_t N);

/// Li_k(1/2) for any index with parts >= 1.
NumericResult eval_polylog_half(const std::vector<int>& parts, const Real& eps);

/// zeta(k) = lim_{q->1} zeta_q(k). Throws NotAdmissible.
NumericResult eval_mzv(const Index& k, const Real& eps);

/// |sum c_i zeta(k_i)| <= eps + accumulated tail bounds.
bool check_mzv_relation(const std::vector<std::pair<Index, Integer>>& rel, const Real& eps);

struct IdentityCheck {
    bool passed = false;
    /// Largest |left - right| over the compared forms.
    Real discrepancy;
    /// eps plus the truncation bounds of both sides.
    Real allowance;
    std::size_t terms_used = 0;
};

/// phi(a,b,c; c/(ab)) summed as a series, against the infinite product
/// over n >= 0 and against the product form over n >= 1 in alpha, beta, x, y.
/// a, b, c come from (u,v,w) through the roots of X^2 - (u+v)X + w.
/// Throws DivergenceDetected when a tail envelope does not contract.
IdentityCheck check_heine(const Real& q, const Real& u, const Real& v, const Real& w, std::size_t n_cut,
                          const Real& eps);

/// Phi_0(u,v,w;t) summed over admissible indices of weight <= weight_cutoff
/// against (1 - phi(a,b,c; ct/(qab)))/(uv - w). Throws InvalidArgument when uv = w.
IdentityCheck check_solution_formula(const Real& q, const Real& u, const Real& v, const Real& w, const Real& t,
                                     const Real& eps, int weight_cutoff = 14);

}  // namespace qzeta
