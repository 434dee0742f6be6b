#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "qzeta/index.hpp"
#include "qzeta/qseries.hpp"

namespace qzeta {

enum class Statement { CyclicSum, CyclicLemma, Ohno, Duality };

const char* statement_name(Statement s);

struct VerificationReport {
    Statement statement = Statement::CyclicSum;
    Index index;
    std::optional<int> l;
    std::size_t trunc = 0;
    /// Raw-normalized residual through q^trunc.
    QSeries residual;
    bool passed = false;
    /// Lowest q-order where the residual is nonzero, and its coefficient.
    std::optional<std::size_t> first_failure;
    Rational failure_coeff;

    std::string summary() const;
};

/// Where the verifiers get their modified expansions from. The defaults call
/// expand_modified and expand_T; tests substitute their own.
struct SeriesSource {
    std::function<QSeries(const Index&, std::size_t)> zeta;
    std::function<QSeries(const Index&, std::size_t)> t_sum;

    static SeriesSource standard();
};

/// Sum_i zeta(k_i+1, rotation) minus the double sum over j of
/// zeta(k_i-j, rotation, j+1). Needs some k_i >= 2 (Errc::NoPartAtLeastTwo).
VerificationReport verify_cyclic(const Index& k, std::size_t N, const SeriesSource& src = SeriesSource::standard());

/// Residual of the single-rotation lemma, taken as right side minus left side:
/// [T(k_2..k_r,k_1) - sum_j zeta(k_1-j,k_2..k_r,j+1)] - [T(k) - zeta(k_1+1,k_2..k_r)].
/// With this sign, summing over rotations gives exactly the verify_cyclic residual.
VerificationReport verify_cyclic_lemma(const Index& k, std::size_t N,
                                       const SeriesSource& src = SeriesSource::standard());

/// Sum over compositions c of l on k minus the same sum on dual(k). Throws Errc::NotAdmissible.
VerificationReport verify_ohno(const Index& k, int l, std::size_t N, const SeriesSource& src = SeriesSource::standard());

/// verify_ohno with l = 0: zeta(k) = zeta(dual(k)).
VerificationReport verify_duality(const Index& k, std::size_t N, const SeriesSource& src = SeriesSource::standard());

}  // namespace qzeta
