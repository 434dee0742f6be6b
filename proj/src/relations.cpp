#include "qzeta/relations.hpp"

#include <sstream>

#include "qzeta/error.hpp"
#include "qzeta/expander.hpp"

namespace qzeta {

const char* statement_name(Statement s) {
    switch (s) {
        case Statement::CyclicSum: return "cyclic";
        case Statement::CyclicLemma: return "lemma";
        case Statement::Ohno: return "ohno";
        case Statement::Duality: return "duality";
    }
    return "?";
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << statement_name(statement) << ' ' << index.to_string();
    if (l) {
        os << " l=" << *l;
    }
    os << " order=" << trunc << ": ";
    if (passed) {
        os << "pass (residual 0 through q^" << trunc << ")";
    } else {
        os << "FAIL at q^" << *first_failure << " (coefficient " << failure_coeff.get_str() << ")";
    }
    return os.str();
}

SeriesSource SeriesSource::standard() {
    return SeriesSource{[](const Index& k, std::size_t N) { return expand_modified(k, N); },
                        [](const Index& k, std::size_t N) { return expand_T(k, N); }};
}

namespace {

Index with_parts(std::vector<int> parts) { return Index(std::move(parts)); }

/// Every term shares one weight, so the combination is formed in modified
/// normalization and converted once.
VerificationReport finish(Statement statement, const Index& k, std::optional<int> l, std::size_t N,
                          const QSeries& modified_residual, int weight) {
    VerificationReport report;
    report.statement = statement;
    report.index = k;
    report.l = l;
    report.trunc = N;
    report.residual = to_raw(modified_residual, weight);
    report.first_failure = report.residual.order();
    report.passed = !report.first_failure.has_value();
    if (report.first_failure) {
        report.failure_coeff = report.residual[*report.first_failure];
    }
    return report;
}

void require_part_at_least_two(const Index& k) {
    if (!k.has_part_at_least_two()) {
        throw Error(Errc::NoPartAtLeastTwo, "index needs some part >= 2: " + k.to_string());
    }
}

/// zeta(k_1+1, k_2, ..., k_r)
QSeries bumped_head(const Index& k, std::size_t N, const SeriesSource& src) {
    std::vector<int> parts = k.parts();
    ++parts[0];
    return src.zeta(with_parts(std::move(parts)), N);
}

/// sum_{j=0}^{k_1-2} zeta(k_1-j, k_2, ..., k_r, j+1)
QSeries split_head(const Index& k, std::size_t N, const SeriesSource& src) {
    QSeries total(N);
    for (int j = 0; j <= k[0] - 2; ++j) {
        std::vector<int> parts = k.parts();
        parts[0] = k[0] - j;
        parts.push_back(j + 1);
        total += src.zeta(with_parts(std::move(parts)), N);
    }
    return total;
}

QSeries composition_sum(const Index& k, int l, std::size_t N, const SeriesSource& src) {
    QSeries total(N);
    for (const auto& c : compositions(l, k.depth())) {
        std::vector<int> parts = k.parts();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            parts[i] += c[i];
        }
        total += src.zeta(with_parts(std::move(parts)), N);
    }
    return total;
}

}  // namespace

VerificationReport verify_cyclic(const Index& k, std::size_t N, const SeriesSource& src) {
    require_part_at_least_two(k);
    QSeries residual(N);
    for (std::size_t i = 0; i < k.parts().size(); ++i) {
        const Index rot = k.rotated(i);
        residual += bumped_head(rot, N, src);
        residual -= split_head(rot, N, src);
    }
    return finish(Statement::CyclicSum, k, std::nullopt, N, residual, k.weight() + 1);
}

VerificationReport verify_cyclic_lemma(const Index& k, std::size_t N, const SeriesSource& src) {
    require_part_at_least_two(k);
    const QSeries lhs = src.t_sum(k, N) - bumped_head(k, N, src);
    const QSeries rhs = src.t_sum(k.rotated(1), N) - split_head(k, N, src);
    return finish(Statement::CyclicLemma, k, std::nullopt, N, rhs - lhs, k.weight() + 1);
}

VerificationReport verify_ohno(const Index& k, int l, std::size_t N, const SeriesSource& src) {
    if (!k.admissible()) {
        throw Error(Errc::NotAdmissible, "index not admissible: " + k.to_string());
    }
    if (l < 0) {
        throw Error(Errc::InvalidArgument, "l must be non-negative");
    }
    const QSeries residual = composition_sum(k, l, N, src) - composition_sum(dual(k), l, N, src);
    return finish(Statement::Ohno, k, l, N, residual, k.weight() + l);
}

VerificationReport verify_duality(const Index& k, std::size_t N, const SeriesSource& src) {
    VerificationReport report = verify_ohno(k, 0, N, src);
    report.statement = Statement::Duality;
    report.l.reset();
    return report;
}

}  // namespace qzeta
