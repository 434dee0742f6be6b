#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qzeta/cache_io.hpp"
#include "qzeta/error.hpp"
#include "qzeta/expander.hpp"
#include "qzeta/genfun.hpp"
#include "qzeta/ranklab.hpp"
#include "qzeta/relations.hpp"

using namespace qzeta;

namespace {

enum Exit { kPass = 0, kResidual = 1, kUsage = 2, kMining = 3, kIo = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lowest q-order at which any of the series is nonzero.
std::optional<std::size_t> first_nonzero(const std::vector<QSeries>& parts) {
    std::optional<std::size_t> best;
    for (const QSeries& s : parts) {
        for (std::size_t n = 0; n <= s.trunc(); ++n) {
            if (s[n] != 0) {
                if (!best || n < *best) {
                    best = n;
                }
                break;
            }
        }
    }
    return best;
}

std::vector<QSeries> series_of(const WPoly& p) {
    std::vector<QSeries> out;
    for (const auto& [mono, c] : p.terms()) {
        out.push_back(c);
    }
    return out;
}

std::vector<QSeries> series_of(const TSeries& t) {
    std::vector<QSeries> out;
    for (std::size_t n = 0; n <= t.trunc_t(); ++n) {
        out.push_back(t[n]);
    }
    return out;
}

int report(const std::string& what, std::size_t order, const std::optional<std::size_t>& failure) {
    if (!failure) {
        std::cout << what << " order=" << order << ": pass (residual 0 through q^" << order << ")\n";
        return kPass;
    }
    std::cout << what << " order=" << order << ": FAIL at q^" << *failure << "\n";
    return kResidual;
}

int report(const VerificationReport& r) {
    std::cout << r.summary() << "\n";
    return r.passed ? kPass : kResidual;
}

// ---- expand

struct ExpandArgs {
    std::string index;
    std::size_t order = 13;
    bool raw = false;
    std::string format = "table";
};

int cmd_expand(const ExpandArgs& a) {
    const Index k = parse_index(a.index);
    const Kind kind = a.raw ? Kind::Raw : Kind::Modified;
    const Expansion e = expand(k, a.order, kind);
    if (a.format == "json") {
        std::cout << entry_to_json(CacheEntry{k, kind, a.order, e.series, kEngineVersion}) << "\n";
        return kPass;
    }
    for (std::size_t n = 1; n <= a.order; ++n) {
        std::cout << (n > 1 ? " " : "") << e.series[n].get_str();
    }
    std::cout << "\n";
    return kPass;
}

// ---- verify

struct VerifyArgs {
    std::string statement;
    std::string index;
    int l = 0;
    std::size_t order = 40;
    int weight = 0;
    std::size_t tdeg = 8;
    std::size_t sdeg = 4;
    bool modified = false;
};

Index required_index(const VerifyArgs& a) {
    if (a.index.empty()) {
        throw UsageError("verify " + a.statement + " needs --index");
    }
    return parse_index(a.index);
}

int required_weight(const VerifyArgs& a) {
    if (a.weight < 2) {
        throw UsageError("verify " + a.statement + " needs --weight >= 2");
    }
    return a.weight;
}

int cmd_verify(const VerifyArgs& a) {
    const std::string& s = a.statement;
    if (s == "cyclic") {
        return report(verify_cyclic(required_index(a), a.order));
    }
    if (s == "lemma") {
        return report(verify_cyclic_lemma(required_index(a), a.order));
    }
    if (s == "ohno") {
        if (a.l < 0) {
            throw UsageError("--l must be >= 0");
        }
        return report(verify_ohno(required_index(a), a.l, a.order));
    }
    if (s == "duality") {
        return report(verify_duality(required_index(a), a.order));
    }
    if (s == "ohno-zagier") {
        const int K = required_weight(a);
        const Kind kind = a.modified ? Kind::Modified : Kind::Raw;
        const WPoly diff = ohno_zagier_lhs(K, a.order, kind) - ohno_zagier_rhs(K, a.order, kind);
        return report(std::string("OhnoZagier weight=") + std::to_string(K) + " " + kind_name(kind), a.order,
                      first_nonzero(series_of(diff)));
    }
    if (s == "qhyp") {
        const int K = required_weight(a);
        TWPoly lhs = qhyp_lhs(phi0_polylog(K, a.tdeg, a.order), K);
        std::vector<QSeries> parts;
        for (auto& [mono, t] : lhs) {
            if (mono == Mono{}) {
                t[0] -= QSeries::one(t.trunc_q());
            }
            for (QSeries& c : series_of(t)) {
                parts.push_back(std::move(c));
            }
        }
        return report("QHypergeometric weight=" + std::to_string(K) + " tdeg=" + std::to_string(a.tdeg), a.order,
                      first_nonzero(parts));
    }
    if (s == "log-product") {
        const TSeries diff = log_product_lhs(a.sdeg, a.order) - log_product_rhs(a.sdeg, a.order);
        return report("LogProduct sdeg=" + std::to_string(a.sdeg), a.order, first_nonzero(series_of(diff)));
    }
    if (s == "qdiff") {
        const Index k = required_index(a);
        const bool ok = verify_qdiff_recurrences(k, a.tdeg, a.order);
        std::cout << "QDifference " << k.to_string() << " tdeg=" << a.tdeg << " order=" << a.order << ": "
                  << (ok ? "pass" : "FAIL") << "\n";
        return ok ? kPass : kResidual;
    }
    throw UsageError("unknown statement \"" + s + "\"");
}

// ---- table

struct TableArgs {
    std::string what;
    int max_weight = 8;
    bool extended = false;
};

int cmd_table(const TableArgs& a) {
    if (a.what != "rank") {
        throw UsageError("unknown table \"" + a.what + "\"");
    }
    const int limit = a.extended ? 10 : 8;
    if (a.max_weight < 2 || a.max_weight > limit) {
        throw UsageError("--max-weight must lie in 2.." + std::to_string(limit) +
                         (a.extended ? "" : " (weights 9 and 10 need --extended)"));
    }
    std::vector<std::string> weight, dk, rank, bound, sum_d, rank_le, sum_rank;
    int acc_d = 0;
    std::size_t acc_rank = 0;
    for (int k = 2; k <= a.max_weight; ++k) {
        const std::size_t r = rank_exact(build_Ak(k));
        acc_d += d_k_table()[k - 2];
        acc_rank += r;
        weight.push_back(std::to_string(k));
        dk.push_back(std::to_string(d_k_table()[k - 2]));
        rank.push_back(std::to_string(r));
        bound.push_back(std::to_string(upper_bound_from_relations(k)));
        sum_d.push_back(std::to_string(acc_d));
        rank_le.push_back(std::to_string(rank_exact(build_A_le_k(k))));
        sum_rank.push_back(std::to_string(acc_rank));
    }
    auto row = [](const std::string& label, const std::vector<std::string>& cells) {
        std::cout << label;
        for (const std::string& c : cells) {
            std::cout << '\t' << c;
        }
        std::cout << '\n';
    };
    row("weight", weight);
    row("d_k", dk);
    row("rank A_k", rank);
    row("By cyclic and Ohno", bound);
    row("sum d_j", sum_d);
    row("rank A_<=k", rank_le);
    row("sum rank A_j", sum_rank);
    return kPass;
}

// ---- mine

struct MineArgs {
    int weight = 0;
    std::size_t verify_order = 0;
    std::size_t rows = 0;
    bool mixed = false;
    std::string out;
};

void write_atomically(const std::filesystem::path& target, const std::string& text) {
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) {
            throw Error(Errc::Io, "cannot write " + tmp.string());
        }
        f << text;
        f.flush();
        if (!f) {
            throw Error(Errc::Io, "write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        throw Error(Errc::Io, "cannot rename into place: " + target.string());
    }
}

int cmd_mine(const MineArgs& a) {
    if (a.weight < 2) {
        throw UsageError("--weight must be >= 2");
    }
    const std::size_t cols = a.mixed ? (std::size_t{1} << (a.weight - 1)) - 1 : std::size_t{1} << (a.weight - 2);
    const std::size_t rows = a.rows != 0 ? a.rows : default_mining_rows(cols);
    const std::size_t verify = a.verify_order != 0 ? a.verify_order : 2 * rows;
    if (verify < rows) {
        throw UsageError("--verify-order must be at least the number of rows (" + std::to_string(rows) + ")");
    }
    const std::vector<Relation> rels =
        a.mixed ? mine_mixed_weight(a.weight, rows, verify) : mine_relations(a.weight, rows, verify);
    std::cout << "kernel dimension: " << rels.size() << "\n";
    std::size_t unverified = 0;
    std::string jsonl;
    for (const Relation& r : rels) {
        std::cout << r.certificate() << "\n";
        jsonl += r.json() + "\n";
        if (r.status != RelationStatus::VerifiedToOrder) {
            ++unverified;
        }
    }
    if (!a.out.empty()) {
        write_atomically(a.out, jsonl);
    }
    if (unverified != 0) {
        std::cerr << "error: " << unverified << " candidate(s) failed re-verification through q^" << verify << "\n";
        return kMining;
    }
    return kPass;
}

int exit_code_for(const Error& e) {
    return e.code() == Errc::Io ? kIo : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-multiple zeta value engine"};
    app.require_subcommand(1);
    std::optional<std::string> cache_flag;
    app.add_option("--cache-dir", cache_flag, "Expansion cache directory (default: $QZETA_CACHE)");

    ExpandArgs ea;
    CLI::App* expand_cmd = app.add_subcommand("expand", "Print a_1..a_N of an expansion");
    expand_cmd->add_option("--index", ea.index, "Index such as (3,1)")->required();
    expand_cmd->add_option("--order", ea.order, "Truncation order N")->capture_default_str();
    expand_cmd->add_flag("--raw", ea.raw, "zeta_q itself instead of the (1-q)^{-weight} normalization");
    expand_cmd->add_option("--format", ea.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

    VerifyArgs va;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Check an identity through q^N");
    verify_cmd->add_option("statement", va.statement, "cyclic|lemma|ohno|duality|ohno-zagier|qhyp|log-product|qdiff")
        ->required()
        ->check(CLI::IsMember({"cyclic", "lemma", "ohno", "duality", "ohno-zagier", "qhyp", "log-product", "qdiff"}));
    verify_cmd->add_option("--index", va.index);
    verify_cmd->add_option("--l", va.l, "Ohno shift")->capture_default_str();
    verify_cmd->add_option("--order", va.order, "Truncation order N")->capture_default_str();
    verify_cmd->add_option("--weight", va.weight, "Weighted-degree bound K");
    verify_cmd->add_option("--tdeg", va.tdeg, "t-degree for qhyp and qdiff")->capture_default_str();
    verify_cmd->add_option("--sdeg", va.sdeg, "s-degree for log-product")->capture_default_str();
    verify_cmd->add_flag("--modified", va.modified, "ohno-zagier in the modified normalization");

    TableArgs ta;
    CLI::App* table_cmd = app.add_subcommand("table", "Rank table as TSV");
    table_cmd->add_option("what", ta.what, "rank")->required();
    table_cmd->add_option("--max-weight", ta.max_weight)->capture_default_str();
    table_cmd->add_flag("--extended", ta.extended, "Allow weights 9 and 10");

    MineArgs ma;
    CLI::App* mine_cmd = app.add_subcommand("mine", "Integer relations among expansions");
    mine_cmd->add_option("--weight", ma.weight)->required();
    mine_cmd->add_option("--verify-order", ma.verify_order, "Re-verification order (default: twice the rows)");
    mine_cmd->add_option("--rows", ma.rows, "Matrix rows n = 1..rows (default: columns + max(20, columns))");
    mine_cmd->add_flag("--mixed", ma.mixed, "All admissible indices of weight 2..k");
    mine_cmd->add_option("--out", ma.out, "Certificate JSON-lines file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    std::optional<std::filesystem::path> cache_dir;
    try {
        cache_dir = resolve_cache_dir(cache_flag);
        if (cache_dir) {
            const LoadReport lr = load_cache_dir(*cache_dir, default_cache());
            for (const std::string& w : lr.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
        }

        int rc = kPass;
        if (*expand_cmd) {
            rc = cmd_expand(ea);
        } else if (*verify_cmd) {
            rc = cmd_verify(va);
        } else if (*table_cmd) {
            rc = cmd_table(ta);
        } else if (*mine_cmd) {
            rc = cmd_mine(ma);
        }
        std::cout.flush();
        if (cache_dir) {
            store_cache_dir(*cache_dir, default_cache());
        }
        return rc;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
