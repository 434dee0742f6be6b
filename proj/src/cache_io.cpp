#include "qzeta/cache_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>

#include <json.hpp>

#include "qzeta/error.hpp"

namespace qzeta {

namespace {

using json = nlohmann::ordered_json;

Rational parse_rational(const std::string& s) {
    static const std::regex form(R"(-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?)");
    if (!std::regex_match(s, form)) {
        throw Error(Errc::Parse, "bad rational \"" + s + "\"");
    }
    Rational r(s, 10);
    r.canonicalize();
    // only the canonical spelling is accepted, so that re-serializing gives the same bytes
    if (r.get_str() != s) {
        throw Error(Errc::Parse, "non-canonical rational \"" + s + "\"");
    }
    return r;
}

Kind parse_kind(const std::string& s) {
    if (s == "modified") {
        return Kind::Modified;
    }
    if (s == "raw") {
        return Kind::Raw;
    }
    throw Error(Errc::Parse, "unknown kind \"" + s + "\"");
}

[[noreturn]] void io_error(const std::string& what, const std::filesystem::path& p) {
    throw Error(Errc::Io, what + ": " + p.string());
}

}  // namespace

std::string entry_to_json(const CacheEntry& e) {
    json j;
    j["index"] = e.index.parts();
    j["kind"] = e.kind == Kind::Modified ? "modified" : "raw";
    j["trunc"] = e.trunc;
    json coeffs = json::array();
    for (const Rational& c : e.series.coeffs()) {
        coeffs.push_back(c.get_str());
    }
    j["coeffs"] = std::move(coeffs);
    j["engine_version"] = e.engine_version;
    return j.dump();
}

CacheEntry entry_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& ex) {
        throw Error(Errc::Parse, std::string("invalid JSON: ") + ex.what());
    }
    CacheEntry e;
    try {
        const auto parts = j.at("index").get<std::vector<int>>();
        if (parts.empty() || parts.front() < 2) {
            throw Error(Errc::Parse, "index not admissible");
        }
        for (int p : parts) {
            if (p < 1) {
                throw Error(Errc::Parse, "index part below 1");
            }
        }
        e.index = Index(parts);
        e.kind = parse_kind(j.at("kind").get<std::string>());
        e.trunc = j.at("trunc").get<std::size_t>();
        e.engine_version = j.at("engine_version").get<std::string>();
        const auto& coeffs = j.at("coeffs");
        if (!coeffs.is_array() || coeffs.size() != e.trunc + 1) {
            throw Error(Errc::Parse, "coefficient count does not match trunc");
        }
        std::vector<Rational> c;
        c.reserve(coeffs.size());
        for (const auto& x : coeffs) {
            c.push_back(parse_rational(x.get<std::string>()));
            if (e.kind == Kind::Modified && c.back().get_den() != 1) {
                throw Error(Errc::Parse, "modified entry with a non-integral coefficient");
            }
        }
        e.series = QSeries(std::move(c));
    } catch (const json::exception& ex) {
        throw Error(Errc::Parse, std::string("bad field: ") + ex.what());
    }
    return e;
}

LoadReport load_cache_dir(const std::filesystem::path& dir, ExpansionCache& cache) {
    namespace fs = std::filesystem;
    LoadReport report;
    std::error_code ec;
    if (!fs::exists(dir, ec)) {
        if (ec) {
            io_error("cannot stat cache directory", dir);
        }
        return report;
    }
    if (!fs::is_directory(dir, ec)) {
        io_error("cache path is not a directory", dir);
    }
    std::vector<fs::path> files;
    fs::directory_iterator it(dir, ec);
    if (ec) {
        io_error("cannot list cache directory", dir);
    }
    static const std::regex name(R"(weight-[0-9]+\.jsonl)");
    for (const auto& ent : it) {
        if (ent.is_regular_file() && std::regex_match(ent.path().filename().string(), name)) {
            files.push_back(ent.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
        std::ifstream in(f);
        if (!in) {
            io_error("cannot open cache file", f);
        }
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) {
                continue;
            }
            const std::string where = f.filename().string() + ":" + std::to_string(lineno) + ": ";
            try {
                CacheEntry e = entry_from_json(line);
                if (e.engine_version != kEngineVersion) {
                    ++report.stale;
                    report.warnings.push_back(where + "engine_version " + e.engine_version + " ignored");
                    continue;
                }
                cache.insert(e.index, e.kind, e.series);
                ++report.loaded;
            } catch (const Error& err) {
                ++report.corrupt;
                report.warnings.push_back(where + err.what());
            }
        }
        if (in.bad()) {
            io_error("read error", f);
        }
    }
    return report;
}

void store_cache_dir(const std::filesystem::path& dir, const ExpansionCache& cache) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        io_error("cannot create cache directory", dir);
    }
    std::map<int, std::vector<std::string>> by_weight;
    for (const auto& [key, series] : cache.snapshot()) {
        CacheEntry e{key.first, key.second, series.trunc(), series, kEngineVersion};
        by_weight[key.first.weight()].push_back(entry_to_json(e));
    }
    for (const auto& [w, lines] : by_weight) {
        const fs::path target = dir / ("weight-" + std::to_string(w) + ".jsonl");
        fs::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) {
                io_error("cannot write", tmp);
            }
            for (const std::string& l : lines) {
                out << l << '\n';
            }
            out.flush();
            if (!out) {
                io_error("write failed", tmp);
            }
        }
        fs::rename(tmp, target, ec);
        if (ec) {
            io_error("cannot rename into place", target);
        }
    }
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) {
        return std::filesystem::path(*flag);
    }
    if (const char* env = std::getenv("QZETA_CACHE"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return std::nullopt;
}

}  // namespace qzeta
