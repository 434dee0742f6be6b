#include "qzeta/index.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "qzeta/error.hpp"

namespace qzeta {

Index::Index(std::initializer_list<int> parts) : Index(std::vector<int>(parts)) {}

Index::Index(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw Error(Errc::InvalidArgument, "index must have at least one part");
    }
    for (int p : parts_) {
        if (p < 1) {
            throw Error(Errc::InvalidArgument, "index parts must be positive");
        }
    }
}

int Index::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Index::height() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p >= 2; }));
}

Index Index::rotated(std::size_t i) const {
    std::vector<int> out(parts_.size());
    std::rotate_copy(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(i), parts_.end(),
                     out.begin());
    return Index(std::move(out));
}

std::string Index::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(parts_[i]);
    }
    out += ')';
    return out;
}

std::ostream& operator<<(std::ostream& os, const Index& k) { return os << k.to_string(); }

Index parse_index(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        return s;
    };
    std::string_view body = trim(text);
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') {
            throw Error(Errc::Parse, "unbalanced parentheses in index '" + std::string(text) + "'");
        }
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> parts;
    while (true) {
        const auto comma = body.find(',');
        const std::string_view token = trim(body.substr(0, comma));
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 1) {
            throw Error(Errc::Parse, "bad index '" + std::string(text) + "'");
        }
        parts.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        body = body.substr(comma + 1);
    }
    return Index(std::move(parts));
}

Code code_of(const Index& k) {
    if (!k.admissible()) {
        throw Error(Errc::NotAdmissible, "index not admissible: " + k.to_string());
    }
    Code code;
    for (int p : k.parts()) {
        if (p >= 2) {
            code.pairs.emplace_back(p - 1, 1);
        } else {
            ++code.pairs.back().second;
        }
    }
    return code;
}

Index decode(const Code& code) {
    if (code.pairs.empty()) {
        throw Error(Errc::InvalidArgument, "empty code");
    }
    std::vector<int> parts;
    for (auto [a, b] : code.pairs) {
        if (a < 1 || b < 1) {
            throw Error(Errc::InvalidArgument, "code entries must be positive");
        }
        parts.push_back(a + 1);
        parts.insert(parts.end(), static_cast<std::size_t>(b - 1), 1);
    }
    return Index(std::move(parts));
}

Index dual(const Index& k) {
    const Code code = code_of(k);
    Code swapped;
    for (auto it = code.pairs.rbegin(); it != code.pairs.rend(); ++it) {
        swapped.pairs.emplace_back(it->second, it->first);
    }
    return decode(swapped);
}

namespace {

void compositions_of(int remaining, std::vector<int>& prefix, std::vector<Index>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int p = 1; p <= remaining; ++p) {
        prefix.push_back(p);
        compositions_of(remaining - p, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Index> enumerate_all(int k) {
    std::vector<Index> out;
    if (k < 1) {
        return out;
    }
    std::vector<int> prefix;
    compositions_of(k, prefix, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> enumerate_admissible(int k) {
    if (k < 2) {
        throw Error(Errc::WeightTooSmall, "admissible indices need weight >= 2");
    }
    std::vector<Index> out;
    std::vector<int> prefix;
    for (int first = 2; first <= k; ++first) {
        prefix.assign(1, first);
        compositions_of(k - first, prefix, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> enumerate_admissible_upto(int k) {
    std::vector<Index> out;
    for (int w = 2; w <= k; ++w) {
        auto level = enumerate_admissible(w);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<Index> enumerate_by(int k, int r, int s) {
    std::vector<Index> out;
    if (k < r + s || r < s || s < 0 || r < 1) {
        return out;
    }
    for (auto& idx : enumerate_all(k)) {
        if (idx.depth() == r && idx.height() == s) {
            out.push_back(std::move(idx));
        }
    }
    return out;
}

std::vector<Index> enumerate_by_admissible(int k, int r, int s) {
    auto all = enumerate_by(k, r, s);
    std::erase_if(all, [](const Index& idx) { return !idx.admissible(); });
    return all;
}

namespace {

void compositions_rec(int l, int r, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (r == 1) {
        prefix.push_back(l);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int c = l; c >= 0; --c) {
        prefix.push_back(c);
        compositions_rec(l - c, r - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> compositions(int l, int r) {
    if (l < 0 || r < 1) {
        throw Error(Errc::InvalidArgument, "compositions need l >= 0 and r >= 1");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    compositions_rec(l, r, prefix, out);
    return out;
}

}  // namespace qzeta
