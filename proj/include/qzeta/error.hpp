#pragma once

#include <stdexcept>
#include <string>

namespace qzeta {

enum class Errc {
    ZeroConstantTerm,
    BadConstantTerm,
    NotAdmissible,
    WeightTooSmall,
    NoPartAtLeastTwo,
    DivergentSum,
    BadQ,
    DivergenceDetected,
    Parse,
    InvalidArgument,
    Io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace qzeta
