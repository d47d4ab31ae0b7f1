#pragma once

#include <stdexcept>
#include <string>

namespace cft {

// Failure categories shared by every module; the CLI maps each to a distinct
// exit code.
enum class error_kind { validation, size_limit, numeric, singularity };

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    error_kind kind() const { return kind_; }

private:
    error_kind kind_;
};

class validation_error : public error {
public:
    explicit validation_error(const std::string& what)
        : error(error_kind::validation, what) {}
};

class size_limit_error : public error {
public:
    explicit size_limit_error(const std::string& what)
        : error(error_kind::size_limit, what) {}
};

class numeric_error : public error {
public:
    explicit numeric_error(const std::string& what)
        : error(error_kind::numeric, what) {}
};

class singularity_error : public error {
public:
    explicit singularity_error(const std::string& what)
        : error(error_kind::singularity, what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw validation_error(what);
}

}  // namespace cft
