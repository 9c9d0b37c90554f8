#pragma once

#include <stdexcept>
#include <string>

namespace oddanom
{

// Process exit codes used by the command-line front end.
enum class exit_code : int {
    ok = 0,
    verification_mismatch = 2,
    configuration = 3,
    precision = 4,
};

// Base of every error raised by the library. Each error knows the exit code the
// CLI reports for it.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual exit_code code() const noexcept { return exit_code::configuration; }
};

// Operands built over different generator sets or truncations.
class context_error : public error
{
public:
    using error::error;
};

class not_invertible_error : public error
{
public:
    using error::error;
};

// exp/log outside their domain, Im(tau) <= 0, and similar.
class domain_error : public error
{
public:
    using error::error;
};

class configuration_error : public error
{
public:
    using error::error;
};

class unsupported_expression_error : public error
{
public:
    using error::error;
};

class precision_error : public error
{
public:
    using error::error;
    [[nodiscard]] exit_code code() const noexcept override { return exit_code::precision; }
};

// Decomposition residual did not vanish.
class modularity_violation : public error
{
public:
    using error::error;
    [[nodiscard]] exit_code code() const noexcept override { return exit_code::verification_mismatch; }
};

// h_0 came out nonzero.
class certification_error : public error
{
public:
    using error::error;
    [[nodiscard]] exit_code code() const noexcept override { return exit_code::verification_mismatch; }
};

class verification_failure : public error
{
public:
    using error::error;
    [[nodiscard]] exit_code code() const noexcept override { return exit_code::verification_mismatch; }
};

} // namespace oddanom
