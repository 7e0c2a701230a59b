#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace srp {

// Base class for all structured errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Parameter validation failed; carries every violated constraint.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid parameters:";
        for (const auto& x : v) s += " [" + x + "]";
        return s;
    }
    std::vector<std::string> violations_;
};

#define SRP_DEFINE_ERROR(NAME)                                        \
    class NAME : public Error {                                       \
    public:                                                           \
        explicit NAME(const std::string& w) : Error(#NAME ": " + w) {} \
    }

SRP_DEFINE_ERROR(PreconditionViolated);
SRP_DEFINE_ERROR(ConvergenceFailure);
SRP_DEFINE_ERROR(BranchAmbiguity);
SRP_DEFINE_ERROR(SingularDenominator);
SRP_DEFINE_ERROR(GridNotConverged);
SRP_DEFINE_ERROR(IllConditionedBVP);
SRP_DEFINE_ERROR(StepCountInsufficient);
SRP_DEFINE_ERROR(InsufficientSamples);
SRP_DEFINE_ERROR(EmptySuite);
SRP_DEFINE_ERROR(ConfigError);
SRP_DEFINE_ERROR(ComputationError);

#undef SRP_DEFINE_ERROR

}  // namespace srp
