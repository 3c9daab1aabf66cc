#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyvc {

/** A precondition on the mathematical input was violated (e.g. r >= s). */
class DomainError : public std::domain_error
{
    public:
        explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/** The α-hypothesis of the fractional Helly statement does not hold for the given input. */
class HypothesisError : public DomainError
{
    public:
        explicit HypothesisError(const std::string& what) : DomainError(what) {}
};

/** An exhaustive operation was asked to run beyond its configured size limit. */
class CapacityError : public std::runtime_error
{
    public:
        explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/** The requested combination of options is not supported (e.g. exact Gaussian width). */
class UnsupportedError : public std::runtime_error
{
    public:
        explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/** A linear program or covering problem has no feasible solution. */
class InfeasibleError : public std::runtime_error
{
    public:
        explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A search (approximation, net, ...) exhausted its budget without finding a
 * witness. `best_deviation` carries the closest miss when one is meaningful.
 */
class NotFoundError : public std::runtime_error
{
    public:
        NotFoundError(const std::string& what, double best_deviation = -1.0)
            : std::runtime_error(what), best_deviation_(best_deviation) {}

        double best_deviation() const noexcept { return best_deviation_; }

    private:
        double best_deviation_;
};

/** Malformed instance text; the message starts with the path of the offending field. */
class ParseError : public std::runtime_error
{
    public:
        explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}   // namespace fuzzyvc
