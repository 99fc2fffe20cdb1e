#pragma once

#include <stdexcept>
#include <string>

namespace ultratree {

/// Argument outside the domain of an operation (unknown point, remote point
/// where a finite one is required, mismatched trees).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Indeterminate arithmetic on extended reals: 0 * inf, 0 / 0, inf / inf.
class NumericDomainError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A documented precondition or postcondition of a geometric operation does
/// not hold for the given inputs.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A metric space axiom is violated. `axiom()` names it: "cardinality",
/// "diagonal", "symmetry", "positivity", "remote-point", "triangle",
/// "labels".
class AxiomViolation : public DomainError {
public:
    AxiomViolation(std::string axiom, const std::string& detail)
        : DomainError(axiom + ": " + detail), axiom_(std::move(axiom)) {}

    const std::string& axiom() const noexcept { return axiom_; }

private:
    std::string axiom_;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ultratree
