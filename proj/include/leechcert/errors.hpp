#pragma once

#include <stdexcept>
#include <string>

namespace leechcert {

// Every failure raised by the library derives from Error so the CLI can map
// it to an exit code.  Resource exhaustion is kept apart from certification
// failures and malformed input.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};
struct ResourceLimit : Error {
  using Error::Error;
};
struct CertificationFailed : Error {
  using Error::Error;
};

struct DomainError : InputError {
  using InputError::InputError;
};
struct FormatError : InputError {
  using InputError::InputError;
};
struct PreconditionViolation : InputError {
  using InputError::InputError;
};
struct EndpointRootError : InputError {
  using InputError::InputError;
};
struct NotSquarefreeError : InputError {
  using InputError::InputError;
};
struct SigmaTooLarge : InputError {
  using InputError::InputError;
};
struct MissingSchemeFact : InputError {
  using InputError::InputError;
};
struct MissingWitness : InputError {
  using InputError::InputError;
};
struct SingularSystem : CertificationFailed {
  using CertificationFailed::CertificationFailed;
};
struct SingularBasis : CertificationFailed {
  using CertificationFailed::CertificationFailed;
};
struct Infeasible : CertificationFailed {
  using CertificationFailed::CertificationFailed;
};
struct NoProgress : CertificationFailed {
  using CertificationFailed::CertificationFailed;
};
struct BoundTooLarge : ResourceLimit {
  using ResourceLimit::ResourceLimit;
};
struct TooManyMinors : ResourceLimit {
  using ResourceLimit::ResourceLimit;
};

struct SignViolation : CertificationFailed {
  std::string side;
  std::string witness;
  SignViolation(std::string side_, std::string witness_)
      : CertificationFailed("sign violation on " + side_ + " side near " + witness_),
        side(std::move(side_)), witness(std::move(witness_)) {}
};

struct NormalizationError : CertificationFailed {
  using CertificationFailed::CertificationFailed;
};

struct BudgetViolation : CertificationFailed {
  std::string interval;
  explicit BudgetViolation(std::string interval_)
      : CertificationFailed("length-exclusion budget fails on " + interval_),
        interval(std::move(interval_)) {}
};

struct ExpansionNegative : CertificationFailed {
  int index;
  explicit ExpansionNegative(int i)
      : CertificationFailed("ultraspherical coefficient " + std::to_string(i) + " is negative"),
        index(i) {}
};

struct NonpositiveCoefficient : CertificationFailed {
  int index;
  explicit NonpositiveCoefficient(int i)
      : CertificationFailed("normalized coefficient " + std::to_string(i) + " is not positive"),
        index(i) {}
};

struct UnclassifiablePair : CertificationFailed {
  std::size_t i, j;
  std::string value;
  UnclassifiablePair(std::size_t i_, std::size_t j_, std::string v)
      : CertificationFailed("pair (" + std::to_string(i_) + "," + std::to_string(j_) +
                            ") has inner product " + v + " outside every label"),
        i(i_), j(j_), value(std::move(v)) {}
};

struct NotAScheme : CertificationFailed {
  std::size_t x, y;
  NotAScheme(std::size_t x_, std::size_t y_, const std::string& what)
      : CertificationFailed("base pair (" + std::to_string(x_) + "," + std::to_string(y_) +
                            ") disagrees: " + what),
        x(x_), y(y_) {}
};

}  // namespace leechcert
