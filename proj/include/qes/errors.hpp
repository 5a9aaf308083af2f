#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qes {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error object.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept = 0;
};

#define QES_DEFINE_ERROR(Name, tag)                                  \
  class Name final : public Error {                                  \
   public:                                                           \
    using Error::Error;                                              \
    std::string_view kind() const noexcept override { return tag; }  \
  }

QES_DEFINE_ERROR(ArithmeticError, "arithmetic");
QES_DEFINE_ERROR(LatticeError, "lattice");
QES_DEFINE_ERROR(DomainError, "domain");
QES_DEFINE_ERROR(NotARootError, "not_a_root");
QES_DEFINE_ERROR(RankAnomalyError, "rank_anomaly");
QES_DEFINE_ERROR(DegenerateOverlapError, "degenerate_overlap");
QES_DEFINE_ERROR(InconsistencyError, "internal_inconsistency");
QES_DEFINE_ERROR(SingularJacobianError, "singular_jacobian");
QES_DEFINE_ERROR(UsageError, "usage");

#undef QES_DEFINE_ERROR

}  // namespace qes
