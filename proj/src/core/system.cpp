#include "nshyp/core/system.hpp"

#include <utility>

#include "nshyp/errors.hpp"

namespace nshyp {

SystemSpec::SystemSpec(Matrix Q, std::optional<Matrix> B, std::string label)
    : Q_(std::move(Q)), B_(std::move(B)), label_(std::move(label)) {
  if (Q_.rows() == 0 || Q_.rows() != Q_.cols())
    throw DomainError("SystemSpec: Q must be a non-empty square matrix");
  if (!Q_.allFinite()) throw DomainError("SystemSpec: Q has non-finite entries");
  if (B_) {
    if (B_->rows() != Q_.rows() || B_->cols() != Q_.cols())
      throw DomainError("SystemSpec: B must have the same shape as Q");
    if (!B_->allFinite())
      throw DomainError("SystemSpec: B has non-finite entries");
  }
}

}  // namespace nshyp
