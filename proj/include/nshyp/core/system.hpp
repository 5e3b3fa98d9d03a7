#pragma once

#include <optional>
#include <string>

#include "nshyp/numkit/types.hpp"

namespace nshyp {

/// One instance of V_t + V_1 V_x = Q V (+ B V_xx): the coupling matrix Q,
/// an optional constant diffusion matrix B, and a label. Immutable.
class SystemSpec {
 public:
  explicit SystemSpec(Matrix Q, std::optional<Matrix> B = std::nullopt,
                      std::string label = {});

  int dim() const { return static_cast<int>(Q_.rows()); }
  const Matrix& Q() const { return Q_; }
  const std::optional<Matrix>& B() const { return B_; }
  const std::string& label() const { return label_; }

  // The same system with B dropped.
  SystemSpec inviscid() const { return SystemSpec(Q_, std::nullopt, label_); }

 private:
  Matrix Q_;
  std::optional<Matrix> B_;
  std::string label_;
};

}  // namespace nshyp
