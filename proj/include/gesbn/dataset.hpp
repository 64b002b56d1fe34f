#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gesbn/variable_spec.hpp"

namespace gesbn {

using StateMatrix = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;

/// m records of integer-coded categorical observations, one column per variable.
class CategoricalDataset {
 public:
  CategoricalDataset() = default;
  /// Throws FormatError when a value falls outside [0, card).
  CategoricalDataset(VariableSpec spec, StateMatrix records);

  const VariableSpec& spec() const { return spec_; }
  const StateMatrix& records() const { return records_; }
  Eigen::Index rows() const { return records_.rows(); }
  int size() const { return spec_.size(); }

  /// Keeps the listed columns, in order.
  CategoricalDataset project(const std::vector<int>& vars) const;

  friend bool operator==(const CategoricalDataset& a, const CategoricalDataset& b) {
    return a.spec_ == b.spec_ && a.records_.rows() == b.records_.rows() &&
           a.records_.cols() == b.records_.cols() && a.records_ == b.records_;
  }

 private:
  VariableSpec spec_;
  StateMatrix records_;
};

}  // namespace gesbn
