#include "gesbn/dataset.hpp"

#include <string>

#include "gesbn/errors.hpp"

namespace gesbn {

CategoricalDataset::CategoricalDataset(VariableSpec spec, StateMatrix records)
    : spec_(std::move(spec)), records_(std::move(records)) {
  if (records_.cols() != spec_.size()) throw FormatError("dataset column count does not match spec");
  for (Eigen::Index j = 0; j < records_.cols(); ++j) {
    const auto col = records_.col(j);
    if (col.size() == 0) continue;
    if (col.minCoeff() < 0 || col.maxCoeff() >= spec_.card(static_cast<int>(j))) {
      throw FormatError("values of '" + spec_.name(static_cast<int>(j)) + "' outside [0, " +
                        std::to_string(spec_.card(static_cast<int>(j))) + ")");
    }
  }
}

CategoricalDataset CategoricalDataset::project(const std::vector<int>& vars) const {
  StateMatrix out(records_.rows(), static_cast<Eigen::Index>(vars.size()));
  for (std::size_t j = 0; j < vars.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = records_.col(vars[j]);
  return CategoricalDataset(spec_.subset(vars), std::move(out));
}

}  // namespace gesbn
