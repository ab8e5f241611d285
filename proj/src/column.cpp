#include "monodep/column.hpp"

#include <cmath>
#include <utility>

namespace monodep {

DataColumn::DataColumn(std::vector<double> values, std::string name)
    : values_(std::move(values)), name_(std::move(name)) {
  if (values_.size() < 2) {
    throw ValidationError("column '" + name_ + "': need at least 2 observations, got " +
                          std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("column '" + name_ + "': non-finite value at row " +
                            std::to_string(i));
    }
  }
}

bool DataColumn::degenerate() const {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] != values_[0]) return false;
  }
  return true;
}

PairedSample::PairedSample(DataColumn outcome, std::vector<DataColumn> predictors)
    : outcome_(std::move(outcome)), predictors_(std::move(predictors)) {
  if (predictors_.empty()) {
    throw ValidationError("paired sample: need at least one predictor column");
  }
  for (const DataColumn& p : predictors_) {
    if (p.size() != outcome_.size()) {
      throw ValidationError("paired sample: predictor '" + p.name() + "' has length " +
                            std::to_string(p.size()) + ", outcome has length " +
                            std::to_string(outcome_.size()));
    }
  }
  if (outcome_.degenerate()) {
    throw DegenerateOutcome("outcome column '" + outcome_.name() + "' is constant");
  }
}

}  // namespace monodep
