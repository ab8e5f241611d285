#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "monodep/errors.hpp"

namespace monodep {

// A validated column of finite reals, length >= 2.
class DataColumn {
 public:
  explicit DataColumn(std::vector<double> values, std::string name = "");

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  const std::string& name() const { return name_; }

  bool degenerate() const;  // all values equal

 private:
  std::vector<double> values_;
  std::string name_;
};

// Outcome plus m >= 1 predictor columns of equal length.
// Construction rejects a degenerate outcome: every measure and every test in
// this library divides by an outcome grade variance.
class PairedSample {
 public:
  PairedSample(DataColumn outcome, std::vector<DataColumn> predictors);

  const DataColumn& outcome() const { return outcome_; }
  const std::vector<DataColumn>& predictors() const { return predictors_; }
  const DataColumn& predictor(std::size_t k) const { return predictors_[k]; }
  std::size_t n() const { return outcome_.size(); }
  std::size_t m() const { return predictors_.size(); }

 private:
  DataColumn outcome_;
  std::vector<DataColumn> predictors_;
};

}  // namespace monodep
