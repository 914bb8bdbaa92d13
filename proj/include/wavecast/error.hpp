#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wavecast {

/// Requested a wavelet number outside the embedded Daubechies family.
class UnsupportedWavelet : public std::invalid_argument {
 public:
  explicit UnsupportedWavelet(int number);
  int number() const noexcept { return number_; }

 private:
  int number_;
};

/// A NaN or infinity reached an operation that requires finite data.
class NonFiniteInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A transform configuration whose history buffers would exceed the budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t required, std::size_t budget);
  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

/// Series too short for the requested lags/horizon/split.
class InsufficientData : public std::invalid_argument {
 public:
  InsufficientData(const std::string& what, std::size_t minimum);
  std::size_t minimum() const noexcept { return minimum_; }

 private:
  std::size_t minimum_;
};

/// Malformed CSV input; line numbers are 1-based and count the header.
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wavecast
