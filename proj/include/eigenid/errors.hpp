#pragma once

#include <stdexcept>
#include <string>

namespace eigenid {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotSquare : public Error {
 public:
  explicit NotSquare(const std::string& msg) : Error(msg) {}
};

class NotHermitian : public Error {
 public:
  NotHermitian(double defect_, const std::string& msg) : Error(msg), defect(defect_) {}
  double defect;
};

class NonFinite : public Error {
 public:
  explicit NonFinite(const std::string& msg) : Error(msg) {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

class SizeMismatch : public Error {
 public:
  explicit SizeMismatch(const std::string& msg) : Error(msg) {}
};

class SubsetSizeMismatch : public Error {
 public:
  explicit SubsetSizeMismatch(const std::string& msg) : Error(msg) {}
};

class NoConvergence : public Error {
 public:
  NoConvergence(double off_diag_norm_, const std::string& msg)
      : Error(msg), off_diag_norm(off_diag_norm_) {}
  double off_diag_norm;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

class NotUnitary : public Error {
 public:
  NotUnitary(double defect_, const std::string& msg) : Error(msg), defect(defect_) {}
  double defect;
};

class MultiplicityNotOne : public Error {
 public:
  explicit MultiplicityNotOne(const std::string& msg) : Error(msg) {}
};

class DegenerateDenominator : public Error {
 public:
  explicit DegenerateDenominator(const std::string& msg) : Error(msg) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& msg) : Error(msg) {}
};

// A spectral-side value materially below zero: the exact value is a squared
// determinant, so this signals a broken clustering or decomposition rather
// than roundoff, and must not be reported as a number.
class NegativeRhs : public Error {
 public:
  NegativeRhs(double value_, const std::string& msg) : Error(msg), value(value_) {}
  double value;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace eigenid
