// SPDX-License-Identifier: Apache-2.0
//
// mucap: MU-MIMO ergodic sum-rate capacity simulation and analysis
// Copyright (C) 2026 The mucap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MUCAP_ERROR_HPP
#define MUCAP_ERROR_HPP

#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mucap {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite intermediate or a numerical routine that did not converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Operands whose dimensions do not agree.
class ShapeError : public Error {
 public:
  ShapeError(const std::string& what, std::size_t expected, std::size_t actual)
      : Error(what + " (expected " + std::to_string(expected) + ", got " + std::to_string(actual) + ")"),
        expected_(expected),
        actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// A correlation matrix with an eigenvalue below -tol.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& what, double min_eig) : Error(what), min_eig_(min_eig) {}
  double min_eig() const noexcept { return min_eig_; }

 private:
  double min_eig_;
};

// Gram matrix H*H too ill-conditioned for zero-forcing.
class SingularChannelError : public Error {
 public:
  SingularChannelError(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

// Monte Carlo run abandoned because too many trials were singular.
class MonteCarloAbort : public Error {
 public:
  MonteCarloAbort(const std::string& what, std::size_t singular, std::size_t trials)
      : Error(what), singular_(singular), trials_(trials) {}
  std::size_t singular_trials() const noexcept { return singular_; }
  std::size_t trials() const noexcept { return trials_; }

 private:
  std::size_t singular_;
  std::size_t trials_;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class BinningError : public Error {
 public:
  using Error::Error;
};

// Laplace inversion hit a non-finite transform value.
class InversionError : public Error {
 public:
  InversionError(const std::string& what, std::complex<double> node) : Error(describe(what, node)), node_(node) {}
  std::complex<double> node() const noexcept { return node_; }

 private:
  static std::string describe(const std::string& what, std::complex<double> node) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at node s = " << node.real() << (node.imag() < 0 ? " - " : " + ") << std::abs(node.imag()) << "i";
    return os.str();
  }
  std::complex<double> node_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mucap

#endif  // MUCAP_ERROR_HPP
