// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace edlab
{

using Complex = std::complex<double>;

/// Dense square operator: a real-space or Bloch Hamiltonian.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// The two coupled chains. Storage is chain-major: every chain-A site first.
enum class Chain
{
  A,
  B
};

inline Chain other(Chain c) { return c == Chain::A ? Chain::B : Chain::A; }
inline const char *to_string(Chain c) { return c == Chain::A ? "A" : "B"; }

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error
{
public:
  using Error::Error;
};

}  // namespace edlab
