/* Copyright 2026 The spintomo Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SPINTOMO_ERRORS_HPP
#define SPINTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace spintomo {

enum class ErrorKind {
  Spec,
  Io,
  Eigen,
  Overflow,
  CapExceeded,
  Normalization,
  InsufficientChain,
  Inversion,
  Degenerate,
  Resolution,
  Convergence,
  ShapeMismatch,
};

const char* to_string(ErrorKind kind);

// Base of every error raised by the library. The kind maps one-to-one onto
// the C API status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

  // Pipeline stage that raised the error ("simulate", "fit", "invert", ...);
  // empty outside run_tomography.
  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& what) : Error(ErrorKind::Spec, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class EigenError : public Error {
 public:
  explicit EigenError(const std::string& what) : Error(ErrorKind::Eigen, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what)
      : Error(ErrorKind::Overflow, what) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what)
      : Error(ErrorKind::CapExceeded, what) {}
};

class NormalizationError : public Error {
 public:
  explicit NormalizationError(const std::string& what)
      : Error(ErrorKind::Normalization, what) {}
};

class InsufficientChain : public Error {
 public:
  explicit InsufficientChain(const std::string& what)
      : Error(ErrorKind::InsufficientChain, what) {}
};

class InversionError : public Error {
 public:
  InversionError(std::size_t link, double radicand);
  std::size_t link() const noexcept { return link_; }
  double radicand() const noexcept { return radicand_; }

 private:
  std::size_t link_;
  double radicand_;
};

class DegenerateError : public Error {
 public:
  DegenerateError(std::size_t link, double slope);
  std::size_t link() const noexcept { return link_; }

 private:
  std::size_t link_;
};

class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what)
      : Error(ErrorKind::Resolution, what) {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string& what)
      : Error(ErrorKind::ShapeMismatch, what) {}
};

// ConvergenceError lives in fitting.hpp because it carries a CosineSumModel.

}  // namespace spintomo

#endif  // SPINTOMO_ERRORS_HPP
