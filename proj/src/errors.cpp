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

#include "spintomo/errors.hpp"

namespace spintomo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Spec: return "SpecError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Eigen: return "EigenError";
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::Normalization: return "NormalizationError";
    case ErrorKind::InsufficientChain: return "InsufficientChain";
    case ErrorKind::Inversion: return "InversionError";
    case ErrorKind::Degenerate: return "DegenerateError";
    case ErrorKind::Resolution: return "ResolutionError";
    case ErrorKind::Convergence: return "ConvergenceError";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
  }
  return "Error";
}

InversionError::InversionError(std::size_t link, double radicand)
    : Error(ErrorKind::Inversion,
            "negative squared coupling " + std::to_string(radicand) +
                " at link " + std::to_string(link)),
      link_(link),
      radicand_(radicand) {}

DegenerateError::DegenerateError(std::size_t link, double slope)
    : Error(ErrorKind::Degenerate,
            "Taylor coefficient " + std::to_string(link) +
                " is insensitive to its link (slope " + std::to_string(slope) +
                "); an upstream link was estimated as zero"),
      link_(link) {}

}  // namespace spintomo
