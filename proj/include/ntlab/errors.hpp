// Copyright 2026-present the normtrace-lab project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace ntlab {

/// A run would exceed the documented compute budget and no sampling mode was
/// requested. Mapped to CLI exit code 3.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computation contradicted a structural fact the pipeline relies on — a
/// mathematical finding (refutation) or a bug. Mapped to CLI exit code 4.
struct MathFinding : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ntlab
