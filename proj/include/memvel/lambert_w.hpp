// Copyright 2026 The memvel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace memvel {

/// Principal branch W0 of the Lambert-W function on [-1/e, inf).
///
/// Halley iteration seeded by the branch-point series for x < -0.25 and by a
/// logarithmic guess elsewhere. Iterates until |w e^w - x| <= 1e-13 max(1,|x|)
/// and the Halley step has stalled. W0(-1/e) = -1 and W0(0) = 0 exactly.
/// Throws std::domain_error for x < -1/e or NaN.
double lambert_w0(double x);

}  // namespace memvel
