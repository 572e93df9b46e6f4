// Copyright 2026 The wPINQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WPINQ_CORE_REAL_FORMAT_H_
#define WPINQ_CORE_REAL_FORMAT_H_

#include <string>

namespace wpinq {

// `v` with 17 significant digits (%.17g), enough to round-trip a double.
std::string FormatReal(double v);

}  // namespace wpinq

#endif  // WPINQ_CORE_REAL_FORMAT_H_
