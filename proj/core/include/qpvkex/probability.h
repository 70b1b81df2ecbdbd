/*
 * Copyright 2026 The qpvkex Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QPVKEX_PROBABILITY_H_
#define QPVKEX_PROBABILITY_H_

#include <algorithm>

namespace qpvkex {

// A bound as given by its formula together with its value clipped to [0,1].
struct BoundValue {
  double raw = 0.0;
  double value = 0.0;
};

inline BoundValue MakeBound(double raw) {
  return BoundValue{raw, std::clamp(raw, 0.0, 1.0)};
}

}  // namespace qpvkex

#endif  // QPVKEX_PROBABILITY_H_
