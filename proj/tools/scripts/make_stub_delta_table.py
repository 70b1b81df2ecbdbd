#!/usr/bin/env python3
# Copyright 2026 The qpvkex Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the analytic placeholder delta-tilde table shipped in data/.

The values are a closed-form stand-in with the right qualitative shape
(1/sqrt(2) at zero error, nonincreasing in eps_tilde). They are not solver
output; regenerate the table with the SDP tooling for real bounds.
"""

import argparse
import json
import math


def stub_delta(eps_tilde: float, eta_tilde: float) -> float:
    scale = 0.1 + 0.2 * eta_tilde
    return max(0.0, (1.0 / math.sqrt(2.0)) * (1.0 - eps_tilde / scale))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output")
    args = parser.parse_args()
    grid = []
    for i in range(51):
        eps = round(0.01 * i, 10)
        for j in range(21):
            eta = round(0.05 * j, 10)
            grid.append({"eps_tilde": eps, "eta_tilde": eta,
                         "delta_tilde": round(stub_delta(eps, eta), 15)})
    table = {
        "meta": {
            "npa_level": 0,
            "solver_tol": 0.0,
            "generator": "analytic-stub: max(0, (1/sqrt 2)(1 - eps/(0.1 + 0.2 eta))), not solver output",
        },
        "grid": grid,
    }
    with open(args.output, "w", encoding="utf-8") as f:
        json.dump(table, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
