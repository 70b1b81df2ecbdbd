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

"""Checks a delta-tilde table against the published schema.

Also checks that the schema rejects malformed variants of the table.
"""

import argparse
import copy
import json
import sys

import jsonschema


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--schema", required=True)
    parser.add_argument("--table", required=True)
    args = parser.parse_args()

    with open(args.schema, encoding="utf-8") as f:
        schema = json.load(f)
    with open(args.table, encoding="utf-8") as f:
        table = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    validator.check_schema(schema)

    errors = sorted(validator.iter_errors(table), key=str)
    for e in errors:
        print(f"FAIL table: {e.message}")

    mutants = {}
    mutants["missing meta"] = {k: v for k, v in table.items() if k != "meta"}
    m = copy.deepcopy(table)
    del m["meta"]["solver_tol"]
    mutants["missing solver_tol"] = m
    m = copy.deepcopy(table)
    m["grid"][0]["delta_tilde"] = 1.5
    mutants["delta_tilde above 1"] = m
    m = copy.deepcopy(table)
    m["grid"][0]["extra"] = 0
    mutants["unknown grid key"] = m
    m = copy.deepcopy(table)
    m["grid"] = []
    mutants["empty grid"] = m
    m = copy.deepcopy(table)
    m["meta"]["npa_level"] = 1.5
    mutants["fractional npa_level"] = m
    accepted = [name for name, doc in mutants.items() if validator.is_valid(doc)]
    for name in accepted:
        print(f"FAIL schema accepts a table with {name}")

    if errors or accepted:
        return 1
    print(f"ok  {args.table}: {len(table['grid'])} grid points, {len(mutants)} malformed variants rejected")
    return 0


if __name__ == "__main__":
    sys.exit(main())
