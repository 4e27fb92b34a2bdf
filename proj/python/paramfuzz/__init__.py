# Copyright 2026 The paramfuzz Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Parametric generators, coverage-guided search and campaign tooling."""

import json

from paramfuzz._paramfuzz import (
    ConfigError,
    default_generator,
    execute,
    generate,
    mutate,
    planted_bugs,
    replay,
    report,
    run_campaign,
    target_names,
)

__all__ = [
    "ConfigError",
    "default_generator",
    "execute",
    "generate",
    "mutate",
    "planted_bugs",
    "replay",
    "report",
    "run",
    "run_campaign",
    "target_names",
]


def run(**config):
    """Runs one campaign; keyword names follow the JSON config keys."""
    return run_campaign(json.dumps(config))
