// Copyright 2026 The paramfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runtime-error helpers for target code. They raise TargetFault, which the
// harness reports as FAILURE, with Java-style error names so failure keys
// read like the exceptions a JVM program would throw.

#ifndef PARAMFUZZ_SRC_TARGETS_FAULTS_H_
#define PARAMFUZZ_SRC_TARGETS_FAULTS_H_

#include <string>

#include "paramfuzz/target.h"

namespace paramfuzz::internal {

[[noreturn]] inline void Fault(std::string type, std::string message, std::string location) {
  throw TargetFault(std::move(type), std::move(message), std::move(location));
}

// Dereference that reports a null pointer the way a managed runtime would.
template <typename T>
T& Deref(T* ptr, const char* location) {
  if (ptr == nullptr) Fault("NullPointerException", "null dereference", location);
  return *ptr;
}

}  // namespace paramfuzz::internal

#endif  // PARAMFUZZ_SRC_TARGETS_FAULTS_H_
