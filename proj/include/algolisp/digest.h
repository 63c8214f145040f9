// Copyright 2026 The AlgoLisp Toolkit Authors
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
//

#ifndef ALGOLISP_DIGEST_H_
#define ALGOLISP_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace algolisp {

// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view data);

// Throws Error(kIoError) if the file cannot be read.
std::string FileSha256Hex(const std::string& path);

// Stable 64-bit seed derived from a root seed and a list of labels (an
// instance id, an attack class...). Independent of platform and run.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view a,
                         std::string_view b = {});

}  // namespace algolisp

#endif  // ALGOLISP_DIGEST_H_
