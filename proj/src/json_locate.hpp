// Copyright 2026 The vnf-placer Authors
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

#ifndef VNFP_SRC_JSON_LOCATE_HPP
#define VNFP_SRC_JSON_LOCATE_HPP

#include <cstddef>
#include <string_view>

namespace vnfp::detail {

/// 1-based line on which the value addressed by `pointer` (RFC 6901) starts
/// in `text`, or 0 if it cannot be found. `text` must be syntactically valid
/// JSON; only used to decorate error messages.
std::size_t line_of_pointer(std::string_view text, std::string_view pointer);

}  // namespace vnfp::detail

#endif  // VNFP_SRC_JSON_LOCATE_HPP
