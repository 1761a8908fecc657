// Copyright 2026 The eamt Authors
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

#ifndef EAMT_SRC_URL_H_
#define EAMT_SRC_URL_H_

#include <string>
#include <string_view>

namespace eamt::internal {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // starts with '/'
};

// Throws Error(kConfig) for anything that is not http(s)://host[:port][/path].
ParsedUrl ParseUrl(std::string_view url);

std::string PercentEncode(std::string_view text);

}  // namespace eamt::internal

#endif  // EAMT_SRC_URL_H_
