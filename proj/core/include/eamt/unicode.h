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

#ifndef EAMT_UNICODE_H_
#define EAMT_UNICODE_H_

#include <string>
#include <string_view>

namespace eamt {

// Matching normal form: Unicode NFKC, full case folding, every run of
// whitespace collapsed to a single U+0020, leading/trailing space trimmed.
// Idempotent. Invalid UTF-8 sequences become U+FFFD.
std::string NormalizeForMatch(std::string_view utf8);

// Decodes UTF-8 into code points; invalid sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view utf8);

std::string EncodeUtf8(std::u32string_view text);

// Unicode White_Space property.
bool IsUnicodeWhitespace(char32_t c);

}  // namespace eamt

#endif  // EAMT_UNICODE_H_
