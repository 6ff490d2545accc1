// Copyright 2026 The icdn Authors
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

#ifndef ICDN_NDN_DIGEST_HPP
#define ICDN_NDN_DIGEST_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace icdn::ndn {

/// SHA-256 of a payload.
using Digest = std::array<std::uint8_t, 32>;

Digest compute_digest(std::span<const std::uint8_t> payload);

/// Incremental SHA-256 for callers hashing several pieces.
class DigestBuilder
{
public:
  DigestBuilder();
  ~DigestBuilder();
  DigestBuilder(const DigestBuilder&) = delete;
  DigestBuilder& operator=(const DigestBuilder&) = delete;

  DigestBuilder& update(std::span<const std::uint8_t> bytes);
  DigestBuilder& update(std::string_view text);
  Digest finish();

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

std::string to_hex(const Digest& d);

} // namespace icdn::ndn

#endif // ICDN_NDN_DIGEST_HPP
