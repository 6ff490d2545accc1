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

#ifndef ICDN_UTIL_STRONG_ID_HPP
#define ICDN_UTIL_STRONG_ID_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace icdn {

/// Integer identifier that does not convert implicitly to other identifiers.
template<typename Tag, typename Rep = std::uint32_t>
struct StrongId
{
  Rep value{};

  constexpr StrongId() = default;
  constexpr explicit StrongId(Rep v)
    : value(v)
  {}

  friend constexpr bool operator==(StrongId, StrongId) = default;
  friend constexpr auto operator<=>(StrongId, StrongId) = default;

  friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

/// Simulated time in milliseconds.
using SimTime = double;

} // namespace icdn

template<typename Tag, typename Rep>
struct std::hash<icdn::StrongId<Tag, Rep>>
{
  std::size_t operator()(icdn::StrongId<Tag, Rep> id) const noexcept { return std::hash<Rep>{}(id.value); }
};

#endif // ICDN_UTIL_STRONG_ID_HPP
