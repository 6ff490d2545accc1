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

#ifndef ICDN_NDN_NAME_HPP
#define ICDN_NDN_NAME_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icdn::ndn {

/// Raised by Name::parse and by component-level validation.
class MalformedUri : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * @brief Hierarchical content name.
 *
 * Components are opaque byte strings of 1..255 bytes; a name holds at most
 * 32 of them. The URI form percent-encodes every byte outside the unreserved
 * set, so arbitrary binary components round-trip through text.
 */
class Name
{
public:
  using Component = std::string;

  static constexpr std::size_t max_components = 32;
  static constexpr std::size_t max_component_size = 255;

  Name() = default;

  /// Builds a name from raw components; throws MalformedUri on a size violation.
  explicit Name(std::vector<Component> components);

  /// Parses "/a/b/c" (with %XX escapes) into a name.
  static Name parse(std::string_view uri);

  std::string to_uri() const;

  const std::vector<Component>& components() const noexcept { return m_components; }
  std::size_t size() const noexcept { return m_components.size(); }
  bool empty() const noexcept { return m_components.empty(); }
  const Component& operator[](std::size_t i) const { return m_components[i]; }

  /// True when this name's components are a leading sublist of @p other's.
  bool is_prefix_of(const Name& other) const noexcept;

  Name& append(Component component);
  Name appended(Component component) const;

  /// The first @p n components.
  Name prefix(std::size_t n) const;

  /// Name with "seg=<n>" appended.
  Name segment(std::uint32_t n) const;

  /// Segment number carried by the last component, if it has the exact "seg=<n>" form.
  std::optional<std::uint32_t> segment_number() const;

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) noexcept
  {
    return a.m_components <=> b.m_components;
  }

private:
  std::vector<Component> m_components;
};

inline bool
name_is_prefix(const Name& prefix, const Name& name) noexcept
{
  return prefix.is_prefix_of(name);
}

inline Name
segment_name(const Name& base, std::uint32_t n)
{
  return base.segment(n);
}

/// Parses a "seg=<n>" component; rejects leading zeros and out-of-range values.
std::optional<std::uint32_t> parse_segment_component(std::string_view component) noexcept;

struct NameHash
{
  std::size_t operator()(const Name& name) const noexcept;
};

} // namespace icdn::ndn

#endif // ICDN_NDN_NAME_HPP
