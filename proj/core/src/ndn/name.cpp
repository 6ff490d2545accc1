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

#include "icdn/ndn/name.hpp"

#include <algorithm>
#include <charconv>

namespace icdn::ndn {
namespace {

void
check_component(const Name::Component& c)
{
  if (c.empty()) {
    throw MalformedUri("empty name component");
  }
  if (c.size() > Name::max_component_size) {
    throw MalformedUri("name component longer than 255 bytes");
  }
}

bool
is_literal(unsigned char c)
{
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
    return true;
  }
  switch (c) {
    case '-': case '.': case '_': case '~': case '=': case '+': case ',': case ':': case '@':
      return true;
    default:
      return false;
  }
}

int
hex_value(char c)
{
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

} // namespace

Name::Name(std::vector<Component> components)
  : m_components(std::move(components))
{
  if (m_components.size() > max_components) {
    throw MalformedUri("name has more than 32 components");
  }
  std::for_each(m_components.begin(), m_components.end(), check_component);
}

Name
Name::parse(std::string_view uri)
{
  if (uri.empty() || uri.front() != '/') {
    throw MalformedUri("name URI must begin with '/'");
  }
  Name name;
  if (uri.size() == 1) {
    return name;
  }

  std::string_view rest = uri.substr(1);
  while (true) {
    auto slash = rest.find('/');
    std::string_view raw = rest.substr(0, slash);
    if (raw.empty()) {
      throw MalformedUri("empty name component in '" + std::string(uri) + "'");
    }

    Component decoded;
    decoded.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '%') {
        decoded.push_back(raw[i]);
        continue;
      }
      if (i + 2 >= raw.size()) {
        throw MalformedUri("truncated percent escape");
      }
      int hi = hex_value(raw[i + 1]);
      int lo = hex_value(raw[i + 2]);
      if (hi < 0 || lo < 0) {
        throw MalformedUri("bad percent escape");
      }
      decoded.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    }
    name.append(std::move(decoded));

    if (slash == std::string_view::npos) {
      break;
    }
    rest = rest.substr(slash + 1);
    if (rest.empty()) {
      // trailing slash is an empty final component
      throw MalformedUri("empty name component in '" + std::string(uri) + "'");
    }
  }
  return name;
}

std::string
Name::to_uri() const
{
  if (m_components.empty()) {
    return "/";
  }
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (const auto& c : m_components) {
    out.push_back('/');
    for (unsigned char b : c) {
      if (is_literal(b)) {
        out.push_back(static_cast<char>(b));
      }
      else {
        out.push_back('%');
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0x0F]);
      }
    }
  }
  return out;
}

bool
Name::is_prefix_of(const Name& other) const noexcept
{
  if (m_components.size() > other.m_components.size()) {
    return false;
  }
  return std::equal(m_components.begin(), m_components.end(), other.m_components.begin());
}

Name&
Name::append(Component component)
{
  check_component(component);
  if (m_components.size() >= max_components) {
    throw MalformedUri("name has more than 32 components");
  }
  m_components.push_back(std::move(component));
  return *this;
}

Name
Name::appended(Component component) const
{
  Name copy = *this;
  copy.append(std::move(component));
  return copy;
}

Name
Name::prefix(std::size_t n) const
{
  Name out;
  out.m_components.assign(m_components.begin(),
                          m_components.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
  return out;
}

Name
Name::segment(std::uint32_t n) const
{
  return appended("seg=" + std::to_string(n));
}

std::optional<std::uint32_t>
Name::segment_number() const
{
  if (m_components.empty()) {
    return std::nullopt;
  }
  return parse_segment_component(m_components.back());
}

std::optional<std::uint32_t>
parse_segment_component(std::string_view component) noexcept
{
  constexpr std::string_view tag = "seg=";
  if (component.size() <= tag.size() || component.substr(0, tag.size()) != tag) {
    return std::nullopt;
  }
  std::string_view digits = component.substr(tag.size());
  if (digits.size() > 1 && digits.front() == '0') {
    return std::nullopt;
  }
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return value;
}

std::size_t
NameHash::operator()(const Name& name) const noexcept
{
  // FNV-1a over length-prefixed components
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (const auto& c : name.components()) {
    mix(static_cast<unsigned char>(c.size()));
    for (unsigned char b : c) {
      mix(b);
    }
  }
  return static_cast<std::size_t>(h);
}

} // namespace icdn::ndn
