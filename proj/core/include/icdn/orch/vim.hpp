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

#ifndef ICDN_ORCH_VIM_HPP
#define ICDN_ORCH_VIM_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace icdn::orch {

struct Resources
{
  std::uint32_t vcpus = 0;
  std::uint32_t ram_mb = 0;
  std::uint32_t disk_gb = 0;

  bool covers(const Resources& r) const noexcept
  {
    return vcpus >= r.vcpus && ram_mb >= r.ram_mb && disk_gb >= r.disk_gb;
  }

  friend bool operator==(const Resources&, const Resources&) = default;
};

/// VM size; every field must be at least 1.
using Flavor = Resources;

inline bool
valid_flavor(const Flavor& f) noexcept
{
  return f.vcpus >= 1 && f.ram_mb >= 1 && f.disk_gb >= 1;
}

struct DomainSpec
{
  std::string name;
  std::string region;
  Resources quota;
};

class QuotaExceeded : public std::runtime_error
{
public:
  QuotaExceeded(std::string domain, const std::string& what)
    : std::runtime_error(what)
    , m_domain(std::move(domain))
  {}

  const std::string& domain() const noexcept { return m_domain; }

private:
  std::string m_domain;
};

class UnknownDomain : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

struct Allocation
{
  std::uint64_t id = 0;
  std::string domain;
  Flavor flavor;
};

/// Resource accounting for one infrastructure domain.
class Vim
{
public:
  explicit Vim(DomainSpec spec);

  /// Takes @p flavor out of the remaining quota; throws QuotaExceeded if it does not fit.
  Allocation allocate(const Flavor& flavor);

  /// Returns an allocation's resources. Releasing twice is an error.
  void release(const Allocation& allocation);

  const DomainSpec& spec() const noexcept { return m_spec; }
  const Resources& quota() const noexcept { return m_spec.quota; }
  const Resources& remaining() const noexcept { return m_remaining; }

  /// Sum of live allocations.
  Resources allocated() const noexcept;
  std::size_t live() const noexcept { return m_live.size(); }

private:
  DomainSpec m_spec;
  Resources m_remaining;
  std::map<std::uint64_t, Flavor> m_live;
  std::uint64_t m_next = 1;
};

} // namespace icdn::orch

#endif // ICDN_ORCH_VIM_HPP
