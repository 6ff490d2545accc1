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

#include "icdn/orch/vim.hpp"

#include <fmt/format.h>

namespace icdn::orch {

Vim::Vim(DomainSpec spec)
  : m_spec(std::move(spec))
  , m_remaining(m_spec.quota)
{
}

Allocation
Vim::allocate(const Flavor& flavor)
{
  if (!valid_flavor(flavor)) {
    throw std::invalid_argument("flavor fields must all be at least 1");
  }
  if (!m_remaining.covers(flavor)) {
    throw QuotaExceeded(m_spec.name,
                        fmt::format("domain '{}' cannot host {} vcpu / {} MB / {} GB "
                                    "(remaining {} / {} / {})",
                                    m_spec.name, flavor.vcpus, flavor.ram_mb, flavor.disk_gb,
                                    m_remaining.vcpus, m_remaining.ram_mb, m_remaining.disk_gb));
  }
  m_remaining.vcpus -= flavor.vcpus;
  m_remaining.ram_mb -= flavor.ram_mb;
  m_remaining.disk_gb -= flavor.disk_gb;
  Allocation a{m_next++, m_spec.name, flavor};
  m_live.emplace(a.id, flavor);
  return a;
}

void
Vim::release(const Allocation& allocation)
{
  auto it = m_live.find(allocation.id);
  if (allocation.domain != m_spec.name || it == m_live.end()) {
    throw std::invalid_argument(fmt::format("allocation {} is not live in domain '{}'",
                                            allocation.id, m_spec.name));
  }
  m_remaining.vcpus += it->second.vcpus;
  m_remaining.ram_mb += it->second.ram_mb;
  m_remaining.disk_gb += it->second.disk_gb;
  m_live.erase(it);
}

Resources
Vim::allocated() const noexcept
{
  Resources sum;
  for (const auto& [id, f] : m_live) {
    sum.vcpus += f.vcpus;
    sum.ram_mb += f.ram_mb;
    sum.disk_gb += f.disk_gb;
  }
  return sum;
}

} // namespace icdn::orch
