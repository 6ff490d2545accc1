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

#include "icdn/sim/message.hpp"

#include "icdn/ndn/tlv.hpp"

namespace icdn::sim {

std::size_t
wire_size(const Payload& payload)
{
  struct Visitor
  {
    std::size_t operator()(const ndn::Interest& i) const { return ndn::encoded_size(i); }
    std::size_t operator()(const ndn::DataPtr& d) const { return ndn::encoded_size(*d); }
    std::size_t operator()(const IpRequest&) const { return IpRequest::wire_bytes; }
    std::size_t operator()(const IpResponse& r) const { return static_cast<std::size_t>(r.length); }
  };
  return std::visit(Visitor{}, payload);
}

NodeId
ip_destination(const Payload& p)
{
  if (const auto* req = std::get_if<IpRequest>(&p)) {
    return req->dst;
  }
  return std::get<IpResponse>(p).dst;
}

} // namespace icdn::sim
