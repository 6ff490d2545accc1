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

#include "icdn/cdn/origin_node.hpp"

#include <algorithm>

namespace icdn::cdn {

OriginNode::OriginNode(sim::Network& net, sim::NodeId self, std::shared_ptr<CdnOrigin> catalog, Config config)
  : m_net(net)
  , m_self(self)
  , m_catalog(std::move(catalog))
  , m_config(config)
{
  if (m_config.piece_bytes == 0) {
    throw std::invalid_argument("response piece size must be positive");
  }
  m_net.attach(m_self, this);
}

OriginNode::~OriginNode()
{
  if (m_net.handler(m_self) == this) {
    m_net.attach(m_self, nullptr);
  }
}

void
OriginNode::on_message(sim::NodeId /*from*/, const sim::Message& msg)
{
  if (const auto* req = std::get_if<sim::IpRequest>(&msg.payload)) {
    respond(*req);
  }
}

void
OriginNode::respond(const sim::IpRequest& req)
{
  sim::IpResponse head;
  head.flow = req.flow;
  head.src = m_self;
  head.dst = req.src;

  std::shared_ptr<const ndn::Bytes> body;
  try {
    body = m_catalog->read(req.content_id, req.resolution, req.range);
  }
  catch (const std::out_of_range& e) {
    head.last = true;
    head.error = e.what();
    m_net.send_ip(m_self, sim::Message{std::move(head), {}});
    return;
  }

  ++m_streams;
  ++m_catalog->counters().streams;
  if (!req.range) {
    ++m_full[{req.content_id, req.resolution, req.src}];
  }

  const std::uint64_t total = body->size();
  head.total = total;
  head.body = body;
  std::uint64_t offset = 0;
  do {
    sim::IpResponse piece = head;
    piece.offset = offset;
    piece.length = std::min(m_config.piece_bytes, total - offset);
    offset += piece.length;
    piece.last = offset == total;
    m_bytes_out += piece.length;
    m_catalog->counters().bytes_out += piece.length;
    m_net.send_ip(m_self, sim::Message{std::move(piece), {}});
  } while (offset < total);
}

std::uint64_t
OriginNode::full_transmissions(const std::string& content_id, const std::string& resolution,
                               sim::NodeId requester) const
{
  auto it = m_full.find({content_id, resolution, requester});
  return it == m_full.end() ? 0 : it->second;
}

} // namespace icdn::cdn
