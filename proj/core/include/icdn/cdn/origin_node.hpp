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

#ifndef ICDN_CDN_ORIGIN_NODE_HPP
#define ICDN_CDN_ORIGIN_NODE_HPP

#include "icdn/cdn/origin.hpp"
#include "icdn/sim/network.hpp"

namespace icdn::cdn {

/**
 * @brief CDN VNF answering IP requests from a slice catalog.
 *
 * A response is cut into pieces of at most piece_bytes that all reference
 * the same body. Errors come back as a single empty piece with the error
 * text set.
 */
class OriginNode : public sim::NodeHandler
{
public:
  struct Config
  {
    std::uint64_t piece_bytes = 64 * 1024;
  };

  OriginNode(sim::Network& net, sim::NodeId self, std::shared_ptr<CdnOrigin> catalog, Config config);
  OriginNode(sim::Network& net, sim::NodeId self, std::shared_ptr<CdnOrigin> catalog)
    : OriginNode(net, self, std::move(catalog), Config{})
  {}
  OriginNode(const OriginNode&) = delete;
  OriginNode& operator=(const OriginNode&) = delete;
  ~OriginNode() override;

  void on_message(sim::NodeId from, const sim::Message& msg) override;
  std::uint64_t memory_bytes() const override { return m_catalog->stored_bytes(); }

  /// Whole-object responses sent per (content, resolution, requester).
  std::uint64_t full_transmissions(const std::string& content_id, const std::string& resolution,
                                   sim::NodeId requester) const;
  std::uint64_t streams() const noexcept { return m_streams; }
  std::uint64_t bytes_out() const noexcept { return m_bytes_out; }

  const CdnOrigin& catalog() const noexcept { return *m_catalog; }

private:
  void respond(const sim::IpRequest& req);

  sim::Network& m_net;
  sim::NodeId m_self;
  std::shared_ptr<CdnOrigin> m_catalog;
  Config m_config;
  std::map<std::tuple<std::string, std::string, sim::NodeId>, std::uint64_t> m_full;
  std::uint64_t m_streams = 0;
  std::uint64_t m_bytes_out = 0;
};

} // namespace icdn::cdn

#endif // ICDN_CDN_ORIGIN_NODE_HPP
