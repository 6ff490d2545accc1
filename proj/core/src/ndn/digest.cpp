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

#include "icdn/ndn/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace icdn::ndn {

struct DigestBuilder::Impl
{
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  ~Impl() { EVP_MD_CTX_free(ctx); }
};

DigestBuilder::DigestBuilder()
  : m_impl(std::make_unique<Impl>())
{
  if (m_impl->ctx == nullptr || EVP_DigestInit_ex(m_impl->ctx, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 initialization failed");
  }
}

DigestBuilder::~DigestBuilder() = default;

DigestBuilder&
DigestBuilder::update(std::span<const std::uint8_t> bytes)
{
  EVP_DigestUpdate(m_impl->ctx, bytes.data(), bytes.size());
  return *this;
}

DigestBuilder&
DigestBuilder::update(std::string_view text)
{
  EVP_DigestUpdate(m_impl->ctx, text.data(), text.size());
  return *this;
}

Digest
DigestBuilder::finish()
{
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(m_impl->ctx, out.data(), &len);
  EVP_DigestInit_ex(m_impl->ctx, EVP_sha256(), nullptr);
  return out;
}

Digest
compute_digest(std::span<const std::uint8_t> payload)
{
  Digest out{};
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

std::string
to_hex(const Digest& d)
{
  static constexpr char hex[] = "0123456789abcdef";
  std::string s;
  s.reserve(d.size() * 2);
  for (auto b : d) {
    s.push_back(hex[b >> 4]);
    s.push_back(hex[b & 0x0F]);
  }
  return s;
}

} // namespace icdn::ndn
