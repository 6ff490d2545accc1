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

#ifndef ICDN_FW_NAME_TRIE_HPP
#define ICDN_FW_NAME_TRIE_HPP

#include "icdn/ndn/name.hpp"

#include <map>
#include <memory>
#include <optional>

namespace icdn::fw {

/**
 * @brief Component-wise trie keyed by Name.
 *
 * Lookup cost is proportional to the number of components of the query,
 * independent of how many prefixes are stored.
 */
template<typename T>
class NameTrie
{
public:
  /// Stores @p value at @p key, replacing any previous value. Returns true if the key was new.
  bool insert(const ndn::Name& key, T value)
  {
    Node* node = &m_root;
    for (const auto& c : key.components()) {
      auto& child = node->children[c];
      if (!child) {
        child = std::make_unique<Node>();
      }
      node = child.get();
    }
    bool fresh = !node->value.has_value();
    node->value = std::move(value);
    m_size += fresh ? 1 : 0;
    return fresh;
  }

  bool erase(const ndn::Name& key)
  {
    return erase_at(m_root, key, 0);
  }

  T* find(const ndn::Name& key)
  {
    Node* node = walk(key);
    return node != nullptr && node->value ? &*node->value : nullptr;
  }

  const T* find(const ndn::Name& key) const
  {
    return const_cast<NameTrie*>(this)->find(key);
  }

  /// Value stored at the longest prefix of @p name, with that prefix's length.
  std::optional<std::pair<std::size_t, const T*>> longest_prefix(const ndn::Name& name) const
  {
    const Node* node = &m_root;
    std::optional<std::pair<std::size_t, const T*>> best;
    if (node->value) {
      best.emplace(0, &*node->value);
    }
    for (std::size_t i = 0; i < name.size(); ++i) {
      auto it = node->children.find(name[i]);
      if (it == node->children.end()) {
        break;
      }
      node = it->second.get();
      if (node->value) {
        best.emplace(i + 1, &*node->value);
      }
    }
    return best;
  }

  /// Visits every stored value in name order.
  template<typename Fn>
  void for_each(Fn&& fn) const
  {
    ndn::Name prefix;
    visit(m_root, prefix, fn);
  }

  std::size_t size() const noexcept { return m_size; }

private:
  struct Node
  {
    std::optional<T> value;
    std::map<ndn::Name::Component, std::unique_ptr<Node>> children;
  };

  Node* walk(const ndn::Name& key)
  {
    Node* node = &m_root;
    for (const auto& c : key.components()) {
      auto it = node->children.find(c);
      if (it == node->children.end()) {
        return nullptr;
      }
      node = it->second.get();
    }
    return node;
  }

  bool erase_at(Node& node, const ndn::Name& key, std::size_t depth)
  {
    if (depth == key.size()) {
      if (!node.value) {
        return false;
      }
      node.value.reset();
      --m_size;
      return true;
    }
    auto it = node.children.find(key[depth]);
    if (it == node.children.end()) {
      return false;
    }
    bool removed = erase_at(*it->second, key, depth + 1);
    if (removed && !it->second->value && it->second->children.empty()) {
      node.children.erase(it);
    }
    return removed;
  }

  template<typename Fn>
  static void visit(const Node& node, ndn::Name& prefix, Fn& fn)
  {
    if (node.value) {
      fn(prefix, *node.value);
    }
    for (const auto& [component, child] : node.children) {
      ndn::Name next = prefix.appended(component);
      visit(*child, next, fn);
    }
  }

  Node m_root;
  std::size_t m_size = 0;
};

} // namespace icdn::fw

#endif // ICDN_FW_NAME_TRIE_HPP
