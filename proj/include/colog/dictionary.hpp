#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "colog/types.hpp"

namespace colog {

/// Bijective string <-> Value map with dense ids assigned in first-seen
/// order, stable for the lifetime of a run.
class Dictionary {
public:
    Value encode(std::string_view s) {
        std::string key(s);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        const Value id = static_cast<Value>(strings_.size());
        strings_.push_back(key);
        ids_.emplace(std::move(key), id);
        return id;
    }

    std::optional<Value> lookup(std::string_view s) const {
        auto it = ids_.find(std::string(s));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& decode(Value v) const {
        if (v >= strings_.size()) throw std::out_of_range("dictionary: value has no string");
        return strings_[v];
    }

    std::size_t size() const { return strings_.size(); }
    bool empty() const { return strings_.empty(); }

private:
    std::vector<std::string> strings_;
    absl::flat_hash_map<std::string, Value> ids_;
};

} // namespace colog
