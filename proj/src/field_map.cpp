#include "lmpipe/field_map.hpp"

#include <algorithm>

#include "lmpipe/error.hpp"

namespace lmpipe {

FieldMap::FieldMap(std::initializer_list<Item> items) {
    for (const auto& item : items) set(item.first, item.second);
}

bool FieldMap::has(std::string_view name) const {
    return std::any_of(items_.begin(), items_.end(),
                       [&](const Item& item) { return item.first == name; });
}

const std::string& FieldMap::get(std::string_view name) const {
    for (const auto& item : items_) {
        if (item.first == name) return item.second;
    }
    throw Error("field '" + std::string(name) + "' not present");
}

std::string FieldMap::get_or(std::string_view name, std::string fallback) const {
    for (const auto& item : items_) {
        if (item.first == name) return item.second;
    }
    return fallback;
}

void FieldMap::set(std::string name, std::string value) {
    for (auto& item : items_) {
        if (item.first == name) {
            item.second = std::move(value);
            return;
        }
    }
    items_.emplace_back(std::move(name), std::move(value));
}

std::vector<std::string> FieldMap::keys() const {
    std::vector<std::string> out;
    out.reserve(items_.size());
    for (const auto& item : items_) out.push_back(item.first);
    return out;
}

Example::Example(FieldMap values) : values_(std::move(values)) {}

Example::Example(std::initializer_list<FieldMap::Item> items) : values_(items) {}

Example Example::with_inputs(std::vector<std::string> keys) const {
    for (const auto& key : keys) {
        if (!values_.has(key)) {
            throw Error("input key '" + key + "' not present in example");
        }
    }
    Example copy = *this;
    copy.input_keys_ = std::move(keys);
    return copy;
}

FieldMap Example::inputs() const {
    FieldMap out;
    for (const auto& item : values_.items()) {
        if (std::find(input_keys_.begin(), input_keys_.end(), item.first) != input_keys_.end()) {
            out.set(item.first, item.second);
        }
    }
    return out;
}

FieldMap Example::labels() const {
    FieldMap out;
    for (const auto& item : values_.items()) {
        if (std::find(input_keys_.begin(), input_keys_.end(), item.first) == input_keys_.end()) {
            out.set(item.first, item.second);
        }
    }
    return out;
}

std::string Example::get_or(std::string_view name, std::string fallback) const {
    return values_.get_or(name, std::move(fallback));
}

} // namespace lmpipe
