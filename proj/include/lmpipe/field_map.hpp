#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lmpipe {

// Ordered field-name -> value map. Insertion order is preserved and is the
// prompt layout order.
class FieldMap {
public:
    using Item = std::pair<std::string, std::string>;

    FieldMap() = default;
    FieldMap(std::initializer_list<Item> items);

    bool has(std::string_view name) const;
    // Throws Error when the field is absent.
    const std::string& get(std::string_view name) const;
    std::string get_or(std::string_view name, std::string fallback) const;
    // Inserts at the end, or overwrites in place when the name exists.
    void set(std::string name, std::string value);

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const std::vector<Item>& items() const { return items_; }
    std::vector<std::string> keys() const;

    bool operator==(const FieldMap&) const = default;

private:
    std::vector<Item> items_;
};

// A string-keyed record with a designated input-key subset. The unit of
// training data, demonstrations, and parsed predictions.
class Example {
public:
    Example() = default;
    explicit Example(FieldMap values);
    Example(std::initializer_list<FieldMap::Item> items);

    // Returns a copy with the given keys marked as inputs. Every key must be
    // present in the values.
    Example with_inputs(std::vector<std::string> keys) const;

    // View of the input fields only, in declaration order.
    FieldMap inputs() const;
    // View of the non-input fields (labels).
    FieldMap labels() const;

    const FieldMap& values() const { return values_; }
    const std::vector<std::string>& input_keys() const { return input_keys_; }

    bool has(std::string_view name) const { return values_.has(name); }
    const std::string& get(std::string_view name) const { return values_.get(name); }
    std::string get_or(std::string_view name, std::string fallback) const;
    void set(std::string name, std::string value) { values_.set(std::move(name), std::move(value)); }

    // True when this example was produced by bootstrapping rather than labels.
    bool automated() const { return automated_; }
    void set_automated(bool automated) { automated_ = automated; }

    bool operator==(const Example&) const = default;

private:
    FieldMap values_;
    std::vector<std::string> input_keys_;
    bool automated_ = false;
};

} // namespace lmpipe
