#include "lmpipe/signature.hpp"

#include <cctype>
#include <set>

#include "lmpipe/error.hpp"
#include "lmpipe/util.hpp"

namespace lmpipe {

FieldSpec FieldSpec::input(std::string name) {
    FieldSpec spec;
    spec.prefix = expand_field_name(name);
    spec.name = std::move(name);
    spec.kind = FieldKind::input;
    return spec;
}

FieldSpec FieldSpec::output(std::string name) {
    FieldSpec spec = input(std::move(name));
    spec.kind = FieldKind::output;
    return spec;
}

FieldSpec& FieldSpec::with_prefix(std::string value) {
    prefix = std::move(value);
    return *this;
}

FieldSpec& FieldSpec::with_description(std::string value) {
    description = std::move(value);
    return *this;
}

FieldSpec& FieldSpec::with_format_hint(std::string value) {
    format_hint = std::move(value);
    return *this;
}

bool is_identifier(std::string_view token) {
    if (token.empty()) return false;
    if (!(token[0] >= 'a' && token[0] <= 'z')) return false;
    for (char c : token) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

std::string expand_field_name(std::string_view name) {
    std::string out;
    bool start_of_token = true;
    for (char c : name) {
        if (c == '_') {
            if (!out.empty() && out.back() != ' ') out += ' ';
            start_of_token = true;
            continue;
        }
        out += start_of_token ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
        start_of_token = false;
    }
    out += ':';
    return out;
}

namespace {

void validate_field(const FieldSpec& field) {
    if (!is_identifier(field.name)) {
        throw ParseError("invalid field name '" + field.name + "'");
    }
    if (field.prefix.empty()) {
        throw StructureError("field '" + field.name + "' has an empty prefix");
    }
}

} // namespace

Signature::Signature(std::vector<FieldSpec> inputs, std::vector<FieldSpec> outputs,
                     std::string instruction)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    if (inputs_.empty()) throw StructureError("signature requires at least one input field");
    if (outputs_.empty()) throw StructureError("signature requires at least one output field");

    for (auto& field : inputs_) field.kind = FieldKind::input;
    for (auto& field : outputs_) field.kind = FieldKind::output;

    std::set<std::string> names;
    std::set<std::string> prefixes;
    for (const FieldSpec& field : fields()) {
        validate_field(field);
        if (!names.insert(field.name).second) {
            throw StructureError("duplicate field name '" + field.name + "'");
        }
        if (!prefixes.insert(field.prefix).second) {
            throw StructureError("prefix collision on '" + field.prefix + "' (field '" +
                                 field.name + "')");
        }
    }

    instruction_ = instruction.empty() ? default_instruction(*this) : std::move(instruction);
}

Signature Signature::parse(std::string_view shorthand) {
    const std::string text(shorthand);
    const std::size_t arrow = text.find("->");
    if (arrow == std::string::npos) {
        throw ParseError("signature '" + text + "' is missing the '->' separator");
    }
    if (text.find("->", arrow + 2) != std::string::npos) {
        throw ParseError("signature '" + text + "' contains more than one '->' separator");
    }

    auto parse_side = [&](std::string_view side, std::size_t offset,
                          const char* label) -> std::vector<std::string> {
        std::vector<std::string> names;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = side.find(',', start);
            const std::string_view raw =
                side.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                   : comma - start);
            const std::string token = strings::trim(raw);
            if (token.empty()) {
                throw ParseError(std::string("empty ") + label + " list in signature '" + text +
                                 "' at position " + std::to_string(offset + start));
            }
            if (!is_identifier(token)) {
                const std::size_t skip = raw.find_first_not_of(" \t");
                const std::size_t token_pos =
                    offset + start + (skip == std::string_view::npos ? 0 : skip);
                throw ParseError("invalid identifier '" + token + "' at position " +
                                 std::to_string(token_pos) + " in signature '" + text + "'");
            }
            names.push_back(token);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return names;
    };

    const std::string_view view(text);
    const auto input_names = parse_side(view.substr(0, arrow), 0, "input");
    const auto output_names = parse_side(view.substr(arrow + 2), arrow + 2, "output");

    std::set<std::string> seen;
    for (const auto& name : input_names) seen.insert(name);
    for (const auto& name : output_names) {
        if (!seen.insert(name).second) {
            throw ParseError("duplicate name '" + name + "' in signature '" + text + "'");
        }
    }

    std::vector<FieldSpec> inputs;
    std::vector<FieldSpec> outputs;
    for (const auto& name : input_names) inputs.push_back(FieldSpec::input(name));
    for (const auto& name : output_names) outputs.push_back(FieldSpec::output(name));
    return Signature(std::move(inputs), std::move(outputs));
}

std::vector<FieldSpec> Signature::fields() const {
    std::vector<FieldSpec> out = inputs_;
    out.insert(out.end(), outputs_.begin(), outputs_.end());
    return out;
}

const FieldSpec* Signature::find(std::string_view name) const {
    for (const auto& field : inputs_) {
        if (field.name == name) return &field;
    }
    for (const auto& field : outputs_) {
        if (field.name == name) return &field;
    }
    return nullptr;
}

Signature Signature::prepend_output_field(FieldSpec field) const {
    if (find(field.name) != nullptr) {
        throw StructureError("field '" + field.name + "' already present in signature");
    }
    field.kind = FieldKind::output;
    std::vector<FieldSpec> outputs;
    outputs.reserve(outputs_.size() + 1);
    outputs.push_back(std::move(field));
    outputs.insert(outputs.end(), outputs_.begin(), outputs_.end());
    return Signature(inputs_, std::move(outputs), instruction_);
}

Signature Signature::with_instruction(std::string instruction) const {
    return Signature(inputs_, outputs_, std::move(instruction));
}

std::string Signature::shorthand() const {
    std::vector<std::string> in_names;
    std::vector<std::string> out_names;
    for (const auto& field : inputs_) in_names.push_back(field.name);
    for (const auto& field : outputs_) out_names.push_back(field.name);
    return strings::join(in_names, ", ") + " -> " + strings::join(out_names, ", ");
}

std::string default_instruction(const Signature& signature) {
    std::vector<std::string> in_names;
    std::vector<std::string> out_names;
    for (const auto& field : signature.inputs()) in_names.push_back("`" + field.name + "`");
    for (const auto& field : signature.outputs()) out_names.push_back("`" + field.name + "`");
    return "Given the fields " + strings::join(in_names, ", ") + ", produce the fields " +
           strings::join(out_names, ", ") + ".";
}

} // namespace lmpipe
