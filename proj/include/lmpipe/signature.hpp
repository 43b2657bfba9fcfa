#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lmpipe {

enum class FieldKind { input, output };

// One named field of a signature plus its prompt presentation.
struct FieldSpec {
    std::string name;                // snake_case identifier
    FieldKind kind = FieldKind::input;
    std::string prefix;              // display prefix; defaults to the expanded name
    std::string description;         // optional free text, shown in the format block
    std::string format_hint;         // optional override for the "${name}" placeholder

    static FieldSpec input(std::string name);
    static FieldSpec output(std::string name);

    FieldSpec& with_prefix(std::string value);
    FieldSpec& with_description(std::string value);
    FieldSpec& with_format_hint(std::string value);

    bool operator==(const FieldSpec&) const = default;
};

// True for tokens matching [a-z][a-z0-9_]*.
bool is_identifier(std::string_view token);

// "search_query" -> "Search Query:". Splits on underscores, title-cases each
// token, joins with spaces, appends ":".
std::string expand_field_name(std::string_view name);

// A natural-language-typed declaration of an LM transformation: ordered input
// fields, ordered output fields, and an instruction. Immutable after
// construction; safe to share across concurrent executions.
class Signature {
public:
    // Empty instruction synthesizes the default one. Throws ParseError on
    // invalid identifiers and StructureError on empty sides, duplicate names,
    // or prefix collisions.
    Signature(std::vector<FieldSpec> inputs, std::vector<FieldSpec> outputs,
              std::string instruction = "");

    // Parses "a, b -> c" shorthand. Errors name the offending token and its
    // character position.
    static Signature parse(std::string_view shorthand);

    const std::string& instruction() const { return instruction_; }
    const std::vector<FieldSpec>& inputs() const { return inputs_; }
    const std::vector<FieldSpec>& outputs() const { return outputs_; }

    // Inputs followed by outputs, in declaration order.
    std::vector<FieldSpec> fields() const;
    const FieldSpec* find(std::string_view name) const;

    // New signature with the field first among outputs; inputs and instruction
    // unchanged, this signature unmodified.
    Signature prepend_output_field(FieldSpec field) const;
    Signature with_instruction(std::string instruction) const;

    // Renders back to "a, b -> c" shorthand.
    std::string shorthand() const;

    bool operator==(const Signature&) const = default;

private:
    std::string instruction_;
    std::vector<FieldSpec> inputs_;
    std::vector<FieldSpec> outputs_;
};

// "Given the fields `a`, `b`, produce the fields `c`." in declaration order.
std::string default_instruction(const Signature& signature);

} // namespace lmpipe
