#pragma once

#include <string>
#include <vector>

#include "lmpipe/field_map.hpp"
#include "lmpipe/signature.hpp"

namespace lmpipe {

struct RenderedPrompt {
    std::string text;
    FieldSpec expected_first_output;     // the field the completion must begin with
    std::vector<std::string> warnings;   // values truncated at render time
};

// Renders instruction, the "Follow the following format." block, each demo,
// and the live block, joined by blank-line "---" separators. The text ends
// with the first output field's bare prefix; generation continues from there.
// Demos render only the fields they carry; live inputs must cover every input
// field. Pure function: byte-identical output for identical arguments.
RenderedPrompt format_prompt(const Signature& signature, const std::vector<Example>& demos,
                             const FieldMap& inputs);

struct ParsedCompletion {
    FieldMap outputs;                    // every output field, missing ones empty
    std::vector<std::string> warnings;
};

// Parses raw completion text that follows a rendered prompt. Text up to the
// next recognized field prefix (or end) is the first output's value; later
// "<Prefix>" lines assign later outputs; a "---" separator or an input-field
// prefix ends parsing. Unparseable text degrades to the first output field.
ParsedCompletion parse_completion(const Signature& signature, const std::string& raw);

// "<Prefix> <value>", or prefix on its own line when the value is multiline.
std::string format_field_line(const FieldSpec& field, const std::string& value);

// The format-block line: "<Prefix> ${name}", honoring format_hint and
// parenthesized descriptions.
std::string format_block_line(const FieldSpec& field);

// The completion text an LM would have produced for these outputs: the first
// output's value followed by "<Prefix> <value>" lines for the rest.
std::string render_completion_tail(const Signature& signature, const FieldMap& outputs);

} // namespace lmpipe
