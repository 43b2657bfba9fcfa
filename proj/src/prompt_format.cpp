#include "lmpipe/prompt_format.hpp"

#include <algorithm>

#include "lmpipe/error.hpp"
#include "lmpipe/util.hpp"

namespace lmpipe {

namespace {

constexpr const char* kSeparator = "\n\n---\n\n";
constexpr const char* kFormatHeader = "Follow the following format.";

// A value may not contain a demo separator or start a line with one of the
// signature's prefixes; such lines would corrupt parsing, so the value is
// truncated there.
std::string sanitize_value(const Signature& signature, const FieldSpec& field,
                           const std::string& value, std::vector<std::string>& warnings) {
    const auto lines = strings::split_lines(value);
    std::vector<std::string> kept;
    for (const auto& line : lines) {
        bool clashes = strings::trim(line) == "---";
        if (!clashes) {
            for (const auto& other : signature.fields()) {
                if (line.starts_with(other.prefix)) {
                    clashes = true;
                    break;
                }
            }
        }
        if (clashes) {
            warnings.push_back("value of '" + field.name +
                               "' truncated at a line clashing with the prompt layout");
            break;
        }
        kept.push_back(line);
    }
    // Trailing whitespace-only lines would blur block boundaries.
    while (!kept.empty() && strings::is_blank(kept.back())) kept.pop_back();
    return strings::join(kept, "\n");
}

} // namespace

std::string format_field_line(const FieldSpec& field, const std::string& value) {
    if (value.empty()) return field.prefix;
    if (value.find('\n') != std::string::npos) return field.prefix + "\n" + value;
    return field.prefix + " " + value;
}

std::string format_block_line(const FieldSpec& field) {
    if (!field.format_hint.empty()) return field.prefix + " " + field.format_hint;
    std::string placeholder = "${" + field.name + "}";
    if (!field.description.empty()) placeholder += " (" + field.description + ")";
    return field.prefix + " " + placeholder;
}

RenderedPrompt format_prompt(const Signature& signature, const std::vector<Example>& demos,
                             const FieldMap& inputs) {
    RenderedPrompt rendered;
    rendered.expected_first_output = signature.outputs().front();

    std::vector<std::string> blocks;
    blocks.push_back(signature.instruction());

    std::vector<std::string> format_lines;
    format_lines.push_back(kFormatHeader);
    format_lines.push_back("");
    for (const auto& field : signature.fields()) {
        format_lines.push_back(format_block_line(field));
    }
    blocks.push_back(strings::join(format_lines, "\n"));

    for (const auto& demo : demos) {
        std::vector<std::string> lines;
        for (const auto& field : signature.fields()) {
            if (!demo.has(field.name)) continue;  // raw labeled demos render only fields present
            const std::string value =
                sanitize_value(signature, field, demo.get(field.name), rendered.warnings);
            lines.push_back(format_field_line(field, value));
        }
        blocks.push_back(strings::join(lines, "\n"));
    }

    std::vector<std::string> live_lines;
    for (const auto& field : signature.inputs()) {
        if (!inputs.has(field.name)) {
            throw Error("missing input field '" + field.name + "'");
        }
        const std::string value =
            sanitize_value(signature, field, inputs.get(field.name), rendered.warnings);
        live_lines.push_back(format_field_line(field, value));
    }
    live_lines.push_back(signature.outputs().front().prefix);
    blocks.push_back(strings::join(live_lines, "\n"));

    rendered.text = strings::join(blocks, kSeparator);
    return rendered;
}

ParsedCompletion parse_completion(const Signature& signature, const std::string& raw) {
    ParsedCompletion parsed;
    const auto& outputs = signature.outputs();

    std::vector<std::string> values(outputs.size());
    std::vector<bool> assigned(outputs.size(), false);
    std::size_t current = 0;
    assigned[0] = true;

    // Longest prefix wins so that one prefix containing another stays
    // unambiguous.
    auto match_output = [&](const std::string& line) -> int {
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            if (line.starts_with(outputs[i].prefix) && outputs[i].prefix.size() > best_len) {
                best = static_cast<int>(i);
                best_len = outputs[i].prefix.size();
            }
        }
        return best;
    };
    auto matches_input = [&](const std::string& line) {
        return std::any_of(signature.inputs().begin(), signature.inputs().end(),
                           [&](const FieldSpec& f) { return line.starts_with(f.prefix); });
    };

    auto append_line = [](std::string& value, const std::string& line) {
        if (!value.empty()) value += "\n";
        value += line;
    };

    bool stopped_at_input = false;
    for (const auto& line : strings::split_lines(raw)) {
        if (strings::trim(line) == "---") break;

        const int matched = match_output(line);
        if (matched >= 0 && !assigned[static_cast<std::size_t>(matched)]) {
            current = static_cast<std::size_t>(matched);
            assigned[current] = true;
            std::string remainder = line.substr(outputs[current].prefix.size());
            if (!remainder.empty() && remainder.front() == ' ') remainder.erase(0, 1);
            values[current] = remainder;
            continue;
        }
        if (matched < 0 && matches_input(line)) {
            stopped_at_input = true;
            break;
        }
        append_line(values[current], line);
    }

    for (std::size_t i = 0; i < outputs.size(); ++i) {
        parsed.outputs.set(outputs[i].name, strings::trim(values[i]));
    }

    if (stopped_at_input) {
        parsed.warnings.push_back("completion continued into an input-field line; ignored the rest");
    }
    const std::size_t assigned_count =
        static_cast<std::size_t>(std::count(assigned.begin(), assigned.end(), true));
    if (outputs.size() > 1 && assigned_count == 1) {
        parsed.warnings.push_back("no field prefixes found; entire completion assigned to '" +
                                  outputs.front().name + "'");
    }
    return parsed;
}

std::string render_completion_tail(const Signature& signature, const FieldMap& outputs) {
    const auto& fields = signature.outputs();
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string value = outputs.get_or(fields[i].name, "");
        if (i == 0) {
            lines.push_back(value);
        } else {
            lines.push_back(format_field_line(fields[i], value));
        }
    }
    return strings::join(lines, "\n");
}

} // namespace lmpipe
