#include "lmpipe/modules.hpp"

#include <algorithm>
#include <map>

#include "lmpipe/error.hpp"
#include "lmpipe/util.hpp"

namespace lmpipe {

FieldSpec rationale_field(const Signature& base) {
    const std::string target = base.outputs().back().name;
    return FieldSpec::output("rationale")
        .with_prefix("Reasoning: Let's think step by step in order to")
        .with_format_hint("${produce the " + target + "}. We ...");
}

ChainOfThought::ChainOfThought(Signature signature, GenerationConfig config)
    : base_(signature) {
    Signature inner = signature.prepend_output_field(rationale_field(signature));
    predict_ = std::make_shared<Predict>(std::move(inner), std::move(config));
    register_module("predict", predict_);
}

Prediction ChainOfThought::forward(ExecutionContext& context, const FieldMap& inputs) {
    return predict_->forward(context, inputs);
}

std::shared_ptr<Module> ChainOfThought::fresh_clone() const {
    return std::make_shared<ChainOfThought>(base_, predict_->state().config);
}

namespace {

std::string attempt_field_name(int index) {
    return "attempt_" + std::to_string(index + 1);
}

Signature widen_for_attempts(const Signature& base, int attempts) {
    std::vector<FieldSpec> inputs = base.inputs();
    for (int i = 0; i < attempts; ++i) {
        inputs.push_back(FieldSpec::input(attempt_field_name(i))
                             .with_prefix("Student Attempt #" + std::to_string(i + 1) + ":"));
    }
    std::vector<FieldSpec> outputs = base.outputs();
    Signature widened(std::move(inputs), std::move(outputs));
    return widened.prepend_output_field(rationale_field(base));
}

} // namespace

MultiChainComparison::MultiChainComparison(Signature signature, int attempts,
                                           GenerationConfig config)
    : base_(signature), attempts_(attempts) {
    if (attempts < 1) throw ConfigError("MultiChainComparison requires at least one attempt");
    const std::string answer_name = base_.outputs().back().name;
    formatter_ = [answer_name](const FieldMap& attempt) {
        const std::string rationale = attempt.get_or("rationale", "");
        const std::string answer = attempt.get_or(answer_name, "");
        if (rationale.empty()) return answer;
        return rationale + " \xE2\x86\x92 " + answer;  // "rationale → answer"
    };
    predict_ = std::make_shared<Predict>(widen_for_attempts(base_, attempts_), std::move(config));
    register_module("predict", predict_);
}

Prediction MultiChainComparison::forward_with_attempts(ExecutionContext& context,
                                                       const FieldMap& inputs,
                                                       const std::vector<FieldMap>& attempts) {
    if (static_cast<int>(attempts.size()) != attempts_) {
        throw Error("expected " + std::to_string(attempts_) + " attempts, got " +
                    std::to_string(attempts.size()));
    }
    FieldMap widened = inputs;
    for (int i = 0; i < attempts_; ++i) {
        widened.set(attempt_field_name(i), formatter_(attempts[static_cast<std::size_t>(i)]));
    }
    return predict_->forward(context, widened);
}

Prediction MultiChainComparison::forward(ExecutionContext& context, const FieldMap& inputs) {
    return predict_->forward(context, inputs);
}

std::shared_ptr<Module> MultiChainComparison::fresh_clone() const {
    auto copy =
        std::make_shared<MultiChainComparison>(base_, attempts_, predict_->state().config);
    copy->formatter_ = formatter_;
    return copy;
}

void MultiChainComparison::set_attempt_formatter(AttemptFormatter formatter) {
    formatter_ = std::move(formatter);
}

Retrieve::Retrieve(int k, std::shared_ptr<Retriever> retriever)
    : k_(k), retriever_(std::move(retriever)) {
    if (k < 1) throw ConfigError("Retrieve requires k >= 1");
}

RetrievedPassages Retrieve::retrieve(ExecutionContext& context, const std::string& query) const {
    const auto& retriever = retriever_ ? retriever_ : context.default_retriever();
    if (!retriever) throw Error("no retriever configured");
    return retriever->search(query, k_);
}

Prediction Retrieve::forward(ExecutionContext& context, const FieldMap& inputs) {
    const auto result = retrieve(context, inputs.get("query"));
    return Prediction::single(FieldMap{{"passages", format_passages(result.passages)}});
}

std::shared_ptr<Module> Retrieve::fresh_clone() const {
    return std::make_shared<Retrieve>(k_, retriever_);
}

namespace {

Signature react_step_signature(const Signature& base, const std::vector<ToolSpec>& tools) {
    std::vector<FieldSpec> inputs = base.inputs();
    inputs.push_back(FieldSpec::input("scratchpad"));
    std::vector<FieldSpec> outputs;
    outputs.push_back(FieldSpec::output("thought"));
    outputs.push_back(FieldSpec::output("action"));

    Signature sig(std::move(inputs), std::move(outputs));
    std::string instruction = default_instruction(sig) + " Action may be one of:";
    for (const auto& tool : tools) {
        instruction += " " + tool.name + "[input]";
        if (!tool.description.empty()) instruction += " (" + tool.description + ")";
        instruction += ";";
    }
    instruction += " Finish[" + base.outputs().front().name + "] to return the final " +
                   base.outputs().front().name + ".";
    return sig.with_instruction(std::move(instruction));
}

// Splits "Name[payload]" into its parts; returns false when the shape is off.
bool parse_action(const std::string& action, std::string& name, std::string& payload) {
    const std::size_t open = action.find('[');
    if (open == std::string::npos) return false;
    const std::size_t close = action.rfind(']');
    if (close == std::string::npos || close < open) return false;
    name = strings::trim(action.substr(0, open));
    payload = action.substr(open + 1, close - open - 1);
    return !name.empty();
}

} // namespace

ReAct::ReAct(Signature signature, std::vector<ToolSpec> tools, int max_iters,
             GenerationConfig config)
    : base_(signature), tools_(std::move(tools)), max_iters_(max_iters) {
    if (max_iters_ < 1) throw ConfigError("ReAct requires max_iters >= 1");
    if (tools_.empty()) throw ConfigError("ReAct requires at least one tool");
    std::map<std::string, int> seen;
    for (const auto& tool : tools_) {
        if (++seen[tool.name] > 1) {
            throw ConfigError("duplicate tool name '" + tool.name + "' in ReAct");
        }
    }
    predict_ =
        std::make_shared<Predict>(react_step_signature(base_, tools_), std::move(config));
    register_module("predict", predict_);
    for (const auto& tool : tools_) {
        if (tool.module) register_module("tools." + strings::to_lower(tool.name), tool.module);
    }
}

Prediction ReAct::forward(ExecutionContext& context, const FieldMap& inputs) {
    std::string scratchpad;
    std::string last_observation;
    const std::string answer_field = base_.outputs().front().name;

    for (int step = 1; step <= max_iters_; ++step) {
        FieldMap step_inputs = inputs;
        step_inputs.set("scratchpad", scratchpad);
        const Prediction step_prediction = predict_->forward(context, step_inputs);

        const std::string thought = step_prediction.outputs.get_or("thought", "");
        const std::string action = step_prediction.outputs.get_or("action", "");
        if (!scratchpad.empty()) scratchpad += "\n";
        scratchpad += "Thought " + std::to_string(step) + ": " + thought;
        scratchpad += "\nAction " + std::to_string(step) + ": " + action;

        std::string tool_name;
        std::string payload;
        std::string observation;
        if (parse_action(action, tool_name, payload)) {
            if (tool_name == "Finish") {
                FieldMap outputs;
                for (const auto& field : base_.outputs()) {
                    outputs.set(field.name, field.name == answer_field ? payload : "");
                }
                return Prediction::single(std::move(outputs));
            }
            const auto tool = std::find_if(tools_.begin(), tools_.end(), [&](const ToolSpec& t) {
                return t.name == tool_name;
            });
            if (tool == tools_.end()) {
                observation = "Unknown action '" + tool_name + "'. Known actions: ";
                for (std::size_t i = 0; i < tools_.size(); ++i) {
                    if (i > 0) observation += ", ";
                    observation += tools_[i].name + "[input]";
                }
                observation += ", Finish[" + answer_field + "].";
            } else {
                observation = tool->invoke(context, payload);
            }
        } else {
            observation = "Could not parse action '" + action +
                          "'. Use ToolName[input] or Finish[" + answer_field + "].";
        }
        last_observation = observation;
        scratchpad += "\nObservation " + std::to_string(step) + ": " + observation;
    }

    FieldMap outputs;
    for (const auto& field : base_.outputs()) {
        outputs.set(field.name, field.name == answer_field ? last_observation : "");
    }
    Prediction fallback = Prediction::single(std::move(outputs));
    fallback.warnings.push_back("truncated: reached max_iters without Finish");
    return fallback;
}

std::shared_ptr<Module> ReAct::fresh_clone() const {
    return std::make_shared<ReAct>(base_, tools_, max_iters_, predict_->state().config);
}

ToolSpec ReAct::search_tool(std::shared_ptr<Retrieve> retrieve) {
    ToolSpec tool;
    tool.name = "Search";
    tool.description = "retrieves passages relevant to the input query";
    tool.module = retrieve;
    tool.invoke = [retrieve](ExecutionContext& context, const std::string& query) {
        const auto result = retrieve->retrieve(context, query);
        if (result.passages.empty()) return std::string("No results found.");
        return strings::join(result.passages, " | ");
    };
    return tool;
}

std::string format_passages(const std::vector<std::string>& passages) {
    std::vector<std::string> lines;
    lines.reserve(passages.size());
    for (std::size_t i = 0; i < passages.size(); ++i) {
        lines.push_back("[" + std::to_string(i + 1) + "] " + passages[i]);
    }
    return strings::join(lines, "\n");
}

std::vector<std::string> split_passages(const std::string& context) {
    std::vector<std::string> passages;
    for (const auto& line : strings::split_lines(context)) {
        if (line.empty()) continue;
        std::size_t pos = 0;
        if (line[pos] == '[') {
            std::size_t digits = pos + 1;
            while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) {
                ++digits;
            }
            if (digits > pos + 1 && digits < line.size() && line[digits] == ']') {
                std::string rest = line.substr(digits + 1);
                if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
                passages.push_back(std::move(rest));
                continue;
            }
        }
        if (passages.empty()) {
            passages.push_back(line);
        } else {
            passages.back() += "\n" + line;
        }
    }
    return passages;
}

std::string normalize_for_vote(const std::string& value) {
    std::string out = strings::to_lower(strings::trim(value));
    while (!out.empty() && (out.back() == '.' || out.back() == ',' || out.back() == '!' ||
                            out.back() == '?' || out.back() == ';' || out.back() == ':')) {
        out.pop_back();
    }
    return strings::trim(out);
}

Prediction majority(const std::vector<Prediction>& predictions, const std::string& field) {
    if (predictions.empty()) throw Error("majority over an empty prediction list");

    std::vector<std::string> normalized;
    normalized.reserve(predictions.size());
    for (const auto& prediction : predictions) {
        if (!prediction.has(field)) {
            throw Error("prediction lacks field '" + field + "' for majority voting");
        }
        normalized.push_back(normalize_for_vote(prediction.get(field)));
    }

    std::size_t best = 0;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const auto count = static_cast<std::size_t>(
            std::count(normalized.begin(), normalized.end(), normalized[i]));
        // Ties break toward the earliest first occurrence, which the forward
        // scan yields for free.
        if (count > best_count) {
            best_count = count;
            best = i;
        }
    }
    return predictions[best];
}

} // namespace lmpipe
