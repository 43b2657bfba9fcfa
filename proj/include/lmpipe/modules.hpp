#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lmpipe/module.hpp"
#include "lmpipe/retriever.hpp"

namespace lmpipe {

// The rationale output field prepended by ChainOfThought, targeting the base
// signature's final output.
FieldSpec rationale_field(const Signature& base);

// Wraps a Predict whose signature is the base signature with a rationale field
// prepended to the outputs; forward delegates unchanged.
class ChainOfThought final : public Module {
public:
    explicit ChainOfThought(Signature signature, GenerationConfig config = {});

    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

    const Signature& inner_signature() const { return predict_->signature(); }
    Predict& predict() { return *predict_; }

private:
    Signature base_;
    std::shared_ptr<Predict> predict_;
};

// Reconciles M prior attempts into one answer with a single Predict call over
// a widened signature (base inputs + one field per attempt).
class MultiChainComparison final : public Module {
public:
    // Formats one attempt's fields into the text shown to the reconciler.
    using AttemptFormatter = std::function<std::string(const FieldMap& attempt)>;

    MultiChainComparison(Signature signature, int attempts, GenerationConfig config = {});

    Prediction forward_with_attempts(ExecutionContext& context, const FieldMap& inputs,
                                     const std::vector<FieldMap>& attempts);
    // Pass-through for callers that pre-filled the attempt fields.
    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

    void set_attempt_formatter(AttemptFormatter formatter);
    int attempts() const { return attempts_; }
    const Signature& inner_signature() const { return predict_->signature(); }

private:
    Signature base_;
    int attempts_;
    AttemptFormatter formatter_;
    std::shared_ptr<Predict> predict_;
};

// A tool callable from a ReAct loop as "Name[input]".
struct ToolSpec {
    std::string name;
    std::string description;
    std::function<std::string(ExecutionContext&, const std::string&)> invoke;
    std::shared_ptr<Module> module;   // optional backing module, registered for walks
};

// Retrieval as a tool module. Holds no learned state.
class Retrieve final : public Module {
public:
    explicit Retrieve(int k, std::shared_ptr<Retriever> retriever = nullptr);

    RetrievedPassages retrieve(ExecutionContext& context, const std::string& query) const;
    // Generic surface: {"query"} -> {"passages"} with enumerated passages.
    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

    int k() const { return k_; }

private:
    int k_;
    std::shared_ptr<Retriever> retriever_;   // null -> use the context default
};

// Agent loop: up to max_iters Predict steps over (inputs + scratchpad ->
// thought, action). "Finish[value]" terminates; "Tool[input]" appends the
// tool's observation; unknown actions feed an error observation back in.
class ReAct final : public Module {
public:
    ReAct(Signature signature, std::vector<ToolSpec> tools, int max_iters = 5,
          GenerationConfig config = {});

    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

    static ToolSpec search_tool(std::shared_ptr<Retrieve> retrieve);

    const Signature& step_signature() const { return predict_->signature(); }
    int max_iters() const { return max_iters_; }

private:
    Signature base_;
    std::vector<ToolSpec> tools_;
    int max_iters_;
    std::shared_ptr<Predict> predict_;
};

// Renders passages as numbered "[i] text" lines for a context field value.
std::string format_passages(const std::vector<std::string>& passages);
// Splits a context value rendered by format_passages back into passages.
std::vector<std::string> split_passages(const std::string& context);

// Normalization used for voting: trim, casefold, strip trailing punctuation.
std::string normalize_for_vote(const std::string& value);

// Returns the prediction whose normalized value of `field` occurs most often;
// ties break toward the earliest first occurrence.
Prediction majority(const std::vector<Prediction>& predictions, const std::string& field);

} // namespace lmpipe
